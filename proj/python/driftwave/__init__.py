"""Latest-value estimation of drifting signals by wavelet soft thresholding."""

from ._driftwave import (
    DriftwaveError,
    bench_csv,
    compute_bounds,
    default_lambda,
    denoise,
    dwt,
    estimate_latest,
    idwt,
    kappa,
    mad_sigma,
    select,
    soft_threshold,
    transform_matrix,
    tvscale_csv,
)

__all__ = [
    "DriftwaveError",
    "bench_csv",
    "compute_bounds",
    "default_lambda",
    "denoise",
    "dwt",
    "estimate_latest",
    "idwt",
    "kappa",
    "mad_sigma",
    "select",
    "soft_threshold",
    "transform_matrix",
    "tvscale_csv",
]
