#include <map>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "driftwave/bench.hpp"
#include "driftwave/config_json.hpp"
#include "driftwave/denoiser.hpp"
#include "driftwave/error.hpp"
#include "driftwave/selection.hpp"
#include "driftwave/tv_harness.hpp"
#include "driftwave/wavelet.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace driftwave;

namespace {

Family family_of(const std::string& name) {
    const auto fam = parse_family(name);
    if (!fam) throw Error(ErrorCode::InvalidConfig, "unknown wavelet family '" + name + "'");
    return *fam;
}

DenoiseConfig make_config(const std::string& family, std::optional<double> sigma, double delta,
                          std::optional<double> lam, const std::string& boundary,
                          std::optional<unsigned> coarse_level, bool threshold_approximation) {
    DenoiseConfig cfg;
    cfg.family = family_of(family);
    cfg.sigma = sigma;
    cfg.delta = delta;
    cfg.lambda_override = lam;
    const auto b = parse_boundary(boundary);
    if (!b) throw Error(ErrorCode::InvalidConfig, "unknown boundary '" + boundary + "'");
    cfg.boundary = *b;
    cfg.coarse_level = coarse_level;
    cfg.threshold_approximation = threshold_approximation;
    return cfg;
}

#define DENOISE_ARGS                                                                                            \
    "family"_a = "haar", "sigma"_a = py::none(), "delta"_a = 0.1, "lam"_a = py::none(),                         \
    "boundary"_a = "periodized", "coarse_level"_a = py::none(), "threshold_approximation"_a = true

py::dict estimate(const std::vector<double>& y, const std::string& family, std::optional<double> sigma, double delta,
                  std::optional<double> lam, const std::string& boundary, std::optional<unsigned> coarse_level,
                  bool threshold_approximation) {
    const auto est = estimate_latest(y, make_config(family, sigma, delta, lam, boundary, coarse_level,
                                                    threshold_approximation));
    return py::dict("value"_a = est.value, "lambda_used"_a = est.lambda_used, "sigma_used"_a = est.sigma_used,
                    "n_used"_a = est.n_used);
}

std::vector<double> denoise(const std::vector<double>& y, const std::string& family, std::optional<double> sigma,
                            double delta, std::optional<double> lam, const std::string& boundary,
                            std::optional<unsigned> coarse_level, bool threshold_approximation) {
    return denoise_signal(y, make_config(family, sigma, delta, lam, boundary, coarse_level, threshold_approximation))
        .values;
}

std::vector<std::vector<double>> transform_matrix(const std::string& family, std::size_t n) {
    const auto w = build_matrix(family_of(family), n);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < n; ++i) rows.emplace_back(w.row(i).begin(), w.row(i).end());
    return rows;
}

std::vector<double> dwt(const std::vector<double>& x, const std::string& family) {
    const auto c = PeriodicDwt(family_of(family), x.size()).analyze(x);
    return {c.values().begin(), c.values().end()};
}

std::vector<double> idwt(const std::vector<double>& c, const std::string& family) {
    return PeriodicDwt(family_of(family), c.size()).synthesize(CoefficientVector(c));
}

py::dict bounds(const std::vector<double>& theta, const std::string& family, double sigma, double delta) {
    const auto r = compute_bounds(theta, family_of(family), sigma, delta);
    return py::dict("lambda"_a = r.lambda, "lemma1"_a = r.lemma1, "haar_variational"_a = r.haar_variational,
                    "r_star"_a = r.r_star, "kappa"_a = r.kappa, "tv_variational"_a = r.tv_variational,
                    "tv_r_star"_a = r.tv_r_star);
}

py::dict select_model(const std::vector<std::pair<std::string, std::vector<double>>>& panel, bool clamp) {
    std::vector<LossSeries> series;
    for (const auto& [id, losses] : panel) series.push_back({id, losses});
    SelectOptions opts;
    opts.clamp = clamp;
    const auto result = select(series, opts);
    py::dict scores;
    for (const auto& s : result.scores) scores[py::str(s.id)] = py::dict("denoised"_a = s.denoised, "raw"_a = s.raw);
    return py::dict("chosen"_a = result.chosen, "scores"_a = scores);
}

nlohmann::json parse_config(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
    }
}

std::string bench_csv(const std::string& config, std::uint64_t seed, std::size_t threads) {
    return run_bench(bench_from_json(parse_config(config)), seed, threads).to_csv();
}

std::string tvscale_csv(const std::string& config, std::uint64_t seed, std::size_t threads) {
    return run_tv_study(tv_study_from_json(parse_config(config)), seed, threads).to_csv();
}

}  // namespace

PYBIND11_MODULE(_driftwave, m) {
    m.doc() = "Latest-value estimation of drifting signals by wavelet soft thresholding";

    py::register_exception<Error>(m, "DriftwaveError", PyExc_ValueError);

    m.def("soft_threshold", &soft_threshold, "x"_a, "lam"_a);
    m.def("default_lambda", &default_lambda, "sigma"_a, "delta"_a, "n"_a);
    m.def("kappa", &kappa, "n"_a, "delta"_a);
    m.def(
        "mad_sigma", [](const std::vector<double>& finest) { return mad_sigma(finest); }, "finest"_a);
    m.def("estimate_latest", &estimate, "y"_a, DENOISE_ARGS);
    m.def("denoise", &denoise, "y"_a, DENOISE_ARGS);
    m.def("transform_matrix", &transform_matrix, "family"_a, "n"_a);
    m.def("dwt", &dwt, "x"_a, "family"_a = "haar");
    m.def("idwt", &idwt, "coeffs"_a, "family"_a = "haar");
    m.def("compute_bounds", &bounds, "theta"_a, "family"_a = "haar", "sigma"_a, "delta"_a = 0.1);
    m.def("select", &select_model, "panel"_a, "clamp"_a = false);
    m.def("bench_csv", &bench_csv, "config"_a, "seed"_a, "threads"_a = 1);
    m.def("tvscale_csv", &tvscale_csv, "config"_a, "seed"_a, "threads"_a = 1);
}
