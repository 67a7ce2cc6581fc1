#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "driftwave/wavelet.hpp"

namespace driftwave {

enum class Truncation { TruncateToDyadic };

enum class Boundary {
    // square orthonormal transform, the window wraps around
    Periodized,
    // half-sample mirror at both ends of every level
    Symmetric,
};

struct DenoiseConfig {
    Family family = Family::Haar;
    // Known noise scale; nullopt means estimate it by MAD of the finest
    // detail coefficients.
    std::optional<double> sigma;
    double delta = 0.1;
    std::optional<double> lambda_override;
    Truncation truncation = Truncation::TruncateToDyadic;
    Boundary boundary = Boundary::Periodized;
    // Stop the cascade once 2^coarse_level scaling coefficients remain
    // (at least one level is always taken). nullopt decomposes fully.
    std::optional<unsigned> coarse_level;
    bool threshold_approximation = true;

    // Symmetric boundary, 16 coarse scaling coefficients kept unthresholded.
    // This is the setting used for the synthetic benchmark tables.
    static DenoiseConfig experiment_profile(Family family);

    // Number of cascade levels used for a window of n samples.
    unsigned depth_for(std::size_t n) const;

    // Throws Error(InvalidConfig) when a field is out of range.
    void validate() const;
};

std::string_view to_string(Boundary boundary);
std::optional<Boundary> parse_boundary(std::string_view name);

struct Estimate {
    double value = 0.0;
    double lambda_used = 0.0;
    double sigma_used = 0.0;
    std::size_t n_used = 0;
};

struct DenoisedSignal {
    std::vector<double> values;  // aligned to the most recent n_used samples
    double lambda_used = 0.0;
    double sigma_used = 0.0;
    std::size_t n_used = 0;
};

inline constexpr double kMadConsistency = 0.6745;

double soft_threshold(double x, double lambda);

// 2 sigma sqrt(2 ln(ln(n) / delta)); zero whenever sigma is zero.
double default_lambda(double sigma, double delta, std::size_t n);

// The most recent 2^floor(log2 len) observations.
std::span<const double> dyadic_tail(std::span<const double> y);

// Observations are ordered oldest to newest. Returns the thresholded
// reconstruction at the newest time point.
Estimate estimate_latest(std::span<const double> y, const DenoiseConfig& cfg);
DenoisedSignal denoise_signal(std::span<const double> y, const DenoiseConfig& cfg);

double mad_sigma(const CoefficientVector& coeffs);
// median(|c|) / 0.6745 over a band of finest-level detail coefficients.
double mad_sigma(std::span<const double> finest);

// Sum over the support of 6 |W_{i,n}| min(|beta_i|, lambda), where beta are
// the coefficients of the noiseless signal.
double lemma1_bound(const CoefficientVector& beta_true, std::span<const SupportEntry> support, double lambda);

// The same bound for the transform a DenoiseConfig selects. Weights are the
// sensitivities of the newest reconstructed sample to each coefficient of the
// noiseless window theta. Thresholded coefficients add 6 |w| min(|beta|, lambda);
// coefficients left unthresholded add |w| lambda / 2 (their noise on the
// event where every coefficient error is at most lambda / 2). With the
// default config this equals lemma1_bound over the last-column support.
double lemma1_bound(std::span<const double> theta, const DenoiseConfig& cfg, double lambda);

// (max(4 sqrt(2 ln(ln n / delta)), 2 sqrt 2)) (log2 n + 1)
double kappa(std::size_t n, double delta);

struct VariationalBound {
    double u_star = 0.0;
    std::size_t r_star = 0;
    double kappa = 0.0;
    double bound = 0.0;  // kappa * u_star
};

// Window-average bias profile U(r) = max_{t in S(r)} |mean of t newest - newest| v sigma/sqrt(r),
// minimised over r = 1..n by exhaustive scan. theta is ordered oldest to newest.
VariationalBound haar_variational_bound(std::span<const double> theta, double sigma, double delta);

enum class TvVariant {
    // max_{t in S(r)} TV(t newest) v sigma/sqrt(r)
    MaxTotalVariation,
    // max_{t in S(r)} |TV(t newest) - newest| v sigma/sqrt(r)
    OffsetByLatest,
};

VariationalBound tv_variational_bound(std::span<const double> theta, double sigma, double delta,
                                      TvVariant variant = TvVariant::MaxTotalVariation);

// U(r) and the TV counterpart for every r = 1..n (index r-1).
std::vector<double> haar_variational_profile(std::span<const double> theta, double sigma);
std::vector<double> tv_variational_profile(std::span<const double> theta, double sigma,
                                           TvVariant variant = TvVariant::MaxTotalVariation);

struct BoundReport {
    double lambda = 0.0;
    double lemma1 = 0.0;
    double haar_variational = 0.0;
    std::size_t r_star = 0;
    double kappa = 0.0;
    double tv_variational = 0.0;
    std::size_t tv_r_star = 0;
};

// All three bounds for a noiseless dyadic-length signal.
BoundReport compute_bounds(std::span<const double> theta, Family family, double sigma, double delta,
                           TvVariant variant = TvVariant::MaxTotalVariation);

}  // namespace driftwave
