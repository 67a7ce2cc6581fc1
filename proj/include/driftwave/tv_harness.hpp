#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "driftwave/bench.hpp"

namespace driftwave {

enum class RiskKind { Squared, Absolute };

// sum (est - truth)^2 or sum |est - truth|
double risk(std::span<const double> estimate, std::span<const double> truth, RiskKind kind);

struct TvStudySpec {
    double radius = 1.0;  // C
    double sigma = 1.0;
    std::vector<std::size_t> n_grid = {256, 512, 1024, 2048};
    std::size_t trials = 10;
    MethodSpec estimator = parse_method("haar");
    double delta = 0.1;
    WaveletProfile profile = WaveletProfile::Experiment;
    // centre of the sampled piecewise-constant path
    double level = 0.0;

    void validate() const;
};

struct ScalingRow {
    std::size_t n = 0;
    double mean_sq = 0.0;
    double std_sq = 0.0;
    double mean_abs = 0.0;
    double std_abs = 0.0;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Least squares fit of log(y) against log(x). NaN slope/intercept when any y <= 0.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

struct ScalingFit {
    std::vector<ScalingRow> rows;
    LineFit sq;
    LineFit abs;

    // n,mean_R_sq,std_R_sq,mean_R_abs,std_R_abs,exponent_sq,exponent_abs
    std::string to_csv() const;
};

// Trial k at grid size n uses seed base_seed + k for the TV path (signal
// stream) and Gaussian noise (noise stream).
ScalingFit run_tv_study(const TvStudySpec& spec, std::uint64_t base_seed, std::size_t threads = 1);

}  // namespace driftwave
