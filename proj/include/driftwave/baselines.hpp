#pragma once

#include <cstddef>
#include <span>

namespace driftwave {

struct WindowEstimate {
    double value = 0.0;
    std::size_t window = 0;
};

// Mean of the w most recent observations (y ordered oldest to newest).
WindowEstimate fixed_window_mean(std::span<const double> y, std::size_t w);

inline constexpr double kAdaptiveWindowConstant = 2.0;

// Doubling-window estimator: starting from r = 1, window 2r is accepted while
//   |mean(r newest) - mean(2r newest)| <= c sigma sqrt(2 ln(2 log2(n) / delta)) / sqrt(r)
// and the mean over the largest accepted window is returned.
WindowEstimate adaptive_window_mean(std::span<const double> y, double sigma, double delta);

// Scale proxy used when the noise level is unknown: half the observed range.
double range_sigma_proxy(std::span<const double> y);

}  // namespace driftwave
