#include "driftwave/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "driftwave/error.hpp"
#include "driftwave/wavelet.hpp"

namespace driftwave {

namespace {
double tail_mean(std::span<const double> y, std::size_t w) {
    double sum = 0.0;
    for (double v : y.last(w)) sum += v;
    return sum / static_cast<double>(w);
}
}  // namespace

WindowEstimate fixed_window_mean(std::span<const double> y, std::size_t w) {
    if (w < 1 || w > y.size()) {
        throw Error(ErrorCode::BadWindow,
                    "window " + std::to_string(w) + " outside [1, " + std::to_string(y.size()) + "]");
    }
    return {tail_mean(y, w), w};
}

WindowEstimate adaptive_window_mean(std::span<const double> y, double sigma, double delta) {
    if (y.empty()) throw Error(ErrorCode::TooShort, "adaptive window needs at least one observation");
    if (!(sigma >= 0.0) || !(delta > 0.0 && delta < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "adaptive window needs sigma >= 0 and delta in (0, 1)");
    }
    const std::size_t n = y.size();
    const double tests = std::max(1.0, static_cast<double>(floor_log2(n)));
    const double width = kAdaptiveWindowConstant * sigma * std::sqrt(2.0 * std::log(2.0 * tests / delta));

    std::size_t window = 1;
    double current = y.back();
    while (2 * window <= n) {
        const double wider = tail_mean(y, 2 * window);
        if (std::abs(current - wider) > width / std::sqrt(static_cast<double>(window))) break;
        window *= 2;
        current = wider;
    }
    return {current, window};
}

double range_sigma_proxy(std::span<const double> y) {
    if (y.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    return 0.5 * (*hi - *lo);
}

}  // namespace driftwave
