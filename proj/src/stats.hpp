#pragma once

#include <cmath>
#include <span>

namespace driftwave::detail {

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

// Sample standard deviation; zero for fewer than two values.
inline MeanStd mean_std(std::span<const double> xs) {
    MeanStd out;
    if (xs.empty()) return out;
    for (double x : xs) out.mean += x;
    out.mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return out;
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return out;
}

}  // namespace driftwave::detail
