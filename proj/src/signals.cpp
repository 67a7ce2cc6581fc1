#include "driftwave/signals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "driftwave/error.hpp"

namespace driftwave {

namespace {
std::string lowercase(std::string_view s) {
    std::string out;
    for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

std::vector<double> piecewise_constant_tv(const SignalSpec& spec, std::mt19937_64& rng) {
    const std::size_t n = spec.n_points;
    std::vector<double> out(n, 0.0);
    if (n < 2 || spec.tv_radius == 0.0) {
        std::fill(out.begin(), out.end(), spec.level);
        return out;
    }
    const auto max_jumps = static_cast<std::size_t>(std::ceil(std::cbrt(static_cast<double>(n))));
    std::uniform_int_distribution<std::size_t> count_dist(1, std::min(max_jumps, n - 1));
    const std::size_t jumps = count_dist(rng);

    // change points are the indices i in [1, n) where out[i] != out[i-1]
    std::vector<std::size_t> positions(n - 1);
    std::iota(positions.begin(), positions.end(), std::size_t{1});
    std::shuffle(positions.begin(), positions.end(), rng);
    positions.resize(jumps);
    std::sort(positions.begin(), positions.end());

    std::uniform_real_distribution<double> magnitude(0.1, 1.0);
    std::bernoulli_distribution sign(0.5);
    std::vector<double> steps(jumps);
    double total = 0.0;
    for (auto& s : steps) {
        s = magnitude(rng);
        total += s;
        if (sign(rng)) s = -s;
    }
    const double scale = spec.tv_radius / total;

    double current = 0.0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (next < jumps && positions[next] == i) current += steps[next++] * scale;
        out[i] = current;
    }
    const auto [lo, hi] = std::minmax_element(out.begin(), out.end());
    const double shift = spec.level - 0.5 * (*lo + *hi);
    for (double& v : out) v += shift;
    return out;
}
}  // namespace

std::optional<SignalKind> parse_signal_kind(std::string_view name) {
    const auto s = lowercase(name);
    if (s == "doppler") return SignalKind::Doppler;
    if (s == "sine") return SignalKind::Sine;
    if (s == "random" || s == "randomcoin" || s == "coin") return SignalKind::RandomCoin;
    if (s == "tv" || s == "piecewiseconstanttv" || s == "piecewise_constant_tv") return SignalKind::PiecewiseConstantTV;
    if (s == "constant") return SignalKind::Constant;
    return std::nullopt;
}

std::string_view to_string(SignalKind kind) {
    switch (kind) {
        case SignalKind::Doppler: return "doppler";
        case SignalKind::Sine: return "sine";
        case SignalKind::RandomCoin: return "random";
        case SignalKind::PiecewiseConstantTV: return "tv";
        case SignalKind::Constant: return "constant";
    }
    return "unknown";
}

std::optional<NoiseDistribution> parse_noise_distribution(std::string_view name) {
    const auto s = lowercase(name);
    if (s == "uniform") return NoiseDistribution::UniformSymmetric;
    if (s == "gaussian" || s == "normal") return NoiseDistribution::Gaussian;
    return std::nullopt;
}

double noise_sigma(NoiseDistribution dist, double level) {
    return dist == NoiseDistribution::UniformSymmetric ? level / std::sqrt(3.0) : level;
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffU), static_cast<std::uint32_t>(seed >> 32), stream};
    return std::mt19937_64(seq);
}

std::vector<double> generate_signal(const SignalSpec& spec, std::uint64_t seed) {
    const std::size_t n = spec.n_points;
    std::vector<double> out(n);
    auto rng = make_rng(seed, kSignalStream);
    switch (spec.kind) {
        case SignalKind::Doppler: {
            const double eps = spec.doppler_eps;
            for (std::size_t i = 0; i < n; ++i) {
                const double t = static_cast<double>(i + 1) / static_cast<double>(n + 1);
                out[i] = spec.amplitude * std::sqrt(t * (1.0 - t)) *
                         std::sin(2.0 * std::numbers::pi * (1.0 + eps) / (t + eps));
            }
            break;
        }
        case SignalKind::Sine:
            for (std::size_t i = 0; i < n; ++i) {
                const double t = static_cast<double>(i) / static_cast<double>(n);
                out[i] = spec.sine_amplitude * std::sin(2.0 * std::numbers::pi * spec.sine_frequency * t);
            }
            break;
        case SignalKind::RandomCoin: {
            std::bernoulli_distribution coin(0.5);
            for (auto& v : out) v = coin(rng) ? 1.0 : 0.0;
            break;
        }
        case SignalKind::PiecewiseConstantTV:
            if (spec.tv_radius < 0.0) throw Error(ErrorCode::InvalidConfig, "TV radius must be nonnegative");
            return piecewise_constant_tv(spec, rng);
        case SignalKind::Constant:
            std::fill(out.begin(), out.end(), spec.level);
            break;
    }
    return out;
}

std::vector<double> standard_noise(NoiseDistribution dist, std::size_t n, std::mt19937_64& rng) {
    std::vector<double> out(n);
    if (dist == NoiseDistribution::UniformSymmetric) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (auto& v : out) v = u(rng);
    } else {
        std::normal_distribution<double> g(0.0, 1.0);
        for (auto& v : out) v = g(rng);
    }
    return out;
}

std::vector<double> add_noise(std::span<const double> truth, std::span<const double> unit_noise, double level) {
    if (truth.size() != unit_noise.size()) throw Error(ErrorCode::LengthMismatch, "noise length differs from signal");
    std::vector<double> out(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) out[i] = truth[i] + level * unit_noise[i];
    return out;
}

double total_variation(std::span<const double> x) {
    double tv = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) tv += std::abs(x[i] - x[i - 1]);
    return tv;
}

}  // namespace driftwave
