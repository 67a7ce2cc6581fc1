#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace driftwave {

enum class SignalKind { Doppler, Sine, RandomCoin, PiecewiseConstantTV, Constant };

std::optional<SignalKind> parse_signal_kind(std::string_view name);
std::string_view to_string(SignalKind kind);

struct SignalSpec {
    SignalKind kind = SignalKind::Doppler;
    std::size_t n_points = 500;
    // Doppler: amplitude * sqrt(t(1-t)) sin(2 pi (1+eps)/(t+eps))
    double amplitude = 3.0;
    double doppler_eps = 0.05;
    // Sine: sine_amplitude sin(2 pi freq t)
    double sine_amplitude = 1.0;
    double sine_frequency = 4.0;
    // PiecewiseConstantTV: exact total variation, path centred on `level`.
    // Constant: every sample equals `level`.
    double tv_radius = 1.0;
    double level = 0.0;
    // Random kinds draw a fresh signal for every trial unless this is false.
    bool resample_per_trial = true;

    bool is_random() const { return kind == SignalKind::RandomCoin || kind == SignalKind::PiecewiseConstantTV; }
};

enum class NoiseDistribution { UniformSymmetric, Gaussian };

std::optional<NoiseDistribution> parse_noise_distribution(std::string_view name);

struct NoiseSpec {
    NoiseDistribution distribution = NoiseDistribution::UniformSymmetric;
    // Half-width B for uniform noise on [-B, B], standard deviation for Gaussian.
    std::vector<double> levels = {0.2, 0.3, 0.5, 0.7, 1.0};
};

// Standard deviation of one noise draw at the given level (B / sqrt(3) for uniform).
double noise_sigma(NoiseDistribution dist, double level);

// Independent generator per (seed, stream) so signal and noise draws never share state.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t stream);

inline constexpr std::uint32_t kSignalStream = 1;
inline constexpr std::uint32_t kNoiseStream = 2;

std::vector<double> generate_signal(const SignalSpec& spec, std::uint64_t seed);

// Unit-scale noise (uniform on [-1, 1] or standard normal); multiply by the level.
std::vector<double> standard_noise(NoiseDistribution dist, std::size_t n, std::mt19937_64& rng);

std::vector<double> add_noise(std::span<const double> truth, std::span<const double> unit_noise, double level);

double total_variation(std::span<const double> x);

}  // namespace driftwave
