#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "driftwave/denoiser.hpp"
#include "driftwave/signals.hpp"
#include "driftwave/wavelet.hpp"

namespace driftwave {

enum class MethodKind { Wavelet, FixedWindow, AdaptiveWindow, Passthrough };

// How a wavelet method is configured when it runs inside the harness.
enum class WaveletProfile {
    // periodized transform, full depth, every coefficient thresholded
    Orthonormal,
    // DenoiseConfig::experiment_profile
    Experiment,
};

std::string_view to_string(WaveletProfile profile);
std::optional<WaveletProfile> parse_profile(std::string_view name);

struct MethodSpec {
    MethodKind kind = MethodKind::Wavelet;
    Family family = Family::Haar;
    std::size_t window = 16;
    std::string label;
    // nullopt follows the harness default
    std::optional<WaveletProfile> profile;
};

// "haar", "db2".."db8", "avg", "ma<w>" (e.g. "ma16"), "passthrough".
// Wavelet names take an optional ":orthonormal" or ":experiment" suffix.
MethodSpec parse_method(std::string_view name);

enum class SigmaMode { Known, Unknown };

struct EvalContext {
    SigmaMode sigma_mode = SigmaMode::Known;
    double known_sigma = 0.0;
    double delta = 0.1;
    WaveletProfile profile = WaveletProfile::Experiment;
};

// Denoiser settings for a wavelet method given the window length.
DenoiseConfig wavelet_config(const MethodSpec& method, const EvalContext& ctx);

// Estimate of the newest ground-truth value from a prefix of observations.
// Wavelet methods return the observation itself for a single sample.
double estimate_prefix(const MethodSpec& method, std::span<const double> prefix, const EvalContext& ctx);

// theta_hat_t computed from observations 1..t for every t.
std::vector<double> online_estimates(const MethodSpec& method, std::span<const double> y, const EvalContext& ctx);

double mean_squared_error(std::span<const double> estimate, std::span<const double> truth);

// Estimates produced by a tool outside this library, one sequence per trial.
struct ExternalMethod {
    std::string name;
    double noise_level = 0.0;
    std::vector<std::vector<double>> trial_estimates;
};

struct RiskRow {
    std::string method;
    double noise_level = 0.0;
    double mean_mse = 0.0;
    double std_mse = 0.0;  // sample standard deviation across trials
    std::size_t trials = 0;
};

struct RiskReport {
    std::vector<RiskRow> rows;
    std::size_t trials = 0;
    std::uint64_t base_seed = 0;

    const RiskRow* find(std::string_view method, double noise_level) const;
    // method,noise_level,mean_mse,std_mse
    std::string to_csv() const;
};

struct EvalOptions {
    SigmaMode sigma_mode = SigmaMode::Known;
    double delta = 0.1;
    std::size_t threads = 1;
    WaveletProfile profile = WaveletProfile::Experiment;
};

// One noise level: trial k uses seed base_seed + k for both the signal draw
// and the noise draw (on separate streams).
RiskReport run_online_eval(const SignalSpec& signal, NoiseDistribution noise, double level,
                           std::span<const MethodSpec> methods, std::size_t trials, std::uint64_t base_seed,
                           const EvalOptions& opts = {});

struct BenchSpec {
    SignalSpec signal;
    NoiseSpec noise;
    std::vector<MethodSpec> methods;
    std::size_t trials = 5;
    SigmaMode sigma_mode = SigmaMode::Known;
    double delta = 0.1;
    WaveletProfile profile = WaveletProfile::Experiment;
    std::vector<ExternalMethod> external;
};

// Full grid; rows are ordered by noise level, then by method in spec order,
// with external methods after the built-in ones.
RiskReport run_bench(const BenchSpec& spec, std::uint64_t base_seed, std::size_t threads = 1);

struct BoundProfileRow {
    double noise_level = 0.0;
    std::string family;
    double mean_bound = 0.0;
};

// Pointwise error bound (lemma1_bound) for every prefix t = 2..n of the noiseless signal, averaged.
// The profile selects the transform the bound is evaluated for, as in the
// online evaluation.
std::vector<BoundProfileRow> bound_profile(std::span<const double> truth, const NoiseSpec& noise,
                                           std::span<const Family> families, double delta,
                                           WaveletProfile profile = WaveletProfile::Experiment);

// Per-prefix bound values for one family and noise scale (index t-2 for prefix t).
std::vector<double> prefix_bounds(std::span<const double> truth, Family family, double sigma, double delta,
                                  WaveletProfile profile = WaveletProfile::Experiment);

std::string bound_profile_csv(std::span<const BoundProfileRow> rows);

}  // namespace driftwave
