#include "driftwave/bench.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fmt/format.h>

#include "driftwave/baselines.hpp"
#include "driftwave/denoiser.hpp"
#include "driftwave/error.hpp"
#include "parallel.hpp"
#include "stats.hpp"

namespace driftwave {

std::string_view to_string(WaveletProfile profile) {
    return profile == WaveletProfile::Orthonormal ? "orthonormal" : "experiment";
}

std::optional<WaveletProfile> parse_profile(std::string_view name) {
    if (name == "orthonormal") return WaveletProfile::Orthonormal;
    if (name == "experiment") return WaveletProfile::Experiment;
    return std::nullopt;
}

MethodSpec parse_method(std::string_view name) {
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    MethodSpec spec;
    spec.label = lower;
    const auto colon = lower.find(':');
    if (auto fam = parse_family(std::string_view(lower).substr(0, colon))) {
        spec.kind = MethodKind::Wavelet;
        spec.family = *fam;
        spec.label = std::string(wavelet_family(*fam).name);
        if (colon != std::string::npos) {
            const auto suffix = std::string_view(lower).substr(colon + 1);
            spec.profile = parse_profile(suffix);
            if (!spec.profile) throw Error(ErrorCode::InvalidConfig, "unknown wavelet profile in '" + std::string(name) + "'");
            spec.label += ":" + std::string(suffix);
        }
        return spec;
    }
    if (lower == "avg") {
        spec.kind = MethodKind::AdaptiveWindow;
        return spec;
    }
    if (lower == "passthrough") {
        spec.kind = MethodKind::Passthrough;
        return spec;
    }
    if (lower.size() > 2 && lower.starts_with("ma")) {
        std::size_t w = 0;
        const auto* first = lower.data() + 2;
        const auto* last = lower.data() + lower.size();
        const auto [ptr, ec] = std::from_chars(first, last, w);
        if (ec == std::errc{} && ptr == last && w >= 1) {
            spec.kind = MethodKind::FixedWindow;
            spec.window = w;
            return spec;
        }
    }
    throw Error(ErrorCode::InvalidConfig, "unknown method '" + std::string(name) + "'");
}

DenoiseConfig wavelet_config(const MethodSpec& method, const EvalContext& ctx) {
    DenoiseConfig cfg;
    if (method.profile.value_or(ctx.profile) == WaveletProfile::Experiment) {
        cfg = DenoiseConfig::experiment_profile(method.family);
    } else {
        cfg.family = method.family;
    }
    cfg.delta = ctx.delta;
    if (ctx.sigma_mode == SigmaMode::Known) cfg.sigma = ctx.known_sigma;
    return cfg;
}

double estimate_prefix(const MethodSpec& method, std::span<const double> prefix, const EvalContext& ctx) {
    if (prefix.empty()) throw Error(ErrorCode::TooShort, "empty prefix");
    const bool known = ctx.sigma_mode == SigmaMode::Known;
    switch (method.kind) {
        case MethodKind::Passthrough:
            return prefix.back();
        case MethodKind::FixedWindow:
            return fixed_window_mean(prefix, std::min(method.window, prefix.size())).value;
        case MethodKind::AdaptiveWindow: {
            const double sigma = known ? ctx.known_sigma : range_sigma_proxy(prefix);
            return adaptive_window_mean(prefix, sigma, ctx.delta).value;
        }
        case MethodKind::Wavelet: {
            if (prefix.size() < 2) return prefix.back();
            return estimate_latest(prefix, wavelet_config(method, ctx)).value;
        }
    }
    return prefix.back();
}

std::vector<double> online_estimates(const MethodSpec& method, std::span<const double> y, const EvalContext& ctx) {
    std::vector<double> out(y.size());
    for (std::size_t t = 1; t <= y.size(); ++t) out[t - 1] = estimate_prefix(method, y.first(t), ctx);
    return out;
}

double mean_squared_error(std::span<const double> estimate, std::span<const double> truth) {
    if (estimate.size() != truth.size()) throw Error(ErrorCode::LengthMismatch, "estimate and truth lengths differ");
    if (truth.empty()) return 0.0;
    double ss = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) ss += (estimate[i] - truth[i]) * (estimate[i] - truth[i]);
    return ss / static_cast<double>(truth.size());
}

const RiskRow* RiskReport::find(std::string_view method, double noise_level) const {
    for (const auto& row : rows) {
        if (row.method == method && row.noise_level == noise_level) return &row;
    }
    return nullptr;
}

std::string RiskReport::to_csv() const {
    std::string out = "method,noise_level,mean_mse,std_mse\n";
    for (const auto& row : rows) {
        out += fmt::format("{},{},{},{}\n", row.method, row.noise_level, row.mean_mse, row.std_mse);
    }
    return out;
}

namespace {

std::vector<double> trial_truth(const SignalSpec& signal, std::uint64_t base_seed, std::size_t trial) {
    const std::uint64_t seed = signal.resample_per_trial ? base_seed + trial : base_seed;
    return generate_signal(signal, seed);
}

}  // namespace

RiskReport run_online_eval(const SignalSpec& signal, NoiseDistribution noise, double level,
                           std::span<const MethodSpec> methods, std::size_t trials, std::uint64_t base_seed,
                           const EvalOptions& opts) {
    if (methods.empty()) throw Error(ErrorCode::InvalidConfig, "at least one method is required");
    if (trials == 0) throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
    if (!(level >= 0.0)) throw Error(ErrorCode::InvalidConfig, "noise level must be nonnegative");

    const EvalContext ctx{opts.sigma_mode, noise_sigma(noise, level), opts.delta, opts.profile};
    // mse[trial][method]
    std::vector<std::vector<double>> mse(trials, std::vector<double>(methods.size()));
    detail::parallel_for(trials, opts.threads, [&](std::size_t trial) {
        const auto truth = trial_truth(signal, base_seed, trial);
        auto rng = make_rng(base_seed + trial, kNoiseStream);
        const auto y = add_noise(truth, standard_noise(noise, truth.size(), rng), level);
        for (std::size_t m = 0; m < methods.size(); ++m) {
            mse[trial][m] = mean_squared_error(online_estimates(methods[m], y, ctx), truth);
        }
    });

    RiskReport report;
    report.trials = trials;
    report.base_seed = base_seed;
    std::vector<double> column(trials);
    for (std::size_t m = 0; m < methods.size(); ++m) {
        for (std::size_t k = 0; k < trials; ++k) column[k] = mse[k][m];
        const auto s = detail::mean_std(column);
        report.rows.push_back({methods[m].label, level, s.mean, s.std, trials});
    }
    return report;
}

RiskReport run_bench(const BenchSpec& spec, std::uint64_t base_seed, std::size_t threads) {
    RiskReport report;
    report.trials = spec.trials;
    report.base_seed = base_seed;
    const EvalOptions opts{spec.sigma_mode, spec.delta, threads, spec.profile};
    for (double level : spec.noise.levels) {
        auto part = run_online_eval(spec.signal, spec.noise.distribution, level, spec.methods, spec.trials,
                                    base_seed, opts);
        report.rows.insert(report.rows.end(), part.rows.begin(), part.rows.end());
        for (const auto& ext : spec.external) {
            if (ext.noise_level != level) continue;
            std::vector<double> scores;
            for (std::size_t k = 0; k < ext.trial_estimates.size(); ++k) {
                const auto truth = trial_truth(spec.signal, base_seed, k);
                scores.push_back(mean_squared_error(ext.trial_estimates[k], truth));
            }
            const auto s = detail::mean_std(scores);
            report.rows.push_back({ext.name, level, s.mean, s.std, scores.size()});
        }
    }
    return report;
}

std::vector<double> prefix_bounds(std::span<const double> truth, Family family, double sigma, double delta,
                                  WaveletProfile profile) {
    MethodSpec method;
    method.family = family;
    const EvalContext ctx{SigmaMode::Known, sigma, delta, profile};
    std::vector<double> out;
    for (std::size_t t = 2; t <= truth.size(); ++t) {
        const auto window = dyadic_tail(truth.first(t));
        const auto cfg = wavelet_config(method, ctx);
        out.push_back(lemma1_bound(window, cfg, default_lambda(sigma, delta, window.size())));
    }
    return out;
}

std::vector<BoundProfileRow> bound_profile(std::span<const double> truth, const NoiseSpec& noise,
                                           std::span<const Family> families, double delta,
                                           WaveletProfile profile) {
    if (truth.size() < 2) throw Error(ErrorCode::TooShort, "bound profile needs at least 2 samples");
    std::vector<BoundProfileRow> rows;
    for (double level : noise.levels) {
        const double sigma = noise_sigma(noise.distribution, level);
        for (Family fam : families) {
            const auto bounds = prefix_bounds(truth, fam, sigma, delta, profile);
            rows.push_back({level, std::string(wavelet_family(fam).name), detail::mean_std(bounds).mean});
        }
    }
    return rows;
}

std::string bound_profile_csv(std::span<const BoundProfileRow> rows) {
    std::string out = "noise_level,family,mean_bound\n";
    for (const auto& row : rows) out += fmt::format("{},{},{}\n", row.noise_level, row.family, row.mean_bound);
    return out;
}

}  // namespace driftwave
