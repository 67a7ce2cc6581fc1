#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "driftwave/bench.hpp"
#include "driftwave/config_json.hpp"
#include "driftwave/denoiser.hpp"
#include "driftwave/error.hpp"
#include "driftwave/io.hpp"
#include "driftwave/selection.hpp"
#include "driftwave/tv_harness.hpp"

namespace fs = std::filesystem;
using driftwave::Error;
using driftwave::ErrorCode;
using nlohmann::ordered_json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

struct DenoiseFlags {
    std::string family = "haar";
    std::string sigma = "mad";
    double delta = 0.1;
    std::optional<double> lambda;
    std::string boundary = "periodized";
    std::optional<unsigned> coarse_level;
    bool keep_approximation = false;
};

struct OutputFlags {
    std::string format = "csv";
    std::string out;
};

void add_denoise_flags(CLI::App& cmd, DenoiseFlags& f, const std::string& default_sigma) {
    f.sigma = default_sigma;
    cmd.add_option("--family", f.family, "Wavelet family: haar, db2 .. db8")->capture_default_str();
    cmd.add_option("--sigma", f.sigma, "Known noise scale, or 'mad' to estimate it")->capture_default_str();
    cmd.add_option("--delta", f.delta, "Failure probability in (0, 1)")->capture_default_str();
    cmd.add_option("--lambda", f.lambda, "Explicit soft threshold (default: derived from sigma, delta, n)");
    cmd.add_option("--boundary", f.boundary, "periodized or symmetric")->capture_default_str();
    cmd.add_option("--coarse-level", f.coarse_level, "Keep 2^j scaling coefficients (default: full depth)");
    cmd.add_flag("--keep-approximation", f.keep_approximation, "Do not threshold scaling coefficients");
}

driftwave::DenoiseConfig make_config(const DenoiseFlags& f) {
    driftwave::DenoiseConfig cfg;
    const auto fam = driftwave::parse_family(f.family);
    if (!fam) throw Error(ErrorCode::InvalidConfig, "unknown wavelet family '" + f.family + "'");
    cfg.family = *fam;
    if (f.sigma != "mad") {
        const auto sigma = driftwave::parse_number(f.sigma);
        if (!sigma) throw Error(ErrorCode::InvalidConfig, "--sigma expects a number or 'mad'");
        cfg.sigma = *sigma;
    }
    cfg.delta = f.delta;
    cfg.lambda_override = f.lambda;
    const auto boundary = driftwave::parse_boundary(f.boundary);
    if (!boundary) throw Error(ErrorCode::InvalidConfig, "unknown boundary '" + f.boundary + "'");
    cfg.boundary = *boundary;
    cfg.coarse_level = f.coarse_level;
    cfg.threshold_approximation = !f.keep_approximation;
    cfg.validate();
    return cfg;
}

void add_output_flags(CLI::App& cmd, OutputFlags& f, bool with_format) {
    if (with_format) {
        cmd.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    }
    cmd.add_option("--out", f.out, "Write output to this path instead of stdout");
}

void emit(const OutputFlags& f, const std::string& text) {
    if (f.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(f.out, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + f.out + "'");
    out << text;
    spdlog::info("wrote {}", f.out);
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, std::string_view command) {
    if (!seed) throw Error(ErrorCode::InvalidConfig, std::string(command) + " is stochastic and needs --seed");
    return *seed;
}

std::string json_text(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json estimate_json(const driftwave::Estimate& e) {
    ordered_json j;
    j["value"] = e.value;
    j["lambda_used"] = e.lambda_used;
    j["sigma_used"] = e.sigma_used;
    j["n_used"] = e.n_used;
    return j;
}

ordered_json report_json(const driftwave::RiskReport& report) {
    ordered_json j;
    j["trials"] = report.trials;
    j["base_seed"] = report.base_seed;
    j["rows"] = ordered_json::array();
    for (const auto& row : report.rows) {
        j["rows"].push_back({{"method", row.method},
                             {"noise_level", row.noise_level},
                             {"mean_mse", row.mean_mse},
                             {"std_mse", row.std_mse}});
    }
    return j;
}

ordered_json scaling_json(const driftwave::ScalingFit& fit) {
    ordered_json j;
    j["rows"] = ordered_json::array();
    for (const auto& r : fit.rows) {
        j["rows"].push_back({{"n", r.n},
                             {"mean_R_sq", r.mean_sq},
                             {"std_R_sq", r.std_sq},
                             {"mean_R_abs", r.mean_abs},
                             {"std_R_abs", r.std_abs}});
    }
    j["exponent_sq"] = fit.sq.slope;
    j["intercept_sq"] = fit.sq.intercept;
    j["exponent_abs"] = fit.abs.slope;
    j["intercept_abs"] = fit.abs.intercept;
    return j;
}

ordered_json bound_report_json(const driftwave::BoundReport& r) {
    ordered_json j;
    j["lambda"] = r.lambda;
    j["lemma1"] = r.lemma1;
    j["haar_variational"] = r.haar_variational;
    j["r_star"] = r.r_star;
    j["kappa"] = r.kappa;
    j["tv_variational"] = r.tv_variational;
    j["tv_r_star"] = r.tv_r_star;
    return j;
}

driftwave::WaveletProfile parse_profile_flag(const std::string& name) {
    const auto profile = driftwave::parse_profile(name);
    if (!profile) throw Error(ErrorCode::InvalidConfig, "unknown profile '" + name + "'");
    return *profile;
}

void configure_logging() {
    auto logger = spdlog::stderr_color_mt("driftwave");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("DRIFTWAVE_LOG")) {
        spdlog::set_level(spdlog::level::from_str(env));
    }
}

}  // namespace

int main(int argc, char** argv) {
    configure_logging();

    CLI::App app{"Latest-value estimation of drifting signals by wavelet soft thresholding"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::optional<std::uint64_t> seed;
    std::size_t threads = std::max(1U, std::thread::hardware_concurrency());

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Denoised estimate of the newest observation (JSON)");
    std::string estimate_input;
    DenoiseFlags estimate_flags;
    OutputFlags estimate_out;
    estimate->add_option("series", estimate_input, "One value or 't,value' per line, oldest first")->required();
    add_denoise_flags(*estimate, estimate_flags, "mad");
    add_output_flags(*estimate, estimate_out, false);

    // denoise
    auto* denoise = app.add_subcommand("denoise", "Denoised reconstruction of the most recent 2^k observations");
    std::string denoise_input;
    DenoiseFlags denoise_flags;
    OutputFlags denoise_out;
    denoise->add_option("series", denoise_input, "One value or 't,value' per line, oldest first")->required();
    add_denoise_flags(*denoise, denoise_flags, "mad");
    add_output_flags(*denoise, denoise_out, true);

    // bench
    auto* bench = app.add_subcommand("bench", "Online MSE table on synthetic signals");
    std::string bench_config;
    std::optional<std::size_t> bench_trials;
    std::optional<std::string> bench_profile;
    OutputFlags bench_out;
    bench->add_option("config", bench_config, "JSON run description")->required();
    bench->add_option("--seed", seed, "Base seed; trial k uses seed + k");
    bench->add_option("--trials", bench_trials, "Override the trial count");
    bench->add_option("--threads", threads, "Worker threads")->capture_default_str();
    bench->add_option("--profile", bench_profile, "Wavelet profile: experiment or orthonormal");
    add_output_flags(*bench, bench_out, true);

    // tvscale
    auto* tvscale = app.add_subcommand("tvscale", "Risk scaling of an estimator over the TV class");
    std::string tv_config;
    std::optional<std::size_t> tv_trials;
    OutputFlags tv_out;
    tvscale->add_option("config", tv_config, "JSON run description")->required();
    tvscale->add_option("--seed", seed, "Base seed; trial k uses seed + k");
    tvscale->add_option("--trials", tv_trials, "Override the trial count");
    tvscale->add_option("--threads", threads, "Worker threads")->capture_default_str();
    add_output_flags(*tvscale, tv_out, true);

    // select
    auto* select = app.add_subcommand("select", "Pick the model with the lowest denoised latest loss (JSON)");
    std::string panel_input;
    DenoiseFlags select_flags;
    bool clamp = false;
    OutputFlags select_out;
    select->add_option("panel", panel_input, "CSV with header 't,<id1>,<id2>,...'")->required();
    add_denoise_flags(*select, select_flags, "mad");
    select->add_flag("--clamp", clamp, "Clamp denoised values to each series' observed range");
    add_output_flags(*select, select_out, false);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Pointwise error bounds on noiseless signals");
    std::string bounds_config;
    std::string theta_input;
    DenoiseFlags bounds_flags;
    std::string tv_variant = "max";
    std::optional<std::string> bounds_profile;
    OutputFlags bounds_out;
    auto* config_opt = bounds->add_option("config", bounds_config, "JSON run description (bound profile CSV)");
    auto* theta_opt =
        bounds->add_option("--theta", theta_input, "Noiseless dyadic-length series: print all three bounds (JSON)");
    config_opt->excludes(theta_opt);
    bounds->add_option("--seed", seed, "Seed for randomly generated signals");
    bounds->add_option("--profile", bounds_profile, "Wavelet profile for the bound profile");
    bounds->add_option("--tv-variant", tv_variant, "max or offset")
        ->check(CLI::IsMember({"max", "offset"}))
        ->capture_default_str();
    add_denoise_flags(*bounds, bounds_flags, "0");
    add_output_flags(*bounds, bounds_out, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (estimate->parsed()) {
            const auto cfg = make_config(estimate_flags);
            const auto y = driftwave::read_series(fs::path(estimate_input));
            emit(estimate_out, json_text(estimate_json(driftwave::estimate_latest(y, cfg))));
        } else if (denoise->parsed()) {
            const auto cfg = make_config(denoise_flags);
            const auto y = driftwave::read_series(fs::path(denoise_input));
            const auto res = driftwave::denoise_signal(y, cfg);
            const std::size_t offset = y.size() - res.n_used;
            if (denoise_out.format == "json") {
                ordered_json j;
                j["values"] = res.values;
                j["lambda_used"] = res.lambda_used;
                j["sigma_used"] = res.sigma_used;
                j["n_used"] = res.n_used;
                emit(denoise_out, json_text(j));
            } else {
                std::string text = "t,value\n";
                for (std::size_t i = 0; i < res.values.size(); ++i) {
                    text += fmt::format("{},{}\n", offset + i + 1, res.values[i]);
                }
                emit(denoise_out, text);
            }
        } else if (bench->parsed()) {
            const fs::path path(bench_config);
            auto spec = driftwave::bench_from_json(driftwave::read_json_file(path), path.parent_path());
            if (bench_trials) spec.trials = *bench_trials;
            if (spec.trials == 0) throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
            if (bench_profile) spec.profile = parse_profile_flag(*bench_profile);
            const auto base_seed = require_seed(seed, "bench");
            spdlog::info("bench: {} methods, {} levels, {} trials, {} threads", spec.methods.size(),
                         spec.noise.levels.size(), spec.trials, threads);
            const auto report = driftwave::run_bench(spec, base_seed, threads);
            emit(bench_out, bench_out.format == "json" ? json_text(report_json(report)) : report.to_csv());
        } else if (tvscale->parsed()) {
            auto spec = driftwave::tv_study_from_json(driftwave::read_json_file(fs::path(tv_config)));
            if (tv_trials) spec.trials = *tv_trials;
            const auto base_seed = require_seed(seed, "tvscale");
            const auto fit = driftwave::run_tv_study(spec, base_seed, threads);
            emit(tv_out, tv_out.format == "json" ? json_text(scaling_json(fit)) : fit.to_csv());
        } else if (select->parsed()) {
            driftwave::SelectOptions opts;
            opts.denoise = make_config(select_flags);
            opts.clamp = clamp;
            const auto panel = driftwave::ingest_panel(fs::path(panel_input));
            emit(select_out, json_text(driftwave::to_json(driftwave::select(panel, opts))));
        } else if (bounds->parsed()) {
            if (!theta_input.empty()) {
                const auto cfg = make_config(bounds_flags);
                if (!cfg.sigma) throw Error(ErrorCode::InvalidConfig, "--theta needs a numeric --sigma");
                const auto theta = driftwave::read_series(fs::path(theta_input));
                const auto variant = tv_variant == "offset" ? driftwave::TvVariant::OffsetByLatest
                                                            : driftwave::TvVariant::MaxTotalVariation;
                const auto report = driftwave::compute_bounds(theta, cfg.family, *cfg.sigma, cfg.delta, variant);
                emit(bounds_out, json_text(bound_report_json(report)));
            } else if (!bounds_config.empty()) {
                auto spec = driftwave::bounds_from_json(driftwave::read_json_file(fs::path(bounds_config)));
                if (bounds_profile) spec.profile = parse_profile_flag(*bounds_profile);
                const std::uint64_t signal_seed = spec.signal.is_random() ? require_seed(seed, "bounds") : 0;
                const auto truth = driftwave::generate_signal(spec.signal, signal_seed);
                const auto rows = driftwave::bound_profile(truth, spec.noise, spec.families, spec.delta, spec.profile);
                if (bounds_out.format == "json") {
                    ordered_json j = ordered_json::array();
                    for (const auto& row : rows) {
                        j.push_back({{"noise_level", row.noise_level},
                                     {"family", row.family},
                                     {"mean_bound", row.mean_bound}});
                    }
                    emit(bounds_out, json_text(j));
                } else {
                    emit(bounds_out, driftwave::bound_profile_csv(rows));
                }
            } else {
                throw Error(ErrorCode::InvalidConfig, "bounds needs a config file or --theta");
            }
        }
    } catch (const Error& e) {
        spdlog::error("{}", e.what());
        return e.is_input_error() ? kExitInput : kExitConfig;
    }
    return 0;
}
