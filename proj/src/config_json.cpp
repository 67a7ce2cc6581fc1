#include "driftwave/config_json.hpp"

#include <fstream>
#include <initializer_list>
#include <string>

#include "driftwave/error.hpp"
#include "driftwave/io.hpp"

namespace driftwave {

namespace {

using nlohmann::json;

void require_object(const json& j, std::string_view what, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, std::string(what) + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (auto name : allowed) known = known || key == name;
        if (!known) throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "' in " + std::string(what));
    }
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    const auto it = j.find(key);
    if (it == j.end()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::InvalidConfig, std::string("field '") + key + "' has the wrong type");
    }
}

std::string read_string(const json& j, const char* key, std::string fallback) {
    read_field(j, key, fallback);
    return fallback;
}

WaveletProfile read_profile(const json& j, WaveletProfile fallback) {
    const auto name = read_string(j, "profile", std::string(to_string(fallback)));
    const auto profile = parse_profile(name);
    if (!profile) throw Error(ErrorCode::InvalidConfig, "unknown profile '" + name + "'");
    return *profile;
}

std::vector<Family> read_families(const json& j) {
    std::vector<std::string> names;
    read_field(j, "families", names);
    std::vector<Family> out;
    for (const auto& name : names) {
        const auto fam = parse_family(name);
        if (!fam) throw Error(ErrorCode::InvalidConfig, "unknown wavelet family '" + name + "'");
        out.push_back(*fam);
    }
    return out;
}

}  // namespace

SignalSpec signal_from_json(const json& j) {
    require_object(j, "signal", {"kind", "n_points", "amplitude", "doppler_eps", "sine_amplitude", "sine_frequency",
                                 "tv_radius", "level", "resample_per_trial"});
    SignalSpec spec;
    const auto kind = read_string(j, "kind", std::string(to_string(spec.kind)));
    const auto parsed = parse_signal_kind(kind);
    if (!parsed) throw Error(ErrorCode::InvalidConfig, "unknown signal kind '" + kind + "'");
    spec.kind = *parsed;
    read_field(j, "n_points", spec.n_points);
    read_field(j, "amplitude", spec.amplitude);
    read_field(j, "doppler_eps", spec.doppler_eps);
    read_field(j, "sine_amplitude", spec.sine_amplitude);
    read_field(j, "sine_frequency", spec.sine_frequency);
    read_field(j, "tv_radius", spec.tv_radius);
    read_field(j, "level", spec.level);
    read_field(j, "resample_per_trial", spec.resample_per_trial);
    if (spec.n_points == 0) throw Error(ErrorCode::InvalidConfig, "n_points must be >= 1");
    if (!(spec.tv_radius >= 0.0)) throw Error(ErrorCode::InvalidConfig, "tv_radius must be nonnegative");
    return spec;
}

NoiseSpec noise_from_json(const json& j) {
    require_object(j, "noise", {"distribution", "levels"});
    NoiseSpec spec;
    const auto name = read_string(j, "distribution", "uniform");
    const auto dist = parse_noise_distribution(name);
    if (!dist) throw Error(ErrorCode::InvalidConfig, "unknown noise distribution '" + name + "'");
    spec.distribution = *dist;
    read_field(j, "levels", spec.levels);
    if (spec.levels.empty()) throw Error(ErrorCode::InvalidConfig, "noise levels must not be empty");
    for (double level : spec.levels) {
        if (!(level >= 0.0)) throw Error(ErrorCode::InvalidConfig, "noise levels must be nonnegative");
    }
    return spec;
}

BenchSpec bench_from_json(const json& j, const std::filesystem::path& base_dir) {
    require_object(j, "bench config", {"signal", "noise", "methods", "trials", "sigma", "delta", "profile", "external"});
    BenchSpec spec;
    if (j.contains("signal")) spec.signal = signal_from_json(j["signal"]);
    if (j.contains("noise")) spec.noise = noise_from_json(j["noise"]);
    std::vector<std::string> methods = {"db8", "haar", "avg", "ma16"};
    read_field(j, "methods", methods);
    if (methods.empty()) throw Error(ErrorCode::InvalidConfig, "at least one method is required");
    for (const auto& name : methods) spec.methods.push_back(parse_method(name));
    read_field(j, "trials", spec.trials);
    if (spec.trials == 0) throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
    const auto sigma = read_string(j, "sigma", "known");
    if (sigma == "known") {
        spec.sigma_mode = SigmaMode::Known;
    } else if (sigma == "unknown") {
        spec.sigma_mode = SigmaMode::Unknown;
    } else {
        throw Error(ErrorCode::InvalidConfig, "sigma must be 'known' or 'unknown'");
    }
    read_field(j, "delta", spec.delta);
    if (!(spec.delta > 0.0 && spec.delta < 1.0)) throw Error(ErrorCode::InvalidConfig, "delta must lie in (0, 1)");
    spec.profile = read_profile(j, spec.profile);
    if (j.contains("external")) {
        if (!j["external"].is_array()) throw Error(ErrorCode::InvalidConfig, "external must be an array");
        for (const auto& entry : j["external"]) {
            require_object(entry, "external method", {"name", "noise_level", "files"});
            ExternalMethod ext;
            ext.name = read_string(entry, "name", "");
            if (ext.name.empty()) throw Error(ErrorCode::InvalidConfig, "external method needs a name");
            read_field(entry, "noise_level", ext.noise_level);
            std::vector<std::string> files;
            read_field(entry, "files", files);
            for (const auto& file : files) {
                auto estimates = read_estimates(base_dir / file);
                if (estimates.size() != spec.signal.n_points) {
                    throw Error(ErrorCode::LengthMismatch, "'" + file + "' has " + std::to_string(estimates.size()) +
                                                               " estimates, expected " +
                                                               std::to_string(spec.signal.n_points));
                }
                ext.trial_estimates.push_back(std::move(estimates));
            }
            spec.external.push_back(std::move(ext));
        }
    }
    return spec;
}

TvStudySpec tv_study_from_json(const json& j) {
    require_object(j, "tvscale config",
                   {"radius", "sigma", "n_grid", "trials", "estimator", "delta", "level", "profile"});
    TvStudySpec spec;
    read_field(j, "radius", spec.radius);
    read_field(j, "sigma", spec.sigma);
    read_field(j, "n_grid", spec.n_grid);
    read_field(j, "trials", spec.trials);
    spec.estimator = parse_method(read_string(j, "estimator", "haar"));
    read_field(j, "delta", spec.delta);
    read_field(j, "level", spec.level);
    spec.profile = read_profile(j, spec.profile);
    spec.validate();
    return spec;
}

BoundsSpec bounds_from_json(const json& j) {
    require_object(j, "bounds config", {"signal", "noise", "families", "delta", "profile"});
    BoundsSpec spec;
    if (j.contains("signal")) spec.signal = signal_from_json(j["signal"]);
    if (j.contains("noise")) spec.noise = noise_from_json(j["noise"]);
    if (j.contains("families")) spec.families = read_families(j);
    if (spec.families.empty()) throw Error(ErrorCode::InvalidConfig, "at least one family is required");
    read_field(j, "delta", spec.delta);
    if (!(spec.delta > 0.0 && spec.delta < 1.0)) throw Error(ErrorCode::InvalidConfig, "delta must lie in (0, 1)");
    spec.profile = read_profile(j, spec.profile);
    return spec;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidConfig, "'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

}  // namespace driftwave
