#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "driftwave/bench.hpp"
#include "driftwave/tv_harness.hpp"

namespace driftwave {

// JSON run descriptions used by the command-line tool. Unknown keys are
// rejected with Error(InvalidConfig) so typos never fall back to defaults.
//
// signal: {"kind": "doppler", "n_points": 500, "amplitude": 3, "doppler_eps": 0.05,
//          "sine_amplitude": 1, "sine_frequency": 4, "tv_radius": 1, "level": 0,
//          "resample_per_trial": true}
// noise:  {"distribution": "uniform" | "gaussian", "levels": [0.2, ...]}
SignalSpec signal_from_json(const nlohmann::json& j);
NoiseSpec noise_from_json(const nlohmann::json& j);

// {"signal": {...}, "noise": {...}, "methods": ["db8", "haar", "avg", "ma16"],
//  "trials": 5, "sigma": "known" | "unknown", "delta": 0.1,
//  "profile": "experiment" | "orthonormal",
//  "external": [{"name": "arw", "noise_level": 0.2, "files": ["arw_t0.csv", ...]}]}
// External file paths are resolved against base_dir.
BenchSpec bench_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

// {"radius": 1, "sigma": 1, "n_grid": [256, 512, 1024, 2048], "trials": 10,
//  "estimator": "haar", "delta": 0.1, "level": 0, "profile": "experiment"}
TvStudySpec tv_study_from_json(const nlohmann::json& j);

struct BoundsSpec {
    SignalSpec signal;
    NoiseSpec noise;
    std::vector<Family> families = {Family::Haar, Family::DB8};
    double delta = 0.1;
    WaveletProfile profile = WaveletProfile::Experiment;
};

// {"signal": {...}, "noise": {...}, "families": ["haar", "db8"], "delta": 0.1,
//  "profile": "experiment"}
BoundsSpec bounds_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace driftwave
