#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "driftwave/denoiser.hpp"

namespace driftwave {

struct LossSeries {
    std::string id;
    std::vector<double> losses;  // oldest to newest
};

struct ModelScore {
    std::string id;
    double denoised = 0.0;
    double raw = 0.0;
};

struct SelectOptions {
    DenoiseConfig denoise;  // sigma defaults to MAD estimation
    // Clamp each denoised estimate to the observed range of its own series.
    bool clamp = false;
};

struct SelectionResult {
    std::string chosen;
    std::vector<ModelScore> scores;  // panel order
    SelectOptions options;
};

// Denoise each candidate's loss series, read the estimate at the newest
// period and pick the smallest. Ties go to the lexicographically smallest id.
SelectionResult select(std::span<const LossSeries> panel, const SelectOptions& opts = {});

// CSV with header "t,<id1>,<id2>,..." and one row per period in ascending t.
std::vector<LossSeries> ingest_panel(std::istream& in);
std::vector<LossSeries> ingest_panel(const std::filesystem::path& path);

// {chosen, scores: {id: {denoised, raw}}, config}
nlohmann::ordered_json to_json(const SelectionResult& result);

}  // namespace driftwave
