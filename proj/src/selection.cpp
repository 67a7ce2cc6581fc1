#include "driftwave/selection.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>

#include "driftwave/error.hpp"
#include "driftwave/io.hpp"

namespace driftwave {

SelectionResult select(std::span<const LossSeries> panel, const SelectOptions& opts) {
    if (panel.empty()) throw Error(ErrorCode::EmptyPanel, "no candidate models");
    const std::size_t length = panel.front().losses.size();
    for (const auto& series : panel) {
        if (series.losses.size() != length) {
            throw Error(ErrorCode::RaggedPanel, "series '" + series.id + "' has a different length");
        }
    }
    opts.denoise.validate();

    SelectionResult result;
    result.options = opts;
    for (const auto& series : panel) {
        double value = estimate_latest(series.losses, opts.denoise).value;
        if (opts.clamp) {
            const auto [lo, hi] = std::minmax_element(series.losses.begin(), series.losses.end());
            value = std::clamp(value, *lo, *hi);
        }
        result.scores.push_back({series.id, value, series.losses.back()});
    }
    const auto best = std::min_element(result.scores.begin(), result.scores.end(),
                                       [](const ModelScore& a, const ModelScore& b) {
                                           if (a.denoised != b.denoised) return a.denoised < b.denoised;
                                           return a.id < b.id;
                                       });
    result.chosen = best->id;
    return result;
}

std::vector<LossSeries> ingest_panel(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<LossSeries> panel;
    bool have_header = false;
    std::optional<double> previous_t;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        const auto fields = split_csv_line(line);
        if (!have_header) {
            if (fields.size() < 2) throw Error(ErrorCode::ParseError, "header needs 't' and at least one model", line_no);
            std::set<std::string> seen;
            for (std::size_t i = 1; i < fields.size(); ++i) {
                if (fields[i].empty() || !seen.insert(fields[i]).second) {
                    throw Error(ErrorCode::ParseError, "model ids must be non-empty and unique", line_no);
                }
                panel.push_back({fields[i], {}});
            }
            have_header = true;
            continue;
        }
        if (fields.size() != panel.size() + 1) {
            throw Error(ErrorCode::RaggedPanel, "expected " + std::to_string(panel.size() + 1) + " cells", line_no);
        }
        const auto t = parse_number(fields[0]);
        if (!t) throw Error(ErrorCode::ParseError, "cannot parse time '" + fields[0] + "'", line_no);
        if (previous_t && !(*t > *previous_t)) {
            throw Error(ErrorCode::ParseError, "time column must be strictly ascending", line_no);
        }
        previous_t = t;
        for (std::size_t i = 1; i < fields.size(); ++i) {
            if (fields[i].empty()) throw Error(ErrorCode::RaggedPanel, "missing cell", line_no);
            const auto v = parse_number(fields[i]);
            if (!v) throw Error(ErrorCode::ParseError, "cannot parse '" + fields[i] + "'", line_no);
            if (!std::isfinite(*v)) throw Error(ErrorCode::NonFiniteValue, "non-finite loss", line_no);
            panel[i - 1].losses.push_back(*v);
        }
    }
    if (!have_header) throw Error(ErrorCode::EmptyPanel, "panel file is empty");
    return panel;
}

std::vector<LossSeries> ingest_panel(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
    return ingest_panel(in);
}

nlohmann::ordered_json to_json(const SelectionResult& result) {
    nlohmann::ordered_json out;
    out["chosen"] = result.chosen;
    nlohmann::ordered_json scores = nlohmann::ordered_json::object();
    for (const auto& s : result.scores) {
        scores[s.id] = {{"denoised", s.denoised}, {"raw", s.raw}};
    }
    out["scores"] = std::move(scores);
    const auto& cfg = result.options.denoise;
    nlohmann::ordered_json config;
    config["family"] = std::string(wavelet_family(cfg.family).name);
    if (cfg.sigma) {
        config["sigma"] = *cfg.sigma;
    } else {
        config["sigma"] = "mad";
    }
    config["delta"] = cfg.delta;
    if (cfg.lambda_override) {
        config["lambda"] = *cfg.lambda_override;
    } else {
        config["lambda"] = "default";
    }
    config["clamp"] = result.options.clamp;
    out["config"] = std::move(config);
    return out;
}

}  // namespace driftwave
