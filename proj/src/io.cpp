#include "driftwave/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "driftwave/error.hpp"

namespace driftwave {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
    return in;
}

double finite_or_throw(double v, std::size_t line) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, "non-finite value", line);
    return v;
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::optional<double> parse_number(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::vector<double> read_series(std::istream& in) {
    std::vector<double> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto content = trim(line);
        if (content.empty()) continue;
        const auto fields = split_csv_line(content);
        if (fields.size() > 2) throw Error(ErrorCode::ParseError, "expected 'value' or 't,value'", line_no);
        const auto value = parse_number(fields.back());
        if (!value) {
            if (line_no == 1) continue;  // header
            throw Error(ErrorCode::ParseError, "cannot parse '" + fields.back() + "'", line_no);
        }
        out.push_back(finite_or_throw(*value, line_no));
    }
    return out;
}

std::vector<double> read_series(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_series(in);
}

std::vector<double> read_estimates(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::vector<double> out;
    std::string line;
    std::size_t line_no = 0;
    std::optional<double> previous_time;
    while (std::getline(in, line)) {
        ++line_no;
        const auto content = trim(line);
        if (content.empty()) continue;
        const auto fields = split_csv_line(content);
        if (fields.size() != 2) throw Error(ErrorCode::ParseError, "expected 'time,estimate'", line_no);
        const auto time = parse_number(fields[0]);
        const auto value = parse_number(fields[1]);
        if (!time || !value) {
            if (line_no == 1) continue;
            throw Error(ErrorCode::ParseError, "cannot parse estimate row", line_no);
        }
        if (previous_time && !(*time > *previous_time)) {
            throw Error(ErrorCode::ParseError, "time column must be strictly increasing", line_no);
        }
        previous_time = time;
        out.push_back(finite_or_throw(*value, line_no));
    }
    return out;
}

}  // namespace driftwave
