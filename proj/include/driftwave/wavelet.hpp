#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace driftwave {

enum class Family { Haar, DB2, DB3, DB4, DB5, DB6, DB7, DB8 };

// A Daubechies family with its minimum-phase low-pass synthesis taps.
// Haar is DB1. Taps sum to sqrt(2) and are orthonormal to their even shifts.
struct WaveletFamily {
    Family id;
    std::string_view name;
    int vanishing_moments;
    std::span<const double> filter;

    std::size_t filter_length() const { return filter.size(); }
};

const WaveletFamily& wavelet_family(Family id);

// Accepts "haar", "db1".."db8" (case-insensitive).
std::optional<Family> parse_family(std::string_view name);

bool is_power_of_two(std::size_t n);
// floor(log2(n)) for n >= 1.
unsigned floor_log2(std::size_t n);

// Dyadic address of a coefficient. Index 0 is the approximation coefficient;
// detail (level j, position k) lives at index 2^j + k.
struct CoefficientAddress {
    bool approximation = false;
    unsigned level = 0;
    std::size_t position = 0;

    bool operator==(const CoefficientAddress&) const = default;
};

CoefficientAddress coefficient_address(std::size_t index);
std::size_t coefficient_index(unsigned level, std::size_t position);

class CoefficientVector {
public:
    CoefficientVector() = default;
    // approximation_count = 2^j0 when the cascade stopped at level j0; the
    // first approximation_count entries are then scaling coefficients.
    explicit CoefficientVector(std::vector<double> values, std::size_t approximation_count = 1);

    std::size_t size() const { return values_.size(); }
    unsigned levels() const { return levels_; }
    std::size_t approximation_count() const { return approximation_count_; }
    bool is_approximation(std::size_t index) const { return index < approximation_count_; }

    double approximation() const { return values_.at(0); }
    double detail(unsigned level, std::size_t position) const;
    // All 2^level detail coefficients at one level.
    std::span<const double> level(unsigned level) const;

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    std::span<const double> values() const { return values_; }
    std::vector<double>& mutable_values() { return values_; }

private:
    std::vector<double> values_;
    unsigned levels_ = 0;
    std::size_t approximation_count_ = 1;
};

// Explicit n x n orthonormal transform, row-major. Rows are ordered
// approximation first, then details coarse-to-fine.
class TransformMatrix {
public:
    TransformMatrix(Family family, std::size_t n, std::vector<double> entries);

    Family family() const { return family_; }
    std::size_t size() const { return n_; }

    double operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
    std::span<const double> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }
    std::span<const double> entries() const { return entries_; }

    CoefficientAddress address(std::size_t row) const { return coefficient_address(row); }

private:
    Family family_;
    std::size_t n_;
    std::vector<double> entries_;
};

// Periodized (circular) discrete wavelet transform computed by the
// filter-bank cascade in O(n * filter length). Produces exactly W * y for the
// matrix returned by build_matrix.
class PeriodicDwt {
public:
    // depth = number of cascade levels; nullopt decomposes down to a single
    // approximation coefficient (log2 n levels).
    PeriodicDwt(Family family, std::size_t n, std::optional<unsigned> depth = std::nullopt);

    Family family() const { return family_->id; }
    std::size_t size() const { return n_; }
    unsigned depth() const { return depth_; }

    CoefficientVector analyze(std::span<const double> signal) const;
    std::vector<double> synthesize(const CoefficientVector& coeffs) const;

    // Column n of W, i.e. the contribution of every coefficient to the
    // reconstruction of the newest sample.
    std::vector<double> last_column() const;

private:
    const WaveletFamily* family_;
    std::size_t n_;
    unsigned depth_;
    std::vector<double> highpass_;
};

// Multi-level decomposition with half-sample symmetric extension at both
// ends of every level (the "symmetric" mode of common wavelet toolkits).
// Not orthonormal: each level yields floor((m + L - 1) / 2) coefficients
// per band. Works for any signal length >= 1.
class SymmetricDwt {
public:
    SymmetricDwt(Family family, unsigned depth);

    Family family() const { return family_->id; }
    unsigned depth() const { return depth_; }

    struct Bands {
        std::vector<double> approximation;
        std::vector<std::vector<double>> details;  // coarse to fine
        std::vector<std::size_t> lengths;          // signal length entering each level, coarse to fine
    };

    Bands analyze(std::span<const double> signal) const;
    std::vector<double> synthesize(const Bands& bands) const;

    // d(synthesize(bands).back()) / d(coefficient) for every coefficient of
    // an n-sample decomposition, laid out like analyze's output.
    Bands newest_sample_weights(std::size_t n) const;

private:
    const WaveletFamily* family_;
    unsigned depth_;
    std::vector<double> highpass_;
};

TransformMatrix build_matrix(Family family, std::size_t n);

CoefficientVector forward(const TransformMatrix& w, std::span<const double> signal);
std::vector<double> inverse(const TransformMatrix& w, const CoefficientVector& coeffs);

struct SupportEntry {
    std::size_t row;
    double weight;  // |W_{row, n}|
};

inline constexpr double kSupportThreshold = 1e-12;

std::vector<SupportEntry> last_column_support(const TransformMatrix& w);
std::vector<SupportEntry> last_column_support(std::span<const double> last_column);

std::span<const double> finest_level_coeffs(const CoefficientVector& coeffs);

}  // namespace driftwave
