#include "driftwave/wavelet.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <string>

#include "driftwave/error.hpp"

namespace driftwave {

namespace {

// Minimum-phase Daubechies low-pass synthesis taps.
constexpr std::array<double, 2> kDb1 = {0.7071067811865476, 0.7071067811865476};
constexpr std::array<double, 4> kDb2 = {0.48296291314453416, 0.8365163037378079,
                                        0.2241438680420134, -0.12940952255126037};
constexpr std::array<double, 6> kDb3 = {0.33267055295008263,  0.8068915093110925,
                                        0.45987750211849154,  -0.13501102001025458,
                                        -0.08544127388202666, 0.03522629188570953};
constexpr std::array<double, 8> kDb4 = {0.2303778133088965,    0.7148465705529157,
                                        0.6308807679298589,    -0.027983769416859854,
                                        -0.18703481171909309,  0.030841381835560764,
                                        0.0328830116668852,    -0.010597401785069032};
constexpr std::array<double, 10> kDb5 = {
    0.16010239797419293,   0.6038292697971896,    0.7243085284377729,   0.13842814590132074,
    -0.24229488706638203,  -0.032244869584638375, 0.07757149384004572,  -0.006241490212798274,
    -0.012580751999081999, 0.0033357252854737712};
constexpr std::array<double, 12> kDb6 = {
    0.11154074335010947,  0.49462389039845306, 0.7511339080210954,    0.31525035170919763,
    -0.22626469396543983, -0.12976686756726194, 0.09750160558732304,  0.027522865530305727,
    -0.03158203931748603, 0.0005538422011614961, 0.004777257510945511, -0.0010773010853084796};
constexpr std::array<double, 14> kDb7 = {
    0.07785205408500918,   0.3965393194819173,    0.7291320908462351,
    0.4697822874051931,    -0.14390600392856498,  -0.22403618499387498,
    0.07130921926683026,   0.08061260915108308,   -0.03802993693501441,
    -0.01657454163066688,  0.01255099855609984,   0.0004295779729213665,
    -0.0018016407040474908, 0.00035371379997452024};
constexpr std::array<double, 16> kDb8 = {
    0.05441584224310401,    0.31287159091429995,   0.6756307362972898,
    0.5853546836542067,     -0.015829105256349306, -0.2840155429615469,
    0.0004724845739132828,  0.12874742662047847,   -0.017369301001807547,
    -0.044088253930794755,  0.013981027917398282,  0.008746094047405777,
    -0.004870352993451574,  -0.00039174037337694705, 0.0006754494064505693,
    -0.00011747678412476953};

const std::array<WaveletFamily, 8> kFamilies = {{
    {Family::Haar, "haar", 1, kDb1},
    {Family::DB2, "db2", 2, kDb2},
    {Family::DB3, "db3", 3, kDb3},
    {Family::DB4, "db4", 4, kDb4},
    {Family::DB5, "db5", 5, kDb5},
    {Family::DB6, "db6", 6, kDb6},
    {Family::DB7, "db7", 7, kDb7},
    {Family::DB8, "db8", 8, kDb8},
}};

// Levels shorter than the filter fold its taps around the circle, which
// keeps every level orthonormal, so any power of two works.
void check_length(std::size_t n) {
    if (n < 2 || !is_power_of_two(n)) {
        throw Error(ErrorCode::NonPowerOfTwo, "signal length " + std::to_string(n) + " is not a power of two >= 2");
    }
}

}  // namespace

const WaveletFamily& wavelet_family(Family id) { return kFamilies[static_cast<std::size_t>(id)]; }

std::optional<Family> parse_family(std::string_view name) {
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "db1") return Family::Haar;
    for (const auto& fam : kFamilies) {
        if (fam.name == lower) return fam.id;
    }
    return std::nullopt;
}

bool is_power_of_two(std::size_t n) { return std::has_single_bit(n); }

unsigned floor_log2(std::size_t n) { return static_cast<unsigned>(std::bit_width(n)) - 1U; }

CoefficientAddress coefficient_address(std::size_t index) {
    if (index == 0) return {true, 0, 0};
    const unsigned j = floor_log2(index);
    return {false, j, index - (std::size_t{1} << j)};
}

std::size_t coefficient_index(unsigned level, std::size_t position) {
    return (std::size_t{1} << level) + position;
}

CoefficientVector::CoefficientVector(std::vector<double> values, std::size_t approximation_count)
    : values_(std::move(values)), approximation_count_(approximation_count) {
    if (values_.empty() || !is_power_of_two(values_.size())) {
        throw Error(ErrorCode::NonPowerOfTwo, "coefficient vector length must be a power of two");
    }
    if (approximation_count_ < 1 || approximation_count_ > values_.size() || !is_power_of_two(approximation_count_)) {
        throw Error(ErrorCode::LengthMismatch, "approximation count must be a power of two within the vector");
    }
    levels_ = floor_log2(values_.size());
}

double CoefficientVector::detail(unsigned level, std::size_t position) const {
    return values_.at(coefficient_index(level, position));
}

std::span<const double> CoefficientVector::level(unsigned level) const {
    if (level >= levels_ || (std::size_t{1} << level) < approximation_count_) throw Error(ErrorCode::LengthMismatch, "level out of range");
    const std::size_t begin = std::size_t{1} << level;
    return std::span<const double>(values_).subspan(begin, begin);
}

TransformMatrix::TransformMatrix(Family family, std::size_t n, std::vector<double> entries)
    : family_(family), n_(n), entries_(std::move(entries)) {
    if (entries_.size() != n * n) throw Error(ErrorCode::LengthMismatch, "matrix entries do not form n x n");
}

PeriodicDwt::PeriodicDwt(Family family, std::size_t n, std::optional<unsigned> depth)
    : family_(&wavelet_family(family)), n_(n) {
    check_length(n);
    const unsigned full = floor_log2(n);
    depth_ = depth ? *depth : full;
    if (depth_ < 1 || depth_ > full) {
        throw Error(ErrorCode::InvalidConfig, "depth must lie in [1, " + std::to_string(full) + "]");
    }
    const auto h = family_->filter;
    const std::size_t len = h.size();
    highpass_.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        highpass_[i] = (i % 2 == 0 ? 1.0 : -1.0) * h[len - 1 - i];
    }
}

CoefficientVector PeriodicDwt::analyze(std::span<const double> signal) const {
    if (signal.size() != n_) {
        throw Error(ErrorCode::LengthMismatch,
                    "expected " + std::to_string(n_) + " samples, got " + std::to_string(signal.size()));
    }
    const auto h = family_->filter;
    const std::size_t len = h.size();
    std::vector<double> out(n_, 0.0);
    std::vector<double> approx(signal.begin(), signal.end());
    std::vector<double> next;
    const std::size_t coarse = n_ >> depth_;
    for (std::size_t m = n_; m > coarse; m /= 2) {
        const std::size_t half = m / 2;
        next.assign(half, 0.0);
        for (std::size_t k = 0; k < half; ++k) {
            double a = 0.0;
            double d = 0.0;
            for (std::size_t i = 0; i < len; ++i) {
                const double x = approx[(2 * k + i) % m];
                a += h[i] * x;
                d += highpass_[i] * x;
            }
            next[k] = a;
            out[half + k] = d;
        }
        approx.swap(next);
    }
    std::copy(approx.begin(), approx.end(), out.begin());
    return CoefficientVector(std::move(out), coarse);
}

std::vector<double> PeriodicDwt::synthesize(const CoefficientVector& coeffs) const {
    if (coeffs.size() != n_) {
        throw Error(ErrorCode::LengthMismatch,
                    "expected " + std::to_string(n_) + " coefficients, got " + std::to_string(coeffs.size()));
    }
    const auto h = family_->filter;
    const std::size_t len = h.size();
    const std::size_t coarse = n_ >> depth_;
    if (coeffs.approximation_count() != coarse) {
        throw Error(ErrorCode::LengthMismatch, "coefficients come from a different decomposition depth");
    }
    const auto values = coeffs.values();
    std::vector<double> approx(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(coarse));
    std::vector<double> next;
    for (std::size_t m = 2 * coarse; m <= n_; m *= 2) {
        const std::size_t half = m / 2;
        next.assign(m, 0.0);
        for (std::size_t k = 0; k < half; ++k) {
            const double a = approx[k];
            const double d = coeffs[half + k];
            for (std::size_t i = 0; i < len; ++i) {
                next[(2 * k + i) % m] += h[i] * a + highpass_[i] * d;
            }
        }
        approx.swap(next);
    }
    return approx;
}

std::vector<double> PeriodicDwt::last_column() const {
    std::vector<double> unit(n_, 0.0);
    unit.back() = 1.0;
    auto column = analyze(unit);
    return std::move(column.mutable_values());
}

namespace {

// Half-sample symmetric extension: x[-1] = x[0], x[m] = x[m-1], repeated
// with period 2m for indices far outside the signal.
double symmetric_at(std::span<const double> x, std::ptrdiff_t i) {
    const auto m = static_cast<std::ptrdiff_t>(x.size());
    const std::ptrdiff_t period = 2 * m;
    i %= period;
    if (i < 0) i += period;
    return i < m ? x[static_cast<std::size_t>(i)] : x[static_cast<std::size_t>(period - 1 - i)];
}

}  // namespace

SymmetricDwt::SymmetricDwt(Family family, unsigned depth) : family_(&wavelet_family(family)), depth_(depth) {
    if (depth_ < 1) throw Error(ErrorCode::InvalidConfig, "depth must be >= 1");
    const auto h = family_->filter;
    const std::size_t len = h.size();
    highpass_.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        highpass_[i] = (i % 2 == 0 ? 1.0 : -1.0) * h[len - 1 - i];
    }
}

SymmetricDwt::Bands SymmetricDwt::analyze(std::span<const double> signal) const {
    if (signal.empty()) throw Error(ErrorCode::TooShort, "cannot decompose an empty signal");
    const auto h = family_->filter;
    const auto len = static_cast<std::ptrdiff_t>(h.size());
    Bands bands;
    std::vector<double> approx(signal.begin(), signal.end());
    for (unsigned level = 0; level < depth_; ++level) {
        const std::size_t m = approx.size();
        const std::size_t out_len = (m + h.size() - 1) / 2;
        std::vector<double> a(out_len, 0.0);
        std::vector<double> d(out_len, 0.0);
        for (std::size_t k = 0; k < out_len; ++k) {
            // analysis filters are the time-reversed synthesis filters
            for (std::ptrdiff_t j = 0; j < len; ++j) {
                const double x = symmetric_at(approx, 2 * static_cast<std::ptrdiff_t>(k) + 1 - j);
                a[k] += h[static_cast<std::size_t>(len - 1 - j)] * x;
                d[k] += highpass_[static_cast<std::size_t>(len - 1 - j)] * x;
            }
        }
        bands.lengths.insert(bands.lengths.begin(), m);
        bands.details.insert(bands.details.begin(), std::move(d));
        approx = std::move(a);
    }
    bands.approximation = std::move(approx);
    return bands;
}

std::vector<double> SymmetricDwt::synthesize(const Bands& bands) const {
    if (bands.details.size() != bands.lengths.size()) {
        throw Error(ErrorCode::LengthMismatch, "band metadata is inconsistent");
    }
    const auto h = family_->filter;
    const std::size_t len = h.size();
    std::vector<double> approx = bands.approximation;
    for (std::size_t level = 0; level < bands.details.size(); ++level) {
        const auto& d = bands.details[level];
        if (approx.size() == d.size() + 1) approx.pop_back();
        if (approx.size() != d.size()) throw Error(ErrorCode::LengthMismatch, "band lengths do not match");
        const std::size_t bands_len = d.size();
        const std::size_t out_len = 2 * bands_len + 2 - len;
        std::vector<double> next(out_len, 0.0);
        for (std::size_t n = 0; n < out_len; ++n) {
            double acc = 0.0;
            // x[n] = sum_k a[k] h[n + L - 2 - 2k] + d[k] g[n + L - 2 - 2k]
            const std::size_t shift = n + len - 2;
            const std::size_t k_lo = shift >= len - 1 ? (shift - (len - 1) + 1) / 2 : 0;
            for (std::size_t k = k_lo; k < bands_len && 2 * k <= shift; ++k) {
                const std::size_t j = shift - 2 * k;
                acc += h[j] * approx[k] + highpass_[j] * d[k];
            }
            next[n] = acc;
        }
        next.resize(std::min(next.size(), bands.lengths[level]));
        approx = std::move(next);
    }
    return approx;
}

SymmetricDwt::Bands SymmetricDwt::newest_sample_weights(std::size_t n) const {
    if (n == 0) throw Error(ErrorCode::TooShort, "cannot decompose an empty signal");
    const auto h = family_->filter;
    const std::size_t len = h.size();
    Bands weights;
    std::vector<std::size_t> band_sizes;
    for (std::size_t level = 0, m = n; level < depth_; ++level) {
        weights.lengths.insert(weights.lengths.begin(), m);
        m = (m + len - 1) / 2;
        band_sizes.insert(band_sizes.begin(), m);
    }
    weights.details.resize(depth_);
    // Adjoint of synthesize, run fine to coarse from a unit gradient on the
    // newest sample.
    std::vector<double> grad(n, 0.0);
    grad.back() = 1.0;
    for (std::size_t level = depth_; level-- > 0;) {
        const std::size_t bands_len = band_sizes[level];
        std::vector<double> ga(bands_len, 0.0);
        std::vector<double> gd(bands_len, 0.0);
        for (std::size_t k = 0; k < bands_len; ++k) {
            for (std::size_t j = 0; j < len; ++j) {
                // output index n = 2k + j - (L - 2)
                const std::size_t shifted = 2 * k + j;
                if (shifted + 2 < len) continue;
                const std::size_t out = shifted + 2 - len;
                if (out >= grad.size()) continue;
                ga[k] += h[j] * grad[out];
                gd[k] += highpass_[j] * grad[out];
            }
        }
        weights.details[level] = std::move(gd);
        grad = std::move(ga);
    }
    weights.approximation = std::move(grad);
    return weights;
}

TransformMatrix build_matrix(Family family, std::size_t n) {
    const PeriodicDwt dwt(family, n);
    std::vector<double> entries(n * n, 0.0);
    std::vector<double> unit(n, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        unit[col] = 1.0;
        const auto column = dwt.analyze(unit);
        for (std::size_t row = 0; row < n; ++row) entries[row * n + col] = column[row];
        unit[col] = 0.0;
    }
    return TransformMatrix(family, n, std::move(entries));
}

CoefficientVector forward(const TransformMatrix& w, std::span<const double> signal) {
    const std::size_t n = w.size();
    if (signal.size() != n) {
        throw Error(ErrorCode::LengthMismatch,
                    "expected " + std::to_string(n) + " samples, got " + std::to_string(signal.size()));
    }
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = w.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * signal[j];
        out[i] = acc;
    }
    return CoefficientVector(std::move(out));
}

std::vector<double> inverse(const TransformMatrix& w, const CoefficientVector& coeffs) {
    const std::size_t n = w.size();
    if (coeffs.size() != n) {
        throw Error(ErrorCode::LengthMismatch,
                    "expected " + std::to_string(n) + " coefficients, got " + std::to_string(coeffs.size()));
    }
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = coeffs[i];
        if (c == 0.0) continue;
        const auto row = w.row(i);
        for (std::size_t j = 0; j < n; ++j) out[j] += row[j] * c;
    }
    return out;
}

std::vector<SupportEntry> last_column_support(std::span<const double> last_column) {
    std::vector<SupportEntry> support;
    for (std::size_t i = 0; i < last_column.size(); ++i) {
        const double weight = std::abs(last_column[i]);
        if (weight > kSupportThreshold) support.push_back({i, weight});
    }
    return support;
}

std::vector<SupportEntry> last_column_support(const TransformMatrix& w) {
    const std::size_t n = w.size();
    std::vector<double> column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = w(i, n - 1);
    return last_column_support(column);
}

std::span<const double> finest_level_coeffs(const CoefficientVector& coeffs) {
    if (coeffs.levels() == 0) return {};
    return coeffs.level(coeffs.levels() - 1);
}

}  // namespace driftwave
