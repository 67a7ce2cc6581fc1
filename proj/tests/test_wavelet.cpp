#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "driftwave/error.hpp"
#include "driftwave/wavelet.hpp"
#include "oracles.hpp"

using namespace driftwave;

namespace {

const std::vector<Family> kAllFamilies = {Family::Haar, Family::DB2, Family::DB3, Family::DB4,
                                          Family::DB5,  Family::DB6, Family::DB7, Family::DB8};

std::vector<double> random_signal(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    std::vector<double> y(n);
    for (auto& v : y) v = dist(rng);
    return y;
}

double norm2(std::span<const double> v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }

oracle::Matrix as_matrix(const TransformMatrix& w) {
    oracle::Matrix m(w.size(), std::vector<double>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) m[i][j] = w(i, j);
    return m;
}

void expect_error(ErrorCode code, auto&& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << to_string(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

}  // namespace

TEST(WaveletFamily, TapsSumToRootTwoAndAreOrthonormalToEvenShifts) {
    for (Family id : kAllFamilies) {
        const auto h = wavelet_family(id).filter;
        EXPECT_EQ(h.size(), 2U * static_cast<std::size_t>(wavelet_family(id).vanishing_moments));
        EXPECT_NEAR(std::accumulate(h.begin(), h.end(), 0.0), std::sqrt(2.0), 1e-10);
        for (std::size_t shift = 0; shift < h.size(); shift += 2) {
            double dot = 0.0;
            for (std::size_t i = 0; i + shift < h.size(); ++i) dot += h[i] * h[i + shift];
            EXPECT_NEAR(dot, shift == 0 ? 1.0 : 0.0, 1e-10) << wavelet_family(id).name << " shift " << shift;
        }
    }
}

TEST(WaveletFamily, ParsesNamesCaseInsensitively) {
    EXPECT_EQ(parse_family("HAAR"), Family::Haar);
    EXPECT_EQ(parse_family("db1"), Family::Haar);
    EXPECT_EQ(parse_family("Db8"), Family::DB8);
    EXPECT_FALSE(parse_family("db9").has_value());
    EXPECT_FALSE(parse_family("sym4").has_value());
}

TEST(CoefficientAddressing, RoundTripsDyadicIndices) {
    EXPECT_EQ(coefficient_address(0), (CoefficientAddress{true, 0, 0}));
    EXPECT_EQ(coefficient_address(1), (CoefficientAddress{false, 0, 0}));
    EXPECT_EQ(coefficient_address(5), (CoefficientAddress{false, 2, 1}));
    for (std::size_t i = 1; i < 1024; ++i) {
        const auto a = coefficient_address(i);
        EXPECT_EQ(coefficient_index(a.level, a.position), i);
        EXPECT_LT(a.position, std::size_t{1} << a.level);
    }
}

TEST(BuildMatrix, HaarEightMatchesHandLayout) {
    const double a = 1.0 / std::sqrt(8.0), b = 0.5, c = 1.0 / std::sqrt(2.0);
    const oracle::Matrix expected = {
        {a, a, a, a, a, a, a, a},       {a, a, a, a, -a, -a, -a, -a},   {b, b, -b, -b, 0, 0, 0, 0},
        {0, 0, 0, 0, b, b, -b, -b},     {c, -c, 0, 0, 0, 0, 0, 0},      {0, 0, c, -c, 0, 0, 0, 0},
        {0, 0, 0, 0, c, -c, 0, 0},      {0, 0, 0, 0, 0, 0, c, -c},
    };
    const auto w = build_matrix(Family::Haar, 8);
    EXPECT_LE(oracle::max_abs_diff(as_matrix(w), expected), 1e-15);
}

TEST(BuildMatrix, HaarTwoIsTheButterfly) {
    const auto w = build_matrix(Family::Haar, 2);
    const double c = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(w(0, 0), c, 1e-15);
    EXPECT_NEAR(w(0, 1), c, 1e-15);
    EXPECT_NEAR(w(1, 0), c, 1e-15);
    EXPECT_NEAR(w(1, 1), -c, 1e-15);
}

TEST(BuildMatrix, AgreesWithIndependentCascadeOfOneLevelMatrices) {
    for (Family id : {Family::Haar, Family::DB2, Family::DB4, Family::DB8}) {
        for (std::size_t n : {16U, 64U}) {
            const auto expected = oracle::cascade(wavelet_family(id).filter, n);
            EXPECT_LE(oracle::max_abs_diff(as_matrix(build_matrix(id, n)), expected), 1e-12)
                << wavelet_family(id).name << " n=" << n;
        }
    }
}

TEST(BuildMatrix, OrthonormalForEveryFamilyAndLength) {
    for (Family id : kAllFamilies) {
        for (std::size_t n = 2; n <= 256; n *= 2) {
            const auto w = build_matrix(id, n);
            double worst = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    double dot = 0.0;
                    for (std::size_t k = 0; k < n; ++k) dot += w(i, k) * w(j, k);
                    worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
                }
            }
            EXPECT_LE(worst, 1e-9) << wavelet_family(id).name << " n=" << n;
        }
    }
}

TEST(BuildMatrix, RejectsBadLengths) {
    expect_error(ErrorCode::NonPowerOfTwo, [] { build_matrix(Family::Haar, 12); });
    expect_error(ErrorCode::NonPowerOfTwo, [] { build_matrix(Family::Haar, 1); });
}

TEST(BuildMatrix, FiltersLongerThanTheSignalFoldAroundTheCircle) {
    const auto w = build_matrix(Family::DB8, 8);
    EXPECT_LE(oracle::max_abs_diff(as_matrix(w), oracle::cascade(wavelet_family(Family::DB8).filter, 8)), 1e-12);
    const auto y = std::vector<double>{1, -2, 3, 0.5, 0, 4, -1, 2};
    const auto back = inverse(w, forward(w, y));
    for (std::size_t i = 0; i < y.size(); ++i) EXPECT_NEAR(back[i], y[i], 1e-12);
}

TEST(Transform, ConstantSignalHasOnlyAnApproximationCoefficient) {
    const auto w = build_matrix(Family::Haar, 4);
    const std::vector<double> y(4, 1.5);
    const auto beta = forward(w, y);
    EXPECT_NEAR(beta[0], 3.0, 1e-15);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(beta[i], 0.0, 1e-15);
}

TEST(Transform, HaarTwoOfUnitImpulse) {
    const auto beta = forward(build_matrix(Family::Haar, 2), std::vector<double>{1.0, 0.0});
    EXPECT_NEAR(beta[0], 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(beta[1], 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Transform, InverseOfBasisVectorsAndZero) {
    const auto w = build_matrix(Family::Haar, 4);
    const auto zero = inverse(w, CoefficientVector(std::vector<double>(4, 0.0)));
    for (double v : zero) EXPECT_EQ(v, 0.0);
    const auto atom = inverse(w, CoefficientVector(std::vector<double>{1.0, 0.0, 0.0, 0.0}));
    for (double v : atom) EXPECT_NEAR(v, 0.5, 1e-15);
}

TEST(Transform, RoundTripParsevalAndFastPathAgreement) {
    std::mt19937_64 rng(11);
    for (Family id : kAllFamilies) {
        for (std::size_t n : {16U, 64U, 256U}) {
            const auto w = build_matrix(id, n);
            const PeriodicDwt dwt(id, n);
            for (int trial = 0; trial < 10; ++trial) {
                const auto y = random_signal(n, rng);
                const auto beta = forward(w, y);
                const auto fast = dwt.analyze(y);
                const auto back = inverse(w, beta);
                const auto fast_back = dwt.synthesize(fast);
                EXPECT_NEAR(norm2(beta.values()), norm2(y), 1e-9 * norm2(y));
                for (std::size_t i = 0; i < n; ++i) {
                    EXPECT_NEAR(back[i], y[i], 1e-9);
                    EXPECT_NEAR(fast_back[i], y[i], 1e-9);
                    EXPECT_NEAR(fast[i], beta[i], 1e-12);
                }
            }
        }
    }
}

TEST(Transform, LengthMismatchIsReported) {
    const auto w = build_matrix(Family::Haar, 8);
    expect_error(ErrorCode::LengthMismatch, [&] { forward(w, std::vector<double>(4, 0.0)); });
    expect_error(ErrorCode::LengthMismatch, [&] { inverse(w, CoefficientVector(std::vector<double>(4, 0.0))); });
}

TEST(Transform, DetailRowsAnnihilateConstants) {
    for (Family id : kAllFamilies) {
        const std::size_t n = 64;
        const auto beta = PeriodicDwt(id, n).analyze(std::vector<double>(n, -2.25));
        for (std::size_t i = 1; i < n; ++i) EXPECT_NEAR(beta[i], 0.0, 1e-9) << wavelet_family(id).name;
    }
}

TEST(Transform, InteriorFinestDetailsAnnihilatePolynomialsBelowTheMomentCount) {
    for (Family id : {Family::DB2, Family::DB3, Family::DB4, Family::DB6, Family::DB8}) {
        const std::size_t n = 256;
        const int k = wavelet_family(id).vanishing_moments;
        // scale t to [0, 1] to keep the polynomial well conditioned
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i + 1) / static_cast<double>(n);
            y[i] = std::pow(t - 0.3, k - 1) + 0.5 * t;
        }
        const auto beta = PeriodicDwt(id, n).analyze(y);
        const auto finest = finest_level_coeffs(beta);
        const std::size_t len = wavelet_family(id).filter_length();
        for (std::size_t pos = 0; pos < finest.size(); ++pos) {
            if (2 * pos + len > n) continue;  // circular support wraps
            EXPECT_LE(std::abs(finest[pos]), 1e-6 * norm2(y)) << wavelet_family(id).name << " pos " << pos;
        }
    }
}

TEST(LastColumnSupport, HaarHasLogTwoPlusOneEntries) {
    const auto support = last_column_support(build_matrix(Family::Haar, 8));
    ASSERT_EQ(support.size(), 4U);
    const std::vector<double> expected = {1 / std::sqrt(8.0), 1 / std::sqrt(8.0), 0.5, 1 / std::sqrt(2.0)};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(support[i].weight, expected[i], 1e-15);
    for (std::size_t n = 2; n <= 1024; n *= 2) {
        EXPECT_EQ(last_column_support(build_matrix(Family::Haar, n)).size(), floor_log2(n) + 1) << n;
    }
}

TEST(LastColumnSupport, MatchesExplicitColumnScan) {
    const auto w = build_matrix(Family::DB2, 64);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < 64; ++i) nonzero += std::abs(w(i, 63)) > 1e-12 ? 1 : 0;
    EXPECT_EQ(last_column_support(w).size(), nonzero);
    const auto fast = last_column_support(PeriodicDwt(Family::DB2, 64).last_column());
    ASSERT_EQ(fast.size(), nonzero);
    for (const auto& entry : fast) EXPECT_NEAR(entry.weight, std::abs(w(entry.row, 63)), 1e-12);
}

TEST(FinestLevel, HandComputedCases) {
    const auto w = build_matrix(Family::Haar, 4);
    const auto constant = finest_level_coeffs(forward(w, std::vector<double>(4, 7.0)));
    ASSERT_EQ(constant.size(), 2U);
    EXPECT_NEAR(constant[0], 0.0, 1e-15);
    EXPECT_NEAR(constant[1], 0.0, 1e-15);
    const auto impulse = finest_level_coeffs(forward(w, std::vector<double>{1, 0, 0, 0}));
    EXPECT_NEAR(impulse[0], 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(impulse[1], 0.0, 1e-15);
}

TEST(FinestLevel, GaussianNoiseKeepsUnitVariance) {
    std::mt19937_64 rng(5);
    const auto y = random_signal(1024, rng);
    const auto finest = finest_level_coeffs(PeriodicDwt(Family::DB4, 1024).analyze(y));
    ASSERT_EQ(finest.size(), 512U);
    double ss = 0.0, mean = 0.0;
    for (double v : finest) mean += v / 512.0;
    for (double v : finest) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / 511.0);
    EXPECT_GE(sd, 0.9);
    EXPECT_LE(sd, 1.1);
}

TEST(PartialDepth, StopsAtRequestedLevelAndRoundTrips) {
    std::mt19937_64 rng(3);
    const auto y = random_signal(64, rng);
    const PeriodicDwt dwt(Family::DB2, 64, 2);
    const auto beta = dwt.analyze(y);
    EXPECT_EQ(beta.approximation_count(), 16U);
    EXPECT_TRUE(beta.is_approximation(15));
    EXPECT_FALSE(beta.is_approximation(16));
    // the retained details are exactly the two finest levels of the full cascade
    const auto full = PeriodicDwt(Family::DB2, 64).analyze(y);
    for (std::size_t i = 16; i < 64; ++i) EXPECT_NEAR(beta[i], full[i], 1e-12);
    const auto back = dwt.synthesize(beta);
    for (std::size_t i = 0; i < 64; ++i) EXPECT_NEAR(back[i], y[i], 1e-12);
    expect_error(ErrorCode::InvalidConfig, [] { PeriodicDwt(Family::Haar, 8, 4); });
}

TEST(SymmetricDwt, MatchesReferenceToolkitCoefficients) {
    // Frozen from PyWavelets wavedec(x, 'db4', mode='symmetric', level=3).
    std::vector<double> x(37);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = static_cast<double>(i);
        x[i] = std::sin(0.7 * t) + 0.005 * t * t;
    }
    const auto bands = SymmetricDwt(Family::DB4, 3).analyze(x);
    ASSERT_EQ(bands.approximation.size(), 10U);
    ASSERT_EQ(bands.details.size(), 3U);
    EXPECT_EQ(bands.details[0].size(), 10U);
    EXPECT_EQ(bands.details[1].size(), 14U);
    EXPECT_EQ(bands.details[2].size(), 22U);
    EXPECT_NEAR(bands.approximation[0], 1.3820131632683432, 1e-12);
    EXPECT_NEAR(bands.approximation[2], 1.6478703886898607, 1e-12);
    EXPECT_NEAR(bands.approximation.back(), 17.864093411828172, 1e-12);
    EXPECT_NEAR(bands.details[0][1], 0.2547329873637216, 1e-12);
    EXPECT_NEAR(bands.details[0].back(), 1.2963066134080958, 1e-12);
    EXPECT_NEAR(bands.details[1][0], -0.3103005420658049, 1e-12);
    EXPECT_NEAR(bands.details[1].back(), 0.7886649821886998, 1e-12);
    EXPECT_NEAR(bands.details[2][2], -0.13789350662119154, 1e-12);
    EXPECT_NEAR(bands.details[2].back(), 0.08926005258205275, 1e-12);
}

TEST(SymmetricDwt, PerfectReconstructionForAnyLength) {
    std::mt19937_64 rng(9);
    for (Family id : {Family::Haar, Family::DB2, Family::DB8}) {
        for (std::size_t n : {5U, 37U, 64U, 255U, 256U}) {
            const auto y = random_signal(n, rng);
            const SymmetricDwt dwt(id, 3);
            const auto back = dwt.synthesize(dwt.analyze(y));
            ASSERT_EQ(back.size(), n);
            for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(back[i], y[i], 1e-10) << wavelet_family(id).name;
        }
    }
}

TEST(SymmetricDwt, NewestSampleWeightsMatchUnitResponses) {
    for (Family id : {Family::Haar, Family::DB4, Family::DB8}) {
        for (std::size_t n : {32U, 100U}) {
            const SymmetricDwt dwt(id, 2);
            const auto weights = dwt.newest_sample_weights(n);
            auto unit = dwt.analyze(std::vector<double>(n, 0.0));
            auto response = [&](double& slot) {
                slot = 1.0;
                const double r = dwt.synthesize(unit).back();
                slot = 0.0;
                return r;
            };
            for (std::size_t i = 0; i < unit.approximation.size(); ++i) {
                EXPECT_NEAR(weights.approximation[i], response(unit.approximation[i]), 1e-12);
            }
            for (std::size_t l = 0; l < unit.details.size(); ++l) {
                for (std::size_t i = 0; i < unit.details[l].size(); ++i) {
                    EXPECT_NEAR(weights.details[l][i], response(unit.details[l][i]), 1e-12);
                }
            }
        }
    }
}
