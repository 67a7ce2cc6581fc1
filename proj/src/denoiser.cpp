#include "driftwave/denoiser.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "driftwave/error.hpp"

namespace driftwave {

void DenoiseConfig::validate() const {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "delta must lie in (0, 1), got " + std::to_string(delta));
    }
    if (sigma && !(std::isfinite(*sigma) && *sigma >= 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "sigma must be a finite nonnegative number");
    }
    if (lambda_override && !(std::isfinite(*lambda_override) && *lambda_override >= 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "lambda must be a finite nonnegative number");
    }
}

DenoiseConfig DenoiseConfig::experiment_profile(Family family) {
    DenoiseConfig cfg;
    cfg.family = family;
    cfg.boundary = Boundary::Symmetric;
    cfg.coarse_level = 4;
    cfg.threshold_approximation = false;
    return cfg;
}

unsigned DenoiseConfig::depth_for(std::size_t n) const {
    const unsigned full = floor_log2(n);
    if (!coarse_level || full <= *coarse_level) return coarse_level ? 1U : full;
    return full - *coarse_level;
}

std::string_view to_string(Boundary boundary) {
    return boundary == Boundary::Periodized ? "periodized" : "symmetric";
}

std::optional<Boundary> parse_boundary(std::string_view name) {
    if (name == "periodized" || name == "periodic") return Boundary::Periodized;
    if (name == "symmetric") return Boundary::Symmetric;
    return std::nullopt;
}

double soft_threshold(double x, double lambda) {
    const double magnitude = std::abs(x) - lambda;
    if (magnitude <= 0.0) return 0.0;
    return std::copysign(magnitude, x);
}

double default_lambda(double sigma, double delta, std::size_t n) {
    if (sigma == 0.0) return 0.0;
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorCode::DomainError, "sigma must be finite and nonnegative");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw Error(ErrorCode::DomainError, "delta must lie in (0, 1)");
    }
    const double ratio = std::log(static_cast<double>(n)) / delta;
    if (!(ratio > 1.0)) {
        throw Error(ErrorCode::DomainError, "ln(n)/delta must exceed 1 (n = " + std::to_string(n) + ")");
    }
    return 2.0 * sigma * std::sqrt(2.0 * std::log(ratio));
}

std::span<const double> dyadic_tail(std::span<const double> y) {
    if (y.empty()) return y;
    const std::size_t n_used = std::size_t{1} << floor_log2(y.size());
    return y.last(n_used);
}

namespace {

struct Thresholded {
    CoefficientVector coeffs;
    double lambda = 0.0;
    double sigma = 0.0;
};

void require_finite(std::span<const double> window) {
    for (double v : window) {
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, "observations must be finite");
    }
}

double resolve_lambda(const DenoiseConfig& cfg, double sigma, std::size_t n) {
    return cfg.lambda_override ? *cfg.lambda_override : default_lambda(sigma, cfg.delta, n);
}

Thresholded threshold_window(const PeriodicDwt& dwt, std::span<const double> window, const DenoiseConfig& cfg) {
    require_finite(window);
    Thresholded out{dwt.analyze(window)};
    out.sigma = cfg.sigma ? *cfg.sigma : mad_sigma(out.coeffs);
    out.lambda = resolve_lambda(cfg, out.sigma, window.size());
    auto& values = out.coeffs.mutable_values();
    const std::size_t first = cfg.threshold_approximation ? 0 : out.coeffs.approximation_count();
    for (std::size_t i = first; i < values.size(); ++i) values[i] = soft_threshold(values[i], out.lambda);
    return out;
}

struct SymmetricResult {
    std::vector<double> values;
    double lambda = 0.0;
    double sigma = 0.0;
};

SymmetricResult denoise_symmetric(std::span<const double> window, const DenoiseConfig& cfg) {
    require_finite(window);
    const SymmetricDwt dwt(cfg.family, cfg.depth_for(window.size()));
    auto bands = dwt.analyze(window);
    SymmetricResult out;
    out.sigma = cfg.sigma ? *cfg.sigma : mad_sigma(bands.details.back());
    out.lambda = resolve_lambda(cfg, out.sigma, window.size());
    if (cfg.threshold_approximation) {
        for (double& c : bands.approximation) c = soft_threshold(c, out.lambda);
    }
    for (auto& band : bands.details) {
        for (double& c : band) c = soft_threshold(c, out.lambda);
    }
    out.values = dwt.synthesize(bands);
    return out;
}

PeriodicDwt periodic_for(const DenoiseConfig& cfg, std::size_t n) {
    return PeriodicDwt(cfg.family, n, cfg.depth_for(n));
}

std::span<const double> checked_window(std::span<const double> y, const DenoiseConfig& cfg) {
    cfg.validate();
    if (y.size() < 2) {
        throw Error(ErrorCode::TooShort, "need at least 2 observations, got " + std::to_string(y.size()));
    }
    return dyadic_tail(y);
}

}  // namespace

Estimate estimate_latest(std::span<const double> y, const DenoiseConfig& cfg) {
    const auto window = checked_window(y, cfg);
    if (cfg.boundary == Boundary::Symmetric) {
        const auto res = denoise_symmetric(window, cfg);
        return {res.lambda == 0.0 ? window.back() : res.values.back(), res.lambda, res.sigma, window.size()};
    }
    const auto dwt = periodic_for(cfg, window.size());
    const auto th = threshold_window(dwt, window, cfg);
    // Only the last row of W^T is needed to read off the newest sample.
    const auto column = dwt.last_column();
    const auto values = th.coeffs.values();
    double value = 0.0;
    for (std::size_t i = 0; i < column.size(); ++i) value += column[i] * values[i];
    // A zero threshold leaves every coefficient alone; return the exact sample
    // rather than its round trip through the transform.
    if (th.lambda == 0.0) value = window.back();
    return {value, th.lambda, th.sigma, window.size()};
}

DenoisedSignal denoise_signal(std::span<const double> y, const DenoiseConfig& cfg) {
    const auto window = checked_window(y, cfg);
    if (cfg.boundary == Boundary::Symmetric) {
        auto res = denoise_symmetric(window, cfg);
        if (res.lambda == 0.0) res.values.assign(window.begin(), window.end());
        return {std::move(res.values), res.lambda, res.sigma, window.size()};
    }
    const auto dwt = periodic_for(cfg, window.size());
    const auto th = threshold_window(dwt, window, cfg);
    if (th.lambda == 0.0) return {{window.begin(), window.end()}, th.lambda, th.sigma, window.size()};
    return {dwt.synthesize(th.coeffs), th.lambda, th.sigma, window.size()};
}

double mad_sigma(const CoefficientVector& coeffs) { return mad_sigma(finest_level_coeffs(coeffs)); }

double mad_sigma(std::span<const double> finest) {
    if (finest.empty()) throw Error(ErrorCode::TooShort, "MAD needs at least one detail coefficient");
    std::vector<double> mags(finest.size());
    std::transform(finest.begin(), finest.end(), mags.begin(), [](double v) { return std::abs(v); });
    const std::size_t mid = mags.size() / 2;
    std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mid), mags.end());
    double median = mags[mid];
    if (mags.size() % 2 == 0) {
        const double lower = *std::max_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mid));
        median = 0.5 * (lower + median);
    }
    return median / kMadConsistency;
}

double lemma1_bound(const CoefficientVector& beta_true, std::span<const SupportEntry> support, double lambda) {
    double total = 0.0;
    for (const auto& entry : support) {
        if (entry.row >= beta_true.size()) {
            throw Error(ErrorCode::LengthMismatch, "support row outside coefficient vector");
        }
        total += 6.0 * entry.weight * std::min(std::abs(beta_true[entry.row]), lambda);
    }
    return total;
}

double lemma1_bound(std::span<const double> theta, const DenoiseConfig& cfg, double lambda) {
    const std::size_t n = theta.size();
    if (n < 2) throw Error(ErrorCode::TooShort, "bound needs at least 2 samples");
    auto term = [lambda](double weight, double beta, bool thresholded) {
        weight = std::abs(weight);
        if (weight <= kSupportThreshold) return 0.0;
        return thresholded ? 6.0 * weight * std::min(std::abs(beta), lambda) : 0.5 * weight * lambda;
    };
    double total = 0.0;
    if (cfg.boundary == Boundary::Symmetric) {
        const SymmetricDwt dwt(cfg.family, cfg.depth_for(n));
        const auto beta = dwt.analyze(theta);
        const auto weights = dwt.newest_sample_weights(n);
        for (std::size_t i = 0; i < beta.approximation.size(); ++i) {
            total += term(weights.approximation[i], beta.approximation[i], cfg.threshold_approximation);
        }
        for (std::size_t level = 0; level < beta.details.size(); ++level) {
            for (std::size_t i = 0; i < beta.details[level].size(); ++i) {
                total += term(weights.details[level][i], beta.details[level][i], true);
            }
        }
        return total;
    }
    const PeriodicDwt dwt(cfg.family, n, cfg.depth_for(n));
    const auto beta = dwt.analyze(theta);
    const auto column = dwt.last_column();
    for (std::size_t i = 0; i < n; ++i) {
        total += term(column[i], beta[i], cfg.threshold_approximation || !beta.is_approximation(i));
    }
    return total;
}

double kappa(std::size_t n, double delta) {
    const double ratio = std::log(static_cast<double>(n)) / delta;
    const double log_term = ratio > 1.0 ? std::log(ratio) : 0.0;
    const double lead = std::max(4.0 * std::sqrt(2.0 * log_term), 2.0 * std::sqrt(2.0));
    return lead * (std::log2(static_cast<double>(n)) + 1.0);
}

namespace {

void require_dyadic(std::span<const double> theta) {
    if (theta.empty() || !is_power_of_two(theta.size())) {
        throw Error(ErrorCode::NonDyadicLength, "ground truth length " + std::to_string(theta.size()) +
                                                    " is not a power of two");
    }
}

// Running maximum over dyadic windows: entry j covers t in {1, 2, ..., 2^j}.
template <typename WindowTerm>
std::vector<double> dyadic_running_max(std::size_t n, WindowTerm term) {
    std::vector<double> out;
    double running = 0.0;
    for (std::size_t t = 1; t <= n; t *= 2) {
        running = std::max(running, term(t));
        out.push_back(running);
    }
    return out;
}

std::vector<double> profile_from(const std::vector<double>& dyadic_max, std::size_t n, double sigma) {
    std::vector<double> u(n);
    for (std::size_t r = 1; r <= n; ++r) {
        u[r - 1] = std::max(dyadic_max[floor_log2(r)], sigma / std::sqrt(static_cast<double>(r)));
    }
    return u;
}

VariationalBound minimise(const std::vector<double>& profile, std::size_t n, double delta) {
    VariationalBound out;
    out.u_star = profile[0];
    out.r_star = 1;
    for (std::size_t r = 2; r <= n; ++r) {
        if (profile[r - 1] < out.u_star) {
            out.u_star = profile[r - 1];
            out.r_star = r;
        }
    }
    out.kappa = kappa(n, delta);
    out.bound = out.kappa * out.u_star;
    return out;
}

}  // namespace

std::vector<double> haar_variational_profile(std::span<const double> theta, double sigma) {
    require_dyadic(theta);
    const std::size_t n = theta.size();
    const double latest = theta.back();
    // suffix sums of the t newest values
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t t = 1; t <= n; ++t) suffix[t] = suffix[t - 1] + theta[n - t];
    const auto bias = dyadic_running_max(n, [&](std::size_t t) {
        return std::abs(suffix[t] / static_cast<double>(t) - latest);
    });
    return profile_from(bias, n, sigma);
}

std::vector<double> tv_variational_profile(std::span<const double> theta, double sigma, TvVariant variant) {
    require_dyadic(theta);
    const std::size_t n = theta.size();
    const double latest = theta.back();
    // tv[t] = total variation of the t newest values
    std::vector<double> tv(n + 1, 0.0);
    for (std::size_t t = 2; t <= n; ++t) tv[t] = tv[t - 1] + std::abs(theta[n - t + 1] - theta[n - t]);
    const auto spread = dyadic_running_max(n, [&](std::size_t t) {
        return variant == TvVariant::MaxTotalVariation ? tv[t] : std::abs(tv[t] - latest);
    });
    return profile_from(spread, n, sigma);
}

VariationalBound haar_variational_bound(std::span<const double> theta, double sigma, double delta) {
    const auto profile = haar_variational_profile(theta, sigma);
    return minimise(profile, theta.size(), delta);
}

VariationalBound tv_variational_bound(std::span<const double> theta, double sigma, double delta,
                                      TvVariant variant) {
    const auto profile = tv_variational_profile(theta, sigma, variant);
    return minimise(profile, theta.size(), delta);
}

BoundReport compute_bounds(std::span<const double> theta, Family family, double sigma, double delta,
                           TvVariant variant) {
    require_dyadic(theta);
    const PeriodicDwt dwt(family, theta.size());
    const auto beta = dwt.analyze(theta);
    const auto support = last_column_support(dwt.last_column());
    BoundReport report;
    report.lambda = default_lambda(sigma, delta, theta.size());
    report.lemma1 = lemma1_bound(beta, support, report.lambda);
    const auto haar = haar_variational_bound(theta, sigma, delta);
    report.haar_variational = haar.bound;
    report.r_star = haar.r_star;
    report.kappa = haar.kappa;
    const auto tv = tv_variational_bound(theta, sigma, delta, variant);
    report.tv_variational = tv.bound;
    report.tv_r_star = tv.r_star;
    return report;
}

}  // namespace driftwave
