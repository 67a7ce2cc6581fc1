#include "driftwave/tv_harness.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "driftwave/error.hpp"
#include "parallel.hpp"
#include "stats.hpp"

namespace driftwave {

double risk(std::span<const double> estimate, std::span<const double> truth, RiskKind kind) {
    if (estimate.size() != truth.size()) throw Error(ErrorCode::LengthMismatch, "estimate and truth lengths differ");
    double total = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double e = estimate[i] - truth[i];
        total += kind == RiskKind::Squared ? e * e : std::abs(e);
    }
    return total;
}

void TvStudySpec::validate() const {
    if (!(radius >= 0.0)) throw Error(ErrorCode::InvalidConfig, "TV radius must be nonnegative");
    if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidConfig, "sigma must be nonnegative");
    if (trials == 0) throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
    if (n_grid.empty()) throw Error(ErrorCode::InvalidConfig, "n grid is empty");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 2 || !is_power_of_two(n_grid[i])) {
            throw Error(ErrorCode::InvalidConfig, "n grid entries must be powers of two >= 2");
        }
        if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
            throw Error(ErrorCode::InvalidConfig, "n grid must be strictly increasing");
        }
    }
    if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidConfig, "delta must lie in (0, 1)");
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    if (x.size() != y.size() || x.size() < 2) return {nan, nan};
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) return {nan, nan};
        sx += std::log(x[i]);
        sy += std::log(y[i]);
    }
    const double k = static_cast<double>(x.size());
    const double mx = sx / k, my = sy / k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[i]) - my);
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

std::string ScalingFit::to_csv() const {
    std::string out = "n,mean_R_sq,std_R_sq,mean_R_abs,std_R_abs,exponent_sq,exponent_abs\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{}\n", r.n, r.mean_sq, r.std_sq, r.mean_abs, r.std_abs, sq.slope,
                           abs.slope);
    }
    return out;
}

ScalingFit run_tv_study(const TvStudySpec& spec, std::uint64_t base_seed, std::size_t threads) {
    spec.validate();
    const EvalContext ctx{SigmaMode::Known, spec.sigma, spec.delta, spec.profile};
    ScalingFit fit;
    std::vector<double> ns, sq_means, abs_means;
    for (std::size_t n : spec.n_grid) {
        SignalSpec signal;
        signal.kind = SignalKind::PiecewiseConstantTV;
        signal.n_points = n;
        signal.tv_radius = spec.radius;
        signal.level = spec.level;

        std::vector<double> sq(spec.trials), ab(spec.trials);
        detail::parallel_for(spec.trials, threads, [&](std::size_t trial) {
            const auto truth = generate_signal(signal, base_seed + trial);
            auto rng = make_rng(base_seed + trial, kNoiseStream);
            const auto y = add_noise(truth, standard_noise(NoiseDistribution::Gaussian, n, rng), spec.sigma);
            const auto est = online_estimates(spec.estimator, y, ctx);
            sq[trial] = risk(est, truth, RiskKind::Squared);
            ab[trial] = risk(est, truth, RiskKind::Absolute);
        });
        const auto s = detail::mean_std(sq);
        const auto a = detail::mean_std(ab);
        fit.rows.push_back({n, s.mean, s.std, a.mean, a.std});
        ns.push_back(static_cast<double>(n));
        sq_means.push_back(s.mean);
        abs_means.push_back(a.mean);
    }
    fit.sq = fit_loglog(ns, sq_means);
    fit.abs = fit_loglog(ns, abs_means);
    return fit;
}

}  // namespace driftwave
