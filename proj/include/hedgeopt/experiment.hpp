#pragma once
// Path-by-path comparison of the optimal ellipsoid schedule against uniform and
// fractional meshes with the same number of dates (and optionally a constant
// sphere in the spirit of Karandikar). Paths are independent; a worker pool
// consumes path ids and rows are collected in path-id order, so results do not
// depend on the worker count.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "hedgeopt/config.hpp"
#include "hedgeopt/simulator.hpp"
#include "hedgeopt/strategies.hpp"

namespace hedgeopt {

struct StrategyOutcome {
    bool present = false;
    int n_dates = 0;
    double qv = std::numeric_limits<double>::quiet_NaN();
    double beta = std::numeric_limits<double>::quiet_NaN();
    double z_terminal = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentRow {
    std::uint64_t path_id = 0;
    int n_dates = 0;  // stochastic interval count N
    std::array<StrategyOutcome, 4> outcomes{};
    double lower_bound = 0.0;
    double eps2n = 0.0;
    double target_integral = 0.0;
    double max_dtau = 0.0;
    double max_increment_ratio = 0.0;
    std::string warning;  // matched-N protocol violation, if any
    std::string error;    // non-empty when the path failed

    [[nodiscard]] const StrategyOutcome& outcome(Strategy s) const { return outcomes[static_cast<std::size_t>(s)]; }
    StrategyOutcome& outcome(Strategy s) { return outcomes[static_cast<std::size_t>(s)]; }
};

struct StatSummary {
    std::size_t count = 0;
    double mean = std::numeric_limits<double>::quiet_NaN();
    double median = std::numeric_limits<double>::quiet_NaN();
    double q05 = std::numeric_limits<double>::quiet_NaN();
    double q25 = std::numeric_limits<double>::quiet_NaN();
    double q75 = std::numeric_limits<double>::quiet_NaN();
    double q95 = std::numeric_limits<double>::quiet_NaN();
};

/// Linear-interpolation quantile of a sample; NaNs are ignored.
inline double quantile(std::vector<double> xs, double q) {
    std::erase_if(xs, [](double x) { return std::isnan(x); });
    if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(xs.begin(), xs.end());
    const double pos = q * static_cast<double>(xs.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, xs.size() - 1);
    return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

inline double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

inline StatSummary summarize(const std::vector<double>& xs) {
    StatSummary s;
    double sum = 0.0;
    for (double x : xs)
        if (!std::isnan(x)) {
            sum += x;
            ++s.count;
        }
    if (s.count == 0) return s;
    s.mean = sum / static_cast<double>(s.count);
    s.median = quantile(xs, 0.5);
    s.q05 = quantile(xs, 0.05);
    s.q25 = quantile(xs, 0.25);
    s.q75 = quantile(xs, 0.75);
    s.q95 = quantile(xs, 0.95);
    return s;
}

struct ExperimentSummary {
    std::array<StatSummary, 4> beta{};  // indexed by Strategy
    double frac_uniform_ge_stochastic = std::numeric_limits<double>::quiet_NaN();
    double frac_fractional_ge_stochastic = std::numeric_limits<double>::quiet_NaN();
    std::size_t n_rows = 0;
    std::size_t n_failed = 0;
    std::size_t n_flagged = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<ExperimentRow> rows;      // successful paths, by path id
    std::vector<ExperimentRow> failures;  // failed paths, by path id
    ExperimentSummary summary;

    /// More than 1% of the paths failed.
    [[nodiscard]] bool failed() const noexcept {
        return static_cast<double>(failures.size()) > 0.01 * static_cast<double>(config.n_paths);
    }
};

/// Fraction of rows where beta(other) >= beta(stochastic), over rows reporting both as finite.
inline double fraction_at_or_above(const std::vector<ExperimentRow>& rows, Strategy other) {
    std::size_t n = 0, hits = 0;
    for (const auto& r : rows) {
        if (!r.outcome(Strategy::Stochastic).present || !r.outcome(other).present) continue;
        const double bs = r.outcome(Strategy::Stochastic).beta;
        const double bo = r.outcome(other).beta;
        if (!std::isfinite(bs) || !std::isfinite(bo)) continue;
        ++n;
        if (bo >= bs) ++hits;
    }
    return n == 0 ? std::numeric_limits<double>::quiet_NaN() : static_cast<double>(hits) / static_cast<double>(n);
}

inline ExperimentSummary summarize_rows(const std::vector<ExperimentRow>& rows, std::size_t n_failed) {
    ExperimentSummary s;
    s.n_rows = rows.size();
    s.n_failed = n_failed;
    for (Strategy st : kAllStrategies) {
        std::vector<double> betas;
        for (const auto& r : rows)
            if (r.outcome(st).present) betas.push_back(r.outcome(st).beta);
        s.beta[static_cast<std::size_t>(st)] = summarize(betas);
    }
    s.frac_uniform_ge_stochastic = fraction_at_or_above(rows, Strategy::Uniform);
    s.frac_fractional_ge_stochastic = fraction_at_or_above(rows, Strategy::Fractional);
    s.n_flagged = static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.warning.empty(); }));
    return s;
}

/// Constant sphere H = (tr Lambda^mu_0 / d) I calibrated at inception.
template <Pricer P>
SymMatrix inception_sphere(const PathGrid& path, const P& pricer, double mu) {
    const SymMatrix lam = optimal_ellipsoid(pricer, 0.0, path.state(0), mu).lambda_mu;
    double scale = lam.trace() / lam.dim();
    if (!(scale > 1e-12)) scale = 1e-12;
    return scale * SymMatrix::identity(lam.dim());
}

/// The full per-path pipeline. Throws on numerical failure.
inline ExperimentRow run_path(const ExperimentConfig& cfg, const BlackScholesPricer& pricer, std::uint64_t path_id) {
    ExperimentRow row;
    row.path_id = path_id;
    const PathGrid path = simulate_path(pricer.model(), cfg.n_bar, cfg.seed, path_id);
    const PathTrack track = track_greeks(path, pricer);

    // The stochastic schedule always runs: it fixes N for the deterministic meshes.
    const Schedule stoch = ellipsoid_schedule(path, pricer, cfg.epsilon, cfg.mu);
    const HedgeReport rs = evaluate_schedule(path, stoch, track, pricer, cfg.epsilon);
    row.n_dates = rs.n_dates;
    row.lower_bound = rs.lower_bound;
    row.eps2n = rs.eps2n;
    row.target_integral = rs.target_integral;
    row.max_dtau = rs.max_dtau;
    row.max_increment_ratio = rs.max_increment_ratio;
    row.outcome(Strategy::Stochastic) = {cfg.has(Strategy::Stochastic), rs.n_dates, rs.qv, rs.beta, rs.z_terminal};

    const auto run_deterministic = [&](Strategy s, const Schedule& sched) {
        const HedgeReport r = evaluate_schedule(path, sched, track, pricer, cfg.epsilon);
        row.outcome(s) = {true, r.n_dates, r.qv, r.beta, r.z_terminal};
        if (r.n_dates != row.n_dates) {
            if (!row.warning.empty()) row.warning += "; ";
            row.warning += std::string(strategy_name(s)) + " mesh has " + std::to_string(r.n_dates) +
                           " intervals after deduplication, expected " + std::to_string(row.n_dates);
        }
    };
    const int n_matched = std::min(row.n_dates, cfg.n_bar);
    if (cfg.has(Strategy::Uniform)) run_deterministic(Strategy::Uniform, uniform_schedule(n_matched, cfg.n_bar));
    if (cfg.has(Strategy::Fractional)) run_deterministic(Strategy::Fractional, fractional_schedule(n_matched, cfg.n_bar));
    if (cfg.has(Strategy::Karandikar)) {
        const SymMatrix h = inception_sphere(path, pricer, cfg.mu);
        const Schedule k = generic_hitting_schedule(path, [&](double, const Vec&) { return h; }, cfg.epsilon);
        const HedgeReport r = evaluate_schedule(path, k, track, pricer, cfg.epsilon);
        row.outcome(Strategy::Karandikar) = {true, r.n_dates, r.qv, r.beta, r.z_terminal};
    }
    return row;
}

/// Worker count: explicit value if positive, else HEDGEOPT_WORKERS, else hardware concurrency.
inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HEDGEOPT_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers = 1) {
    cfg.validate();
    const BlackScholesPricer pricer(cfg.model());
    std::vector<ExperimentRow> all(static_cast<std::size_t>(cfg.n_paths));
    std::atomic<int> next{0};

    const auto work = [&] {
        for (int i = next++; i < cfg.n_paths; i = next++) {
            const auto id = static_cast<std::uint64_t>(i);
            try {
                all[static_cast<std::size_t>(i)] = run_path(cfg, pricer, id);
            } catch (const std::exception& e) {
                ExperimentRow failed;
                failed.path_id = id;
                failed.error = e.what();
                all[static_cast<std::size_t>(i)] = std::move(failed);
            }
        }
    };
    const int n_threads = std::clamp(workers, 1, cfg.n_paths);
    if (n_threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    }

    ExperimentResult res;
    res.config = cfg;
    for (auto& r : all) (r.error.empty() ? res.rows : res.failures).push_back(std::move(r));
    res.summary = summarize_rows(res.rows, res.failures.size());
    return res;
}

}  // namespace hedgeopt
