// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hedgeopt/hedgeopt.hpp"
#include "oracles.hpp"

using namespace hedgeopt;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Verdict residual_suite() {
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<int> dim(1, 6);
    double worst_res = 0.0, worst_sym = 0.0, worst_min = 0.0;
    int bracket_fail = 0;
    const auto t0 = Clock::now();
    for (int n = 0; n < 1000; ++n) {
        const int d = dim(rng);
        const SymMatrix c = oracle::random_symmetric(rng, d, -5.0, 5.0);
        const GammaSolution s = solve_gamma_matrix(c);
        const double cn = c.frobenius_norm();
        const SquareMatrix x = s.x.matrix();
        const SquareMatrix lhs = (2.0 * x.trace()) * x + 4.0 * (x * x) - c.matrix() * c.matrix();
        worst_res = std::max(worst_res, lhs.frobenius_norm() / (1.0 + cn * cn));
        worst_sym = std::max(worst_sym, oracle::max_abs_diff(x, x.transpose()));
        worst_min = std::min(worst_min, min_eigenvalue(s.x));
        const Spectrum sp = eigh_sym(c);
        const std::vector<double> lam(sp.eigenvalues.begin(), sp.eigenvalues.end());
        double lam_norm = 0.0;
        for (double l : lam) lam_norm += l * l;
        const double upper = d * std::sqrt(lam_norm) / std::sqrt(4.0 + 2.0 * d);
        if (!(s.trace_y >= 0.0 && s.trace_y <= upper * (1.0 + 1e-12))) ++bracket_fail;
    }
    const double secs = seconds_since(t0);
    const bool ok = worst_res <= 1e-9 && worst_sym <= 1e-12 && worst_min >= -1e-12 && bracket_fail == 0 && secs < 2.0;
    return {ok, fmt("max residual/(1+|c|^2) %.2e, asymmetry %.1e, min eig %.2e, bracket misses %d, %.3f s", worst_res,
                    worst_sym, worst_min, bracket_fail, secs)};
}

Verdict scalar_closed_form() {
    std::mt19937_64 rng(1002);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
        const double g = n == 0 ? 0.0 : u(rng);
        const double x = solve_gamma_matrix(SymMatrix{{g}}).x(0, 0);
        worst = std::max(worst, std::abs(x - g / std::sqrt(6.0)) / (1.0 + g));
    }
    return {worst <= 1e-12, fmt("max |x - g/sqrt6|/(1+g) = %.2e", worst)};
}

Verdict homogeneity_equivariance() {
    std::mt19937_64 rng(1003);
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_real_distribution<double> scale(-10.0, 10.0);
    double worst = 0.0;
    for (int n = 0; n < 200; ++n) {
        const int d = dim(rng);
        const SymMatrix c = oracle::random_symmetric(rng, d, -5.0, 5.0);
        const double a = scale(rng);
        const SquareMatrix p = oracle::random_orthogonal(rng, d);
        const SquareMatrix x = solve_gamma_matrix(c).x.matrix();
        const double xn = x.frobenius_norm();
        const SquareMatrix xa = solve_gamma_matrix(a * c).x.matrix();
        worst = std::max(worst, oracle::frob_diff(xa, std::abs(a) * x) / (std::abs(a) * xn));
        const SquareMatrix xp = solve_gamma_matrix(SymMatrix::symmetrized(p * c.matrix() * p.transpose())).x.matrix();
        worst = std::max(worst, oracle::frob_diff(xp, p * x * p.transpose()) / xn);
    }
    return {worst <= 1e-9, fmt("max relative error %.2e", worst)};
}

Verdict pricing_oracle() {
    const MarketModel m = MarketModel::reference_exchange_binary();
    const double price = greeks(m, 0.0, m.spot()).price;
    const auto mc = oracle::exchange_binary_mc(100.0, 100.0, 0.3, 0.4, 0.5, 1.0, 1000000, 1004);
    const double z = std::abs(price - mc.mean) / mc.std_error;

    double worst = 0.0;
    const double vbar = std::sqrt(0.09 - 2.0 * 0.5 * 0.3 * 0.4 + 0.16);
    for (double t : {0.0, 0.25, 0.5, 0.9, 0.99})
        for (const Vec& s : {Vec{100.0, 100.0}, Vec{110.0, 95.0}, Vec{90.0, 105.0}, Vec{130.0, 100.0}}) {
            const GreekBundle g = greeks(m, t, s);
            const bool minus_one = g.price > 0.5;
            const auto f = [&](const Vec& x) {
                return oracle::exchange_binary_tail_price(x, 0.3, 0.4, 0.5, 1.0 - t, minus_one);
            };
            const double step = 0.02 * vbar * std::sqrt(1.0 - t);
            const Vec fd_delta = oracle::fd_gradient(f, s, step);
            const SquareMatrix fd_gamma = oracle::fd_hessian(f, s, step);
            const double dscale = oracle::max_abs(g.delta);
            for (int i = 0; i < 2; ++i) worst = std::max(worst, std::abs(fd_delta[i] - g.delta[i]) / dscale);
            const double gscale = oracle::max_abs_diff(g.gamma.matrix(), SquareMatrix(2));
            worst = std::max(worst, oracle::max_abs_diff(fd_gamma, g.gamma.matrix()) / gscale);
        }
    return {z <= 3.0 && worst <= 1e-5,
            fmt("price %.10f vs MC %.6f (%.2f SE); max Greek FD relative error %.2e", price, mc.mean, z, worst)};
}

Verdict estimator_equivalence() {
    const MarketModel m = MarketModel::reference_exchange_binary();
    const BlackScholesPricer p(m);
    double worst = 0.0;
    for (std::uint64_t id = 0; id < 50; ++id) {
        const PathGrid path = simulate_path(m, 20000, 1005, id);
        const PathTrack tr = track_greeks(path, p);
        const Schedule s = ellipsoid_schedule(path, p, 0.05, 0.0);
        const double qv = realized_qv(path, s, tr);
        const double inc = increment_qv(hedge_error(path, s, tr, p).z_path);
        worst = std::max(worst, std::abs(qv - inc) / qv);
    }
    return {worst <= 1e-10, fmt("max relative gap %.2e over 50 paths", worst)};
}

ExperimentConfig reference_config(int n_paths, double eps, std::vector<Strategy> strategies) {
    ExperimentConfig c;
    c.n_bar = 20000;
    c.n_paths = n_paths;
    c.epsilon = eps;
    c.mu = 0.0;
    c.strategies = std::move(strategies);
    return c;
}

double median_target_error(const ExperimentResult& r) {
    std::vector<double> e;
    for (const auto& row : r.rows) e.push_back(std::abs(row.eps2n - row.target_integral) / row.target_integral);
    return median(e);
}

struct EpsilonPair {
    ExperimentResult coarse;  // eps = 0.05
    ExperimentResult fine;    // eps = 0.025
    double secs = 0.0;
};

EpsilonPair run_epsilon_pair(int workers) {
    const auto t0 = Clock::now();
    EpsilonPair p{run_experiment(reference_config(100, 0.05, {Strategy::Stochastic}), workers),
                  run_experiment(reference_config(100, 0.025, {Strategy::Stochastic}), workers), 0.0};
    p.secs = seconds_since(t0);
    return p;
}

Verdict target_convergence(const EpsilonPair& p) {
    const double e1 = median_target_error(p.coarse);
    const double e2 = median_target_error(p.fine);
    const bool ok = e2 < e1 && e2 <= 0.25 && p.secs <= 300.0 && p.coarse.failures.empty() && p.fine.failures.empty();
    return {ok, fmt("median |eps^2 N - target|/target: %.4f at eps 0.05, %.4f at eps 0.025; %.1f s", e1, e2, p.secs)};
}

Verdict desk_scatter(const ExperimentResult& r, double secs) {
    const double fu = r.summary.frac_uniform_ge_stochastic;
    const double ff = r.summary.frac_fractional_ge_stochastic;
    const double mb = r.summary.beta[static_cast<std::size_t>(Strategy::Stochastic)].median;
    const bool ok = fu >= 0.70 && ff >= 0.60 && mb >= 0.7 && mb <= 1.6 && secs <= 900.0 && !r.failed();
    return {ok, fmt("frac uniform >= stochastic %.3f, frac fractional >= stochastic %.3f, median beta %.4f, %zu rows, "
                    "%.1f s",
                    fu, ff, mb, r.rows.size(), secs)};
}

Verdict beta_monotone(const EpsilonPair& p) {
    const auto idx = static_cast<std::size_t>(Strategy::Stochastic);
    const double b1 = p.coarse.summary.beta[idx].median;
    const double b2 = p.fine.summary.beta[idx].median;
    return {b2 >= b1, fmt("median beta_stochastic %.4f at eps 0.05, %.4f at eps 0.025", b1, b2)};
}

Verdict determinism() {
    ExperimentConfig c = reference_config(8, 0.05, {Strategy::Stochastic, Strategy::Uniform, Strategy::Fractional,
                                                    Strategy::Karandikar});
    c.n_bar = 4000;
    const fs::path base = fs::temp_directory_path() / "hedgeopt_acceptance_determinism";
    fs::remove_all(base);
    const auto slurp = [](const fs::path& f) {
        std::ifstream in(f, std::ios::binary);
        std::stringstream b;
        b << in.rdbuf();
        return b.str();
    };
    std::vector<std::string> files;
    for (int w : {1, 4, 1, 3}) {
        const fs::path dir = base / ("w" + std::to_string(w) + "_" + std::to_string(files.size()));
        write_experiment(run_experiment(c, w), dir);
        files.push_back(slurp(dir / "rows.csv"));
    }
    fs::remove_all(base);
    bool same = !files[0].empty();
    for (const auto& f : files) same = same && f == files[0];
    return {same, fmt("%zu runs with workers 1,4,1,3: %s (%zu bytes)", files.size(), same ? "identical" : "DIFFERENT",
                      files[0].size())};
}

Verdict mean_zero(const ExperimentResult& r) {
    std::vector<double> z;
    for (const auto& row : r.rows) z.push_back(row.outcome(Strategy::Stochastic).z_terminal);
    const double n = static_cast<double>(z.size());
    double mean = 0.0, var = 0.0;
    for (double x : z) mean += x / n;
    for (double x : z) var += (x - mean) * (x - mean) / (n - 1.0);
    const double se = std::sqrt(var / n);
    return {std::abs(mean) <= 3.0 * se, fmt("mean Z_T %.5f, standard error %.5f over %zu paths", mean, se, z.size())};
}

}  // namespace

int main() {
    const int workers = resolve_workers(0);
    int failed = 0;
    const auto report = [&](int id, const char* name, const Verdict& v) {
        std::printf("%s criterion %2d  %-34s %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
        std::fflush(stdout);
        if (!v.pass) ++failed;
    };

    report(1, "matrix equation residual suite", residual_suite());
    report(2, "one-dimensional closed form", scalar_closed_form());
    report(3, "homogeneity and equivariance", homogeneity_equivariance());
    report(4, "pricing oracle and Greeks", pricing_oracle());
    report(5, "QV estimator equivalence", estimator_equivalence());

    const EpsilonPair pair = run_epsilon_pair(workers);
    report(6, "eps^2 N convergence to target", target_convergence(pair));

    ExperimentConfig desk = reference_config(200, 0.05, {Strategy::Stochastic, Strategy::Uniform, Strategy::Fractional});
    apply_preset(desk, Preset::Desk);
    const auto t0 = Clock::now();
    const ExperimentResult desk_run = run_experiment(desk, workers);
    const double desk_secs = seconds_since(t0);
    report(7, "desk-scale beta scatter", desk_scatter(desk_run, desk_secs));
    report(8, "median beta as eps halves", beta_monotone(pair));
    report(9, "CSV determinism across workers", determinism());
    report(10, "mean-zero hedging error", mean_zero(desk_run));

    std::printf("%d of 10 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
