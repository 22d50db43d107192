#pragma once
// Pathwise measurements of a discrete Delta hedge on the thin mesh: hedging
// error, realized quadratic variation, the lower-bound integral of tr X, the
// beta ratio and the admissibility diagnostics of hitting schedules.
//
// Time integrals are left-Riemann sums over t_k < T; Greeks are never
// evaluated at T itself.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "hedgeopt/errors.hpp"
#include "hedgeopt/gamma_equation.hpp"
#include "hedgeopt/path.hpp"
#include "hedgeopt/pricer.hpp"
#include "hedgeopt/strategies.hpp"

namespace hedgeopt {

/// Greeks sampled once per path at every mesh point t_k < T and shared by all schedules.
struct PathTrack {
    int dim = 0;
    double price0 = 0.0;
    std::vector<double> delta;    // n_bar x dim
    std::vector<double> trace_x;  // tr X(t_k, S_k), k < n_bar

    [[nodiscard]] double delta_at(int k, int i) const noexcept {
        return delta[static_cast<std::size_t>(k) * dim + i];
    }
};

template <Pricer P>
PathTrack track_greeks(const PathGrid& path, const P& pricer) {
    PathTrack tr;
    tr.dim = path.dim;
    tr.delta.resize(static_cast<std::size_t>(path.n_bar) * path.dim);
    tr.trace_x.resize(static_cast<std::size_t>(path.n_bar));
    for (int k = 0; k < path.n_bar; ++k) {
        const Vec s = path.state(k);
        const GreekBundle g = pricer.greeks(path.time(k), s);
        if (k == 0) tr.price0 = g.price;
        for (int i = 0; i < path.dim; ++i) tr.delta[static_cast<std::size_t>(k) * path.dim + i] = g.delta[i];
        tr.trace_x[static_cast<std::size_t>(k)] = gamma_trace(congruence(pricer.sigma(s), g.gamma));
    }
    return tr;
}

struct HedgeError {
    double z_terminal = 0.0;
    /// Z on the mesh as the discretized stochastic integral sum_j (Delta_j - Delta_phi(j)) . dS_j.
    std::vector<double> z_path;
};

namespace detail {

/// Calls f(k, anchor) for every mesh step k < n_bar, anchor being the last date <= k.
template <class F>
void for_each_step(const Schedule& schedule, int n_bar, F&& f) {
    std::size_t next = 1;
    int anchor = 0;
    for (int k = 0; k < n_bar; ++k) {
        while (next < schedule.mesh_indices.size() && schedule.mesh_indices[next] <= k) anchor = schedule.mesh_indices[next++];
        f(k, anchor);
    }
}

inline double gap_increment(const PathGrid& path, const PathTrack& tr, int k, int anchor) {
    double s = 0.0;
    for (int i = 0; i < path.dim; ++i) {
        const double ds = path.states[static_cast<std::size_t>(k + 1) * path.dim + i] -
                          path.states[static_cast<std::size_t>(k) * path.dim + i];
        s += (tr.delta_at(k, i) - tr.delta_at(anchor, i)) * ds;
    }
    return s;
}

}  // namespace detail

/// Z_T = g(S_T) - u(0, S_0) - sum_i Delta(tau_{i-1}) . (S_{tau_i} - S_{tau_{i-1}}).
template <Pricer P>
HedgeError hedge_error(const PathGrid& path, const Schedule& schedule, const PathTrack& tr, const P& pricer) {
    schedule.validate(path.n_bar);
    HedgeError out;
    double portfolio = 0.0;
    const auto& idx = schedule.mesh_indices;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        for (int a = 0; a < path.dim; ++a) {
            const double ds = path.states[static_cast<std::size_t>(idx[i]) * path.dim + a] -
                              path.states[static_cast<std::size_t>(idx[i - 1]) * path.dim + a];
            portfolio += tr.delta_at(idx[i - 1], a) * ds;
        }
    }
    out.z_terminal = pricer.payoff(path.state(path.n_bar)) - tr.price0 - portfolio;

    out.z_path.assign(static_cast<std::size_t>(path.n_bar) + 1, 0.0);
    detail::for_each_step(schedule, path.n_bar, [&](int k, int anchor) {
        out.z_path[static_cast<std::size_t>(k) + 1] =
            out.z_path[static_cast<std::size_t>(k)] + detail::gap_increment(path, tr, k, anchor);
    });
    return out;
}

template <Pricer P>
HedgeError hedge_error(const PathGrid& path, const Schedule& schedule, const P& pricer) {
    return hedge_error(path, schedule, track_greeks(path, pricer), pricer);
}

inline HedgeError hedge_error(const PathGrid& path, const Schedule& schedule, const MarketModel& model) {
    return hedge_error(path, schedule, BlackScholesPricer(model));
}

/// sum_k [(Delta_k - Delta_phi(k)) . (S_{k+1} - S_k)]^2; the gap vanishes at rebalancing dates.
inline double realized_qv(const PathGrid& path, const Schedule& schedule, const PathTrack& tr) {
    schedule.validate(path.n_bar);
    double qv = 0.0;
    detail::for_each_step(schedule, path.n_bar, [&](int k, int anchor) {
        const double z = detail::gap_increment(path, tr, k, anchor);
        qv += z * z;
    });
    return qv;
}

inline double realized_qv(const PathGrid& path, const Schedule& schedule, const MarketModel& model) {
    return realized_qv(path, schedule, track_greeks(path, BlackScholesPricer(model)));
}

/// Sum of squared increments of a Z path.
inline double increment_qv(const std::vector<double>& z_path) {
    double qv = 0.0;
    for (std::size_t k = 1; k < z_path.size(); ++k) {
        const double dz = z_path[k] - z_path[k - 1];
        qv += dz * dz;
    }
    return qv;
}

/// Left-Riemann estimate of int_0^T tr X_t dt (not squared).
inline double lower_bound_integral(const PathGrid& path, const PathTrack& tr) {
    double s = 0.0;
    for (double x : tr.trace_x) s += x;
    return s * path.dt();
}

template <Pricer P>
double lower_bound_integral(const PathGrid& path, const P& pricer) {
    return lower_bound_integral(path, track_greeks(path, pricer));
}

inline double lower_bound_integral(const PathGrid& path, const MarketModel& model) {
    return lower_bound_integral(path, BlackScholesPricer(model));
}

/// N <Z>_T / (int tr X dt)^2.
inline double beta_ratio(int n_dates, double qv, double lower_bound) {
    if (!(lower_bound > 1e-14))
        throw DegenerateBoundError("beta_ratio: lower bound " + std::to_string(lower_bound) + " is degenerate");
    return static_cast<double>(n_dates) * qv / (lower_bound * lower_bound);
}

struct AdmissibilityStats {
    double eps2n = 0.0;
    double max_increment_ratio = 0.0;
    double max_dtau = 0.0;
    double target_integral = 0.0;  // int tr(Lambda^mu_phi(t) sigma sigma^T) dt
};

template <Pricer P>
AdmissibilityStats admissibility_stats(const PathGrid& path, const Schedule& schedule, double epsilon, const P& pricer) {
    schedule.validate(path.n_bar);
    if (static_cast<int>(schedule.ellipsoids.size()) != schedule.n_intervals())
        throw DomainError("admissibility_stats: schedule carries no ellipsoids");
    if (!(epsilon > 0.0)) throw DomainError("admissibility_stats: epsilon must be positive");
    const double eps2 = epsilon * epsilon;
    AdmissibilityStats st;
    st.eps2n = eps2 * schedule.n_intervals();

    const auto& idx = schedule.mesh_indices;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        st.max_dtau = std::max(st.max_dtau, path.time(idx[i]) - path.time(idx[i - 1]));
        const Vec s0 = path.state(idx[i - 1]);
        for (int k = idx[i - 1] + 1; k <= idx[i]; ++k) {
            const Vec dv = path.state(k) - s0;
            st.max_increment_ratio = std::max(st.max_increment_ratio, dv.dot(dv) / eps2);
        }
    }

    double target = 0.0;
    std::size_t interval = 0;
    for (int k = 0; k < path.n_bar; ++k) {
        while (idx[interval + 1] <= k) ++interval;
        const SquareMatrix sig = pricer.sigma(path.state(k));
        target += (schedule.ellipsoids[interval].matrix() * sig * sig.transpose()).trace();
    }
    st.target_integral = target * path.dt();
    return st;
}

struct HedgeReport {
    int n_dates = 0;
    double qv = 0.0;
    double z_terminal = 0.0;
    double lower_bound = 0.0;
    double beta = std::numeric_limits<double>::quiet_NaN();
    double eps2n = std::numeric_limits<double>::quiet_NaN();
    double target_integral = std::numeric_limits<double>::quiet_NaN();
    double max_increment_ratio = std::numeric_limits<double>::quiet_NaN();
    double max_dtau = 0.0;
};

/// All measurements of one schedule on one path. Admissibility fields are filled
/// for hitting schedules only; beta is NaN when the lower bound degenerates.
template <Pricer P>
HedgeReport evaluate_schedule(const PathGrid& path, const Schedule& schedule, const PathTrack& tr, const P& pricer,
                              double epsilon) {
    HedgeReport r;
    r.n_dates = schedule.n_intervals();
    r.qv = realized_qv(path, schedule, tr);
    r.z_terminal = hedge_error(path, schedule, tr, pricer).z_terminal;
    r.lower_bound = lower_bound_integral(path, tr);
    if (r.lower_bound > 1e-14) r.beta = beta_ratio(r.n_dates, r.qv, r.lower_bound);
    if (!schedule.ellipsoids.empty()) {
        const AdmissibilityStats st = admissibility_stats(path, schedule, epsilon, pricer);
        r.eps2n = st.eps2n;
        r.target_integral = st.target_integral;
        r.max_increment_ratio = st.max_increment_ratio;
        r.max_dtau = st.max_dtau;
    } else {
        const auto& idx = schedule.mesh_indices;
        for (std::size_t i = 1; i < idx.size(); ++i)
            r.max_dtau = std::max(r.max_dtau, path.time(idx[i]) - path.time(idx[i - 1]));
    }
    return r;
}

}  // namespace hedgeopt
