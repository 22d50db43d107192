#pragma once
// Rebalancing schedules on the thin mesh. Dates are mesh indices; every schedule
// starts at 0 and ends at n_bar.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "hedgeopt/errors.hpp"
#include "hedgeopt/gamma_equation.hpp"
#include "hedgeopt/path.hpp"
#include "hedgeopt/pricer.hpp"
#include "hedgeopt/symmat.hpp"

namespace hedgeopt {

enum class ScheduleKind { Uniform, Fractional, Ellipsoid, GenericHitting };

struct Schedule {
    std::vector<int> mesh_indices;
    ScheduleKind kind = ScheduleKind::Uniform;
    std::vector<SymMatrix> ellipsoids;  // one per interval, hitting schedules only

    [[nodiscard]] int n_intervals() const noexcept { return static_cast<int>(mesh_indices.size()) - 1; }

    /// Throws DomainError unless the schedule is well formed on a mesh of size n_bar.
    void validate(int n_bar) const {
        if (mesh_indices.size() < 2) throw DomainError("schedule: needs at least two dates");
        if (mesh_indices.front() != 0) throw DomainError("schedule: first date must be mesh index 0");
        if (mesh_indices.back() != n_bar) throw DomainError("schedule: last date must be mesh index n_bar");
        for (std::size_t i = 1; i < mesh_indices.size(); ++i)
            if (mesh_indices[i] <= mesh_indices[i - 1]) throw DomainError("schedule: dates must be strictly increasing");
        if (!ellipsoids.empty() && static_cast<int>(ellipsoids.size()) != n_intervals())
            throw DomainError("schedule: one ellipsoid per interval required");
    }
};

namespace detail {

inline void require_date_count(int n_dates, int n_bar) {
    if (n_dates < 1) throw DomainError("schedule: n_dates must be >= 1");
    if (n_dates > n_bar)
        throw DomainError("schedule: n_dates = " + std::to_string(n_dates) + " exceeds n_bar = " + std::to_string(n_bar));
}

/// Endpoints forced; interior indices kept only when they move strictly forward.
inline std::vector<int> dedup_indices(const std::vector<long>& snapped, int n_bar) {
    std::vector<int> out{0};
    for (long k : snapped)
        if (k > out.back() && k < n_bar) out.push_back(static_cast<int>(k));
    out.push_back(n_bar);
    return out;
}

}  // namespace detail

/// Dates round(i n_bar / n_dates), i = 0..n_dates.
inline Schedule uniform_schedule(int n_dates, int n_bar) {
    detail::require_date_count(n_dates, n_bar);
    std::vector<long> snapped;
    for (int i = 1; i < n_dates; ++i)
        snapped.push_back(std::lround(static_cast<double>(i) * n_bar / n_dates));
    return {detail::dedup_indices(snapped, n_bar), ScheduleKind::Uniform, {}};
}

/// Dates T (1 - (1 - i/n_dates)^2) snapped to the nearest mesh index. The horizon cancels
/// against the mesh spacing, so only n_bar is needed.
inline Schedule fractional_schedule(int n_dates, int n_bar) {
    detail::require_date_count(n_dates, n_bar);
    std::vector<long> snapped;
    for (int i = 1; i < n_dates; ++i) {
        const double r = 1.0 - static_cast<double>(i) / n_dates;
        snapped.push_back(std::lround(n_bar * (1.0 - r * r)));
    }
    return {detail::dedup_indices(snapped, n_bar), ScheduleKind::Fractional, {}};
}

/// First-crossing scan shared by all hitting schedules. At each date the provider
/// returns the ellipsoid matrix H; the next date is the first later mesh index with
/// (S_k - S_anchor)^T H (S_k - S_anchor) >= eps^2, or n_bar if there is none.
template <class Provider>
    requires std::invocable<Provider&, int, const Vec&>
Schedule hitting_schedule(const PathGrid& path, Provider&& provider, double epsilon, ScheduleKind kind) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("hitting schedule: epsilon must be positive");
    const double eps2 = epsilon * epsilon;
    Schedule out{{0}, kind, {}};
    int anchor = 0;
    while (anchor < path.n_bar) {
        const Vec s0 = path.state(anchor);
        SymMatrix h = provider(anchor, s0);
        int next = path.n_bar;
        for (int k = anchor + 1; k < path.n_bar; ++k) {
            if (quad_form(h, path.state(k) - s0) >= eps2) {
                next = k;
                break;
            }
        }
        out.ellipsoids.push_back(std::move(h));
        out.mesh_indices.push_back(next);
        anchor = next;
    }
    return out;
}

/// Lambda^mu at (t, s): c = sigma^T Gamma sigma, x = x(c), Lambda = sigma^{-T} x sigma^{-1}.
template <Pricer P>
EllipsoidSpec optimal_ellipsoid(const P& pricer, double t, const Vec& s, double mu) {
    const GreekBundle g = pricer.greeks(t, s);
    const SquareMatrix sig = pricer.sigma(s);
    const SymMatrix c = congruence(sig, g.gamma);
    const GammaSolution x = solve_gamma_matrix(c);
    return lambda_mu_of(lambda_of(sig, x.x), mu);
}

/// Hitting times of the optimal random ellipsoids {v : v^T Lambda^mu v < eps^2}.
template <Pricer P>
Schedule ellipsoid_schedule(const PathGrid& path, const P& pricer, double epsilon, double mu) {
    return hitting_schedule(
        path, [&](int k, const Vec& s) { return optimal_ellipsoid(pricer, path.time(k), s, mu).lambda_mu; }, epsilon,
        ScheduleKind::Ellipsoid);
}

inline Schedule ellipsoid_schedule(const PathGrid& path, const MarketModel& model, double epsilon, double mu) {
    return ellipsoid_schedule(path, BlackScholesPricer(model), epsilon, mu);
}

/// Hitting times for a user-supplied ellipsoid field H(t, s); H must be positive definite.
template <class HProvider>
    requires std::invocable<HProvider&, double, const Vec&>
Schedule generic_hitting_schedule(const PathGrid& path, HProvider&& h_provider, double epsilon) {
    return hitting_schedule(
        path,
        [&](int k, const Vec& s) {
            const double t = path.time(k);
            SymMatrix h = h_provider(t, s);
            const double lmin = min_eigenvalue(h);
            if (!(lmin > 1e-12))
                throw DomainError("generic hitting schedule: H is not positive definite at mesh index " +
                                  std::to_string(k) + " (t = " + std::to_string(t) +
                                  ", lambda_min = " + std::to_string(lmin) + ")");
            return h;
        },
        epsilon, ScheduleKind::GenericHitting);
}

}  // namespace hedgeopt
