#pragma once
// Asset paths on the thin uniform mesh t_k = k T / n_bar, k = 0..n_bar.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hedgeopt/errors.hpp"
#include "hedgeopt/market.hpp"
#include "hedgeopt/rng.hpp"
#include "hedgeopt/symmat.hpp"

namespace hedgeopt {

struct PathGrid {
    int n_bar = 0;
    double horizon = 0.0;
    int dim = 0;
    std::vector<double> states;  // (n_bar + 1) x dim, row-major
    std::uint64_t seed = 0;
    std::uint64_t path_id = 0;

    [[nodiscard]] Vec state(int k) const {
        return Vec(std::span<const double>(states.data() + static_cast<std::size_t>(k) * dim, static_cast<std::size_t>(dim)));
    }
    [[nodiscard]] double time(int k) const noexcept { return horizon * static_cast<double>(k) / static_cast<double>(n_bar); }
    [[nodiscard]] double dt() const noexcept { return horizon / static_cast<double>(n_bar); }

    /// Every factor-th point of this path. Exact for the log-normal stepping used here, so
    /// coarse and fine grids built this way share the same Brownian path.
    [[nodiscard]] PathGrid coarsen(int factor) const {
        if (factor < 1 || n_bar % factor != 0)
            throw DomainError("coarsen: factor " + std::to_string(factor) + " does not divide n_bar");
        PathGrid out{n_bar / factor, horizon, dim, {}, seed, path_id};
        out.states.reserve(static_cast<std::size_t>(out.n_bar + 1) * dim);
        for (int k = 0; k <= n_bar; k += factor)
            for (int i = 0; i < dim; ++i) out.states.push_back(states[static_cast<std::size_t>(k) * dim + i]);
        return out;
    }

    /// A path frozen at `spot` (zero volatility).
    static PathGrid constant(const Vec& spot, double horizon, int n_bar) {
        PathGrid out{n_bar, horizon, spot.size(), {}, 0, 0};
        out.states.reserve(static_cast<std::size_t>(n_bar + 1) * spot.size());
        for (int k = 0; k <= n_bar; ++k)
            for (double x : spot) out.states.push_back(x);
        return out;
    }
};

/// Exact log-normal stepping of dS = Diag(S) L dB:
///   log S_{k+1} = log S_k - diag(L L^T) dt / 2 + L sqrt(dt) G_k,
/// with G_k drawn from CounterRng(seed, path_id) at counter k.
inline PathGrid simulate_lognormal(const Vec& spot, const SquareMatrix& log_vol_factor, double horizon, int n_bar,
                                   std::uint64_t seed, std::uint64_t path_id) {
    if (n_bar < 2) throw DomainError("simulate: n_bar must be >= 2");
    if (!(horizon > 0.0)) throw DomainError("simulate: horizon must be positive");
    SquareMatrix::require_same_dim(spot.size(), log_vol_factor.dim());
    const int d = spot.size();
    const double dt = horizon / n_bar;
    const double sqdt = std::sqrt(dt);
    Vec drift(d);
    for (int i = 0; i < d; ++i) {
        double v = 0.0;
        for (int j = 0; j < d; ++j) v += log_vol_factor(i, j) * log_vol_factor(i, j);
        drift[i] = -0.5 * v * dt;
    }

    const CounterRng rng(seed, path_id);
    const int pairs = (d + 1) / 2;
    PathGrid out{n_bar, horizon, d, {}, seed, path_id};
    out.states.resize(static_cast<std::size_t>(n_bar + 1) * d);
    Vec logs(d);
    for (int i = 0; i < d; ++i) {
        logs[i] = std::log(spot[i]);
        out.states[static_cast<std::size_t>(i)] = spot[i];
    }
    Vec g(d);
    for (int k = 0; k < n_bar; ++k) {
        for (int p = 0; p < pairs; ++p) {
            const auto z = rng.normal_pair(static_cast<std::uint64_t>(k) * pairs + p);
            g[2 * p] = z[0];
            if (2 * p + 1 < d) g[2 * p + 1] = z[1];
        }
        for (int i = 0; i < d; ++i) {
            double shock = 0.0;
            for (int j = 0; j < d; ++j) shock += log_vol_factor(i, j) * g[j];
            logs[i] += drift[i] + sqdt * shock;
            out.states[static_cast<std::size_t>(k + 1) * d + i] = std::exp(logs[i]);
        }
    }
    return out;
}

inline PathGrid simulate_path(const MarketModel& model, int n_bar, std::uint64_t seed, std::uint64_t path_id) {
    return simulate_lognormal(model.spot(), model.log_vol_factor(), model.maturity(), n_bar, seed, path_id);
}

}  // namespace hedgeopt
