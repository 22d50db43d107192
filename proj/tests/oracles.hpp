#pragma once
// Test-only oracles. Nothing here calls into the code paths it is used to check:
// random draws come from <random>, the terminal law is sampled directly, and
// derivatives are finite differences.

#include <cmath>
#include <random>
#include <vector>

#include "hedgeopt/symmat.hpp"

namespace oracle {

using hedgeopt::SquareMatrix;
using hedgeopt::SymMatrix;
using hedgeopt::Vec;

inline SymMatrix random_symmetric(std::mt19937_64& rng, int d, double lo = -5.0, double hi = 5.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    SymMatrix a(d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) a.set(i, j, u(rng));
    return a;
}

inline SquareMatrix random_square(std::mt19937_64& rng, int d, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    SquareMatrix a(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = u(rng);
    return a;
}

/// Diagonally dominated, hence comfortably invertible.
inline SquareMatrix random_well_conditioned(std::mt19937_64& rng, int d) {
    SquareMatrix a = random_square(rng, d);
    for (int i = 0; i < d; ++i) a(i, i) += (a(i, i) >= 0 ? 1.0 : -1.0) * (d + 1.0);
    return a;
}

/// b^T b.
inline SymMatrix random_psd(std::mt19937_64& rng, int d) {
    const SquareMatrix b = random_square(rng, d, -2.0, 2.0);
    SquareMatrix p = b.transpose() * b;
    return SymMatrix::symmetrized(p);
}

/// Orthogonal matrix by modified Gram-Schmidt on a random square matrix.
inline SquareMatrix random_orthogonal(std::mt19937_64& rng, int d) {
    SquareMatrix a = random_square(rng, d);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < j; ++k) {
            double dot = 0.0;
            for (int i = 0; i < d; ++i) dot += a(i, j) * a(i, k);
            for (int i = 0; i < d; ++i) a(i, j) -= dot * a(i, k);
        }
        double nrm = 0.0;
        for (int i = 0; i < d; ++i) nrm += a(i, j) * a(i, j);
        nrm = std::sqrt(nrm);
        for (int i = 0; i < d; ++i) a(i, j) /= nrm;
    }
    return a;
}

inline double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline double frob_diff(const SquareMatrix& a, const SquareMatrix& b) { return (a - b).frobenius_norm(); }

/// Naive double loop for v^T h v.
inline double naive_quad_form(const SymMatrix& h, const Vec& v) {
    double s = 0.0;
    for (int i = 0; i < v.size(); ++i)
        for (int j = 0; j < v.size(); ++j) s += v[i] * h(i, j) * v[j];
    return s;
}

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// P(S1_T >= S2_T) from direct draws of the terminal log-prices of the
/// correlated Black-Scholes model with zero rates.
inline McEstimate exchange_binary_mc(double s1, double s2, double sig1, double sig2, double rho, double tau, int n,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    const double sq = std::sqrt(tau);
    double hits = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z1 = g(rng);
        const double z2 = rho * z1 + std::sqrt(1.0 - rho * rho) * g(rng);
        const double l1 = std::log(s1) - 0.5 * sig1 * sig1 * tau + sig1 * sq * z1;
        const double l2 = std::log(s2) - 0.5 * sig2 * sig2 * tau + sig2 * sq * z2;
        if (l1 >= l2) hits += 1.0;
    }
    const double p = hits / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

/// P(S1_T >= S2_T) from the Gaussian law of log(S1_T / S2_T); with `minus_one` it returns
/// P - 1 = -P(S1_T < S2_T) instead. The shift leaves every derivative unchanged, and computing
/// the small tail directly keeps finite differences free of cancellation far from the money.
inline double exchange_binary_tail_price(const Vec& s, double sig1, double sig2, double rho, double tau, bool minus_one) {
    const double v = std::sqrt((sig1 * sig1 - 2.0 * rho * sig1 * sig2 + sig2 * sig2) * tau);
    const double d = (std::log(s[0] / s[1]) + 0.5 * (sig2 * sig2 - sig1 * sig1) * tau) / v;
    return minus_one ? -0.5 * std::erfc(d / std::sqrt(2.0)) : 0.5 * std::erfc(-d / std::sqrt(2.0));
}

/// Mean of a one-asset payoff over direct terminal draws.
template <class Payoff>
McEstimate vanilla_mc(double s, double sig, double tau, Payoff&& f, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double st = s * std::exp(-0.5 * sig * sig * tau + sig * std::sqrt(tau) * g(rng));
        const double v = f(st);
        sum += v;
        sum2 += v * v;
    }
    const double m = sum / n;
    return {m, std::sqrt((sum2 / n - m * m) / n)};
}

/// Gradient of f at s by Richardson-extrapolated central differences; step rel * s_i.
template <class F>
Vec fd_gradient(F&& f, const Vec& s, double rel) {
    Vec g(s.size());
    for (int i = 0; i < s.size(); ++i) {
        const auto central = [&](double h) {
            Vec up = s, dn = s;
            up[i] += h;
            dn[i] -= h;
            return (f(up) - f(dn)) / (2.0 * h);
        };
        const double h = rel * s[i];
        g[i] = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    }
    return g;
}

/// Hessian of f at s by Richardson-extrapolated central differences; step rel * s_i.
template <class F>
SquareMatrix fd_hessian(F&& f, const Vec& s, double rel) {
    const int d = s.size();
    SquareMatrix hess(d);
    const double f0 = f(s);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const auto at = [&](double a, double b, double hi, double hj) {
                Vec x = s;
                x[i] += a * hi;
                x[j] += b * hj;
                return f(x);
            };
            const auto central = [&](double scale) {
                const double hi = scale * rel * s[i];
                const double hj = scale * rel * s[j];
                if (i == j) return (at(0.5, 0.5, hi, hi) - 2.0 * f0 + at(-0.5, -0.5, hi, hi)) / (hi * hi);
                return (at(1, 1, hi, hj) - at(1, -1, hi, hj) - at(-1, 1, hi, hj) + at(-1, -1, hi, hj)) / (4.0 * hi * hj);
            };
            hess(i, j) = (4.0 * central(0.5) - central(1.0)) / 3.0;
        }
    }
    return hess;
}

inline double max_abs(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Trapezoid rule on interior points of a sampled integrand with spacing h.
inline double trapezoid(const std::vector<double>& f, double h) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * h;
}

}  // namespace oracle
