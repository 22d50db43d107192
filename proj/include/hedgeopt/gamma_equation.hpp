#pragma once
// The optimal-ellipsoid matrix equation
//
//     2 tr(x) x + 4 x^2 = c^2,     x symmetric PSD,
//
// solved through the spectrum of c: the trace y = tr(x) is the unique
// nonnegative zero of h(lambda, y) = (4 + d) y - sum_j sqrt(y^2 + 4 lambda_j^2),
// and x shares eigenvectors with c with eigenvalues (-y + sqrt(y^2 + 4 lambda_j^2)) / 4.

#include <cmath>
#include <span>
#include <string>

#include "hedgeopt/errors.hpp"
#include "hedgeopt/symmat.hpp"

namespace hedgeopt {

struct GammaSolution {
    SymMatrix x;
    double trace_y = 0.0;
    double residual = 0.0;  // ||2 tr(x) x + 4 x^2 - c^2||_F
};

struct EllipsoidSpec {
    SymMatrix lambda;
    SymMatrix lambda_mu;
    double bump_weight = 0.0;
};

/// h(lambda, y); strictly increasing in y with slope >= 4.
inline double trace_equation(std::span<const double> lambda, double y) noexcept {
    double s = 0.0;
    for (double l : lambda) s += std::hypot(y, 2.0 * l);
    return (4.0 + static_cast<double>(lambda.size())) * y - s;
}

/// Bracket [0, d |lambda| / sqrt(4 + 2d)] containing the trace root.
inline double trace_root_upper_bound(std::span<const double> lambda) noexcept {
    double sq = 0.0;
    for (double l : lambda) sq += l * l;
    const double d = static_cast<double>(lambda.size());
    return d * std::sqrt(sq) / std::sqrt(4.0 + 2.0 * d);
}

/// Unique y >= 0 with h(lambda, y) = 0: bisection on the bracket, then three Newton steps.
inline double trace_root(std::span<const double> lambda) {
    if (lambda.empty()) throw DomainError("trace_root: empty eigenvalue vector");
    double norm_sq = 0.0;
    for (double l : lambda) {
        if (!std::isfinite(l)) throw DomainError("trace_root: non-finite eigenvalue");
        norm_sq += l * l;
    }
    const double norm = std::sqrt(norm_sq);
    double lo = 0.0;
    double hi = trace_root_upper_bound(lambda);
    if (hi == 0.0) return 0.0;

    const double width = 1e-14 * (1.0 + norm);
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (trace_equation(lambda, mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }

    double y = 0.5 * (lo + hi);
    const double d = static_cast<double>(lambda.size());
    for (int it = 0; it < 3; ++it) {
        double slope = 4.0 + d;
        for (double l : lambda) {
            const double r = std::hypot(y, 2.0 * l);
            if (r > 0.0) slope -= y / r;
        }
        const double next = y - trace_equation(lambda, y) / slope;
        y = std::clamp(next, lo, hi);
    }
    return y;
}

/// Eigenvalue of x paired with eigenvalue lambda of c, in cancellation-free form.
inline double gamma_eigenvalue(double y, double lambda) noexcept {
    const double four_l2 = 4.0 * lambda * lambda;
    if (four_l2 == 0.0) return 0.0;
    return four_l2 / (4.0 * (y + std::hypot(y, 2.0 * lambda)));
}

/// ||2 tr(x) x + 4 x^2 - c^2||_F.
inline double gamma_residual(const SymMatrix& x, const SymMatrix& c) {
    const SquareMatrix& xm = x.matrix();
    const SquareMatrix& cm = c.matrix();
    const SquareMatrix r = (2.0 * x.trace()) * xm + 4.0 * (xm * xm) - cm * cm;
    return r.frobenius_norm();
}

inline GammaSolution solve_gamma_matrix(const SymMatrix& c) {
    const Spectrum sp = eigh_sym(c);
    const double y = trace_root(sp.eigenvalues.span());
    Vec xs(c.dim());
    for (int k = 0; k < c.dim(); ++k) xs[k] = gamma_eigenvalue(y, sp.eigenvalues[k]);
    GammaSolution out{from_spectrum(sp.basis, xs), y, 0.0};
    out.residual = gamma_residual(out.x, c);
    return out;
}

/// tr(x(c)) without assembling x; this is the integrand of the lower bound.
inline double gamma_trace(const SymMatrix& c) {
    const Spectrum sp = eigh_sym(c);
    return trace_root(sp.eigenvalues.span());
}

/// Lambda = sigma^{-T} x sigma^{-1}.
inline SymMatrix lambda_of(const SquareMatrix& sigma, const SymMatrix& x) {
    SquareMatrix::require_same_dim(sigma.dim(), x.dim());
    return congruence(mat_inverse(sigma), x);
}

/// Mollifier chi: 1 on (-inf, 1/2], 0 on [1, inf), cubic smoothstep in between.
inline double mollifier(double x) noexcept {
    if (x <= 0.5) return 1.0;
    if (x >= 1.0) return 0.0;
    const double t = 2.0 * x - 1.0;
    return 1.0 - t * t * (3.0 - 2.0 * t);
}

/// Lambda^mu = Lambda + mu * chi(lambda_min(Lambda) / mu) * I. With mu = 0 the bump is dropped.
inline EllipsoidSpec lambda_mu_of(const SymMatrix& lambda, double mu) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("lambda_mu_of: mu must be finite and >= 0");
    if (mu == 0.0) return {lambda, lambda, 0.0};
    const double w = mollifier(min_eigenvalue(lambda) / mu);
    SymMatrix bumped = lambda;
    for (int i = 0; i < lambda.dim(); ++i) bumped.set(i, i, lambda(i, i) + mu * w);
    return {lambda, bumped, w};
}

}  // namespace hedgeopt
