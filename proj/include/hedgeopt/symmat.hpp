#pragma once
// Dense linear algebra for small (d <= 8) real matrices: Jacobi eigensolver,
// LU inversion, PSD square root and quadratic forms. Everything here is a pure
// value-semantics function; no allocation happens on the hot path.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>

#include "hedgeopt/errors.hpp"

namespace hedgeopt {

inline constexpr int kMaxDim = 8;

/// Fixed-capacity real vector of length 1..kMaxDim.
class Vec {
public:
    Vec() = default;
    explicit Vec(int n, double fill = 0.0) : n_(checked_dim(n)) {
        std::fill_n(v_.begin(), n_, fill);
    }
    Vec(std::initializer_list<double> xs) : n_(checked_dim(static_cast<int>(xs.size()))) {
        std::copy(xs.begin(), xs.end(), v_.begin());
    }
    explicit Vec(std::span<const double> xs) : n_(checked_dim(static_cast<int>(xs.size()))) {
        std::copy(xs.begin(), xs.end(), v_.begin());
    }

    [[nodiscard]] int size() const noexcept { return n_; }
    double& operator[](int i) noexcept { return v_[static_cast<std::size_t>(i)]; }
    double operator[](int i) const noexcept { return v_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] const double* begin() const noexcept { return v_.data(); }
    [[nodiscard]] const double* end() const noexcept { return v_.data() + n_; }
    [[nodiscard]] std::span<const double> span() const noexcept { return {v_.data(), static_cast<std::size_t>(n_)}; }

    [[nodiscard]] double norm() const noexcept {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += v_[i] * v_[i];
        return std::sqrt(s);
    }
    [[nodiscard]] double dot(const Vec& o) const noexcept {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += v_[i] * o.v_[i];
        return s;
    }
    [[nodiscard]] bool is_finite() const noexcept {
        return std::all_of(begin(), end(), [](double x) { return std::isfinite(x); });
    }

    friend Vec operator-(const Vec& a, const Vec& b) noexcept {
        Vec r = a;
        for (int i = 0; i < a.n_; ++i) r.v_[i] -= b.v_[i];
        return r;
    }
    friend bool operator==(const Vec& a, const Vec& b) noexcept {
        return a.n_ == b.n_ && std::equal(a.begin(), a.end(), b.begin());
    }

    static int checked_dim(int n) {
        if (n < 1 || n > kMaxDim) throw DomainError("vector dimension must be in 1..8, got " + std::to_string(n));
        return n;
    }

private:
    int n_ = 1;
    std::array<double, kMaxDim> v_{};
};

/// Row-major d x d real matrix, 1 <= d <= 8.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int dim) : n_(Vec::checked_dim(dim)) {}
    SquareMatrix(std::initializer_list<std::initializer_list<double>> rows)
        : n_(Vec::checked_dim(static_cast<int>(rows.size()))) {
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != n_) throw DomainError("matrix rows must all have length " + std::to_string(n_));
            int j = 0;
            for (double x : row) (*this)(i, j++) = x;
            ++i;
        }
    }

    static SquareMatrix identity(int dim) {
        SquareMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
    static SquareMatrix diagonal(const Vec& d) {
        SquareMatrix m(d.size());
        for (int i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    [[nodiscard]] int dim() const noexcept { return n_; }
    double& operator()(int i, int j) noexcept { return a_[static_cast<std::size_t>(i * kMaxDim + j)]; }
    double operator()(int i, int j) const noexcept { return a_[static_cast<std::size_t>(i * kMaxDim + j)]; }

    [[nodiscard]] SquareMatrix transpose() const noexcept {
        SquareMatrix t(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    [[nodiscard]] double trace() const noexcept {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += (*this)(i, i);
        return s;
    }
    [[nodiscard]] double frobenius_norm() const noexcept {
        double s = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) s += (*this)(i, j) * (*this)(i, j);
        return std::sqrt(s);
    }
    /// Maximum absolute row sum.
    [[nodiscard]] double inf_norm() const noexcept {
        double best = 0.0;
        for (int i = 0; i < n_; ++i) {
            double s = 0.0;
            for (int j = 0; j < n_; ++j) s += std::abs((*this)(i, j));
            best = std::max(best, s);
        }
        return best;
    }
    [[nodiscard]] bool is_finite() const noexcept {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (!std::isfinite((*this)(i, j))) return false;
        return true;
    }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        require_same_dim(a.n_, b.n_);
        SquareMatrix r(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.n_; ++k) {
                const double aik = a(i, k);
                for (int j = 0; j < a.n_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend Vec operator*(const SquareMatrix& a, const Vec& v) {
        require_same_dim(a.n_, v.size());
        Vec r(a.n_);
        for (int i = 0; i < a.n_; ++i) {
            double s = 0.0;
            for (int j = 0; j < a.n_; ++j) s += a(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }
    friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
        require_same_dim(a.n_, b.n_);
        SquareMatrix r(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j) r(i, j) = a(i, j) + b(i, j);
        return r;
    }
    friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
        require_same_dim(a.n_, b.n_);
        SquareMatrix r(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j) r(i, j) = a(i, j) - b(i, j);
        return r;
    }
    friend SquareMatrix operator*(double s, const SquareMatrix& a) noexcept {
        SquareMatrix r(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j) r(i, j) = s * a(i, j);
        return r;
    }
    friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) noexcept {
        if (a.n_ != b.n_) return false;
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j)
                if (a(i, j) != b(i, j)) return false;
        return true;
    }

    static void require_same_dim(int a, int b) {
        if (a != b) throw DomainError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }

private:
    int n_ = 1;
    std::array<double, kMaxDim * kMaxDim> a_{};
};

/// Symmetric matrix. Symmetry is structural: every mutation writes both (i,j) and (j,i).
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int dim) : m_(dim) {}
    SymMatrix(std::initializer_list<std::initializer_list<double>> rows) : SymMatrix(SquareMatrix(rows)) {}

    /// Requires exact symmetry; throws DomainError naming the first offending pair.
    explicit SymMatrix(const SquareMatrix& m) : m_(m) {
        for (int i = 0; i < m.dim(); ++i)
            for (int j = i + 1; j < m.dim(); ++j)
                if (m(i, j) != m(j, i))
                    throw DomainError("matrix is not symmetric: entry (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") != entry (" + std::to_string(j) + "," + std::to_string(i) + ")");
    }

    /// (m + m^T) / 2.
    static SymMatrix symmetrized(const SquareMatrix& m) {
        SymMatrix s(m.dim());
        for (int i = 0; i < m.dim(); ++i) {
            s.m_(i, i) = m(i, i);
            for (int j = i + 1; j < m.dim(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
        }
        return s;
    }
    static SymMatrix identity(int dim) { return SymMatrix(SquareMatrix::identity(dim)); }
    static SymMatrix diagonal(const Vec& d) { return SymMatrix(SquareMatrix::diagonal(d)); }

    [[nodiscard]] int dim() const noexcept { return m_.dim(); }
    double operator()(int i, int j) const noexcept { return m_(i, j); }
    void set(int i, int j, double x) noexcept {
        m_(i, j) = x;
        m_(j, i) = x;
    }
    [[nodiscard]] const SquareMatrix& matrix() const noexcept { return m_; }
    [[nodiscard]] double trace() const noexcept { return m_.trace(); }
    [[nodiscard]] double frobenius_norm() const noexcept { return m_.frobenius_norm(); }
    [[nodiscard]] bool is_finite() const noexcept { return m_.is_finite(); }

    friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) { return SymMatrix(a.m_ + b.m_); }
    friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) { return SymMatrix(a.m_ - b.m_); }
    friend SymMatrix operator*(double s, const SymMatrix& a) { return SymMatrix(s * a.m_); }
    friend bool operator==(const SymMatrix& a, const SymMatrix& b) noexcept { return a.m_ == b.m_; }

private:
    SquareMatrix m_;
};

struct Spectrum {
    Vec eigenvalues;     // descending
    SquareMatrix basis;  // orthogonal; column k is the eigenvector of eigenvalues[k]
};

namespace detail {

inline void require_finite(const SquareMatrix& a, const char* what) {
    if (!a.is_finite()) throw DomainError(std::string(what) + ": matrix has non-finite entries");
}

}  // namespace detail

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Stops once the off-diagonal Frobenius mass drops below 1e-14 * ||a||_F (at most
/// 100 sweeps). Eigenvalues come back in descending order; each eigenvector is signed
/// so that its largest-magnitude component is positive.
inline Spectrum eigh_sym(const SymMatrix& a) {
    detail::require_finite(a.matrix(), "eigh_sym");
    const int n = a.dim();
    SquareMatrix w = a.matrix();
    SquareMatrix v = SquareMatrix::identity(n);
    const double scale = w.frobenius_norm();
    const double tol = 1e-14 * scale;

    for (int sweep = 0; sweep < 100 && scale > 0.0; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) off += w(i, j) * w(i, j);
        if (std::sqrt(off) <= tol) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = w(p, q);
                if (apq == 0.0) continue;
                const double theta = (w(q, q) - w(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double wkp = w(k, p);
                    const double wkq = w(k, q);
                    w(k, p) = c * wkp - s * wkq;
                    w(k, q) = s * wkp + c * wkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double wpk = w(p, k);
                    const double wqk = w(q, k);
                    w(p, k) = c * wpk - s * wqk;
                    w(q, k) = s * wpk + c * wqk;
                }
                w(p, q) = 0.0;
                w(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::array<int, kMaxDim> order{};
    std::iota(order.begin(), order.begin() + n, 0);
    std::stable_sort(order.begin(), order.begin() + n, [&](int x, int y) { return w(x, x) > w(y, y); });

    Spectrum out{Vec(n), SquareMatrix(n)};
    for (int k = 0; k < n; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        out.eigenvalues[k] = w(src, src);
        int big = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(v(i, src)) > std::abs(v(big, src))) big = i;
        const double sign = v(big, src) < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) out.basis(i, k) = sign * v(i, src);
    }
    return out;
}

/// basis * Diag(values) * basis^T, symmetrized.
inline SymMatrix from_spectrum(const SquareMatrix& basis, const Vec& values) {
    const int n = basis.dim();
    SquareMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += basis(i, k) * values[k] * basis(j, k);
            r(i, j) = s;
            r(j, i) = s;
        }
    return SymMatrix(r);
}

inline double min_eigenvalue(const SymMatrix& a) {
    const Spectrum sp = eigh_sym(a);
    return sp.eigenvalues[sp.eigenvalues.size() - 1];
}

/// LU with partial pivoting. A pivot smaller than 1e-13 * ||a||_inf is declared singular.
inline SquareMatrix mat_inverse(const SquareMatrix& a) {
    detail::require_finite(a, "mat_inverse");
    const int n = a.dim();
    const double threshold = 1e-13 * a.inf_norm();
    SquareMatrix lu = a;
    std::array<int, kMaxDim> perm{};
    std::iota(perm.begin(), perm.begin() + n, 0);

    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
        const double pivot = std::abs(lu(piv, k));
        if (pivot == 0.0 || pivot < threshold)
            throw SingularMatrixError("mat_inverse: matrix is singular (pivot " + std::to_string(pivot) + ")", pivot);
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(piv)]);
        }
        for (int i = k + 1; i < n; ++i) {
            lu(i, k) /= lu(k, k);
            const double l = lu(i, k);
            for (int j = k + 1; j < n; ++j) lu(i, j) -= l * lu(k, j);
        }
    }

    SquareMatrix inv(n);
    for (int col = 0; col < n; ++col) {
        Vec x(n);
        for (int i = 0; i < n; ++i) {
            double s = perm[static_cast<std::size_t>(i)] == col ? 1.0 : 0.0;
            for (int j = 0; j < i; ++j) s -= lu(i, j) * x[j];
            x[i] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = x[i];
            for (int j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
            x[i] = s / lu(i, i);
        }
        for (int i = 0; i < n; ++i) inv(i, col) = x[i];
    }
    return inv;
}

/// Unique symmetric PSD square root. Eigenvalues in [-1e-8, 0) are treated as roundoff and clamped.
inline SymMatrix psd_sqrt(const SymMatrix& a) {
    Spectrum sp = eigh_sym(a);
    Vec roots(a.dim());
    for (int k = 0; k < a.dim(); ++k) {
        const double lam = sp.eigenvalues[k];
        if (lam < -1e-8) throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(lam) + " is negative", lam);
        roots[k] = std::sqrt(std::max(lam, 0.0));
    }
    return from_spectrum(sp.basis, roots);
}

/// v^T h v, summed as the plain double loop over (i, j).
inline double quad_form(const SymMatrix& h, const Vec& v) {
    if (h.dim() != v.size())
        throw DomainError("quad_form: matrix is " + std::to_string(h.dim()) + "x" + std::to_string(h.dim()) +
                          " but vector has length " + std::to_string(v.size()));
    double s = 0.0;
    for (int i = 0; i < v.size(); ++i)
        for (int j = 0; j < v.size(); ++j) s += v[i] * h(i, j) * v[j];
    return s;
}

/// p^T a p, symmetrized.
inline SymMatrix congruence(const SquareMatrix& p, const SymMatrix& a) {
    return SymMatrix::symmetrized(p.transpose() * a.matrix() * p);
}

}  // namespace hedgeopt
