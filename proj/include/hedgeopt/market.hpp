#pragma once
// Black-Scholes markets with zero rates: a two-asset correlated model carrying an
// exchange binary 1{S1_T >= S2_T}, and a one-asset model carrying a call or a
// digital call. Prices, Deltas and Gammas are closed form.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hedgeopt/errors.hpp"
#include "hedgeopt/symmat.hpp"

namespace hedgeopt {

enum class PayoffKind { ExchangeBinary, Call, DigitalCall };

inline std::string to_string(PayoffKind k) {
    switch (k) {
        case PayoffKind::ExchangeBinary: return "exchange_binary";
        case PayoffKind::Call: return "call";
        case PayoffKind::DigitalCall: return "digital_call";
    }
    return "unknown";
}

struct GreekBundle {
    double price = 0.0;
    Vec delta;
    SymMatrix gamma;
    double valid_at = 0.0;
};

/// Diffusion dS = Diag(S) L dB with constant lower-triangular log-volatility factor L.
class MarketModel {
public:
    static MarketModel exchange_binary(double s1, double s2, double sigma1, double sigma2, double rho, double maturity) {
        MarketModel m;
        m.payoff_ = PayoffKind::ExchangeBinary;
        m.spot_ = Vec{s1, s2};
        m.sigma1_ = sigma1;
        m.sigma2_ = sigma2;
        m.rho_ = rho;
        m.maturity_ = maturity;
        m.validate();
        return m;
    }
    static MarketModel call(double spot, double sigma, double strike, double maturity) {
        return vanilla(PayoffKind::Call, spot, sigma, strike, maturity);
    }
    static MarketModel digital_call(double spot, double sigma, double strike, double maturity) {
        return vanilla(PayoffKind::DigitalCall, spot, sigma, strike, maturity);
    }
    /// Defaults of the two-asset experiment: S0 = (100, 100), sigma = (0.3, 0.4), rho = 0.5, T = 1.
    static MarketModel reference_exchange_binary() { return exchange_binary(100.0, 100.0, 0.3, 0.4, 0.5, 1.0); }

    [[nodiscard]] int dim() const noexcept { return spot_.size(); }
    [[nodiscard]] const Vec& spot() const noexcept { return spot_; }
    [[nodiscard]] double sigma1() const noexcept { return sigma1_; }
    [[nodiscard]] double sigma2() const noexcept { return sigma2_; }
    [[nodiscard]] double rho() const noexcept { return rho_; }
    [[nodiscard]] double maturity() const noexcept { return maturity_; }
    [[nodiscard]] double strike() const noexcept { return strike_; }
    [[nodiscard]] PayoffKind payoff_kind() const noexcept { return payoff_; }

    /// Lower-triangular L with L L^T the covariance of log-returns per unit time.
    [[nodiscard]] SquareMatrix log_vol_factor() const {
        if (dim() == 1) return SquareMatrix{{sigma1_}};
        return SquareMatrix{{sigma1_, 0.0}, {rho_ * sigma2_, std::sqrt(1.0 - rho_ * rho_) * sigma2_}};
    }

private:
    static MarketModel vanilla(PayoffKind kind, double spot, double sigma, double strike, double maturity) {
        MarketModel m;
        m.payoff_ = kind;
        m.spot_ = Vec{spot};
        m.sigma1_ = sigma;
        m.strike_ = strike;
        m.maturity_ = maturity;
        m.validate();
        return m;
    }

    void validate() const {
        for (double s : spot_)
            if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("market: spot prices must be positive and finite");
        if (!(maturity_ > 0.0) || !std::isfinite(maturity_)) throw DomainError("market: maturity must be positive");
        if (!(sigma1_ > 0.0) || !std::isfinite(sigma1_)) throw DomainError("market: volatility must be positive");
        if (payoff_ == PayoffKind::ExchangeBinary) {
            if (dim() != 2) throw DomainError("market: exchange binary requires two assets");
            if (!(sigma2_ > 0.0) || !std::isfinite(sigma2_)) throw DomainError("market: volatility must be positive");
            if (!(std::abs(rho_) < 1.0)) throw DomainError("market: correlation must satisfy |rho| < 1");
        } else {
            if (dim() != 1) throw DomainError("market: call and digital call require one asset");
            if (!(strike_ > 0.0) || !std::isfinite(strike_)) throw DomainError("market: strike must be positive");
        }
    }

    PayoffKind payoff_ = PayoffKind::ExchangeBinary;
    Vec spot_{100.0, 100.0};
    double sigma1_ = 0.3;
    double sigma2_ = 0.4;
    double rho_ = 0.5;
    double maturity_ = 1.0;
    double strike_ = 0.0;
};

inline double normal_pdf(double x) noexcept {
    return std::exp(-0.5 * x * x) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

inline double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace detail {

inline constexpr double kMaxD = 39.0;

inline double clamp_d(double d) noexcept { return std::clamp(d, -kMaxD, kMaxD); }

inline void require_before_maturity(const MarketModel& m, double t) {
    if (!(t < m.maturity())) throw MaturityError("greeks requested at t = " + std::to_string(t) + " >= T");
}

inline void require_positive(const Vec& s) {
    for (double x : s)
        if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("price vector must be positive and finite");
}

}  // namespace detail

/// Absolute volatility matrix sigma(s) = Diag(s) L.
inline SquareMatrix sigma_matrix(const MarketModel& model, const Vec& s) {
    SquareMatrix::require_same_dim(model.dim(), s.size());
    detail::require_positive(s);
    SquareMatrix sig = model.log_vol_factor();
    for (int i = 0; i < sig.dim(); ++i)
        for (int j = 0; j < sig.dim(); ++j) sig(i, j) *= s[i];
    return sig;
}

/// Price and sensitivities of 1{S1_T >= S2_T}.
///
/// log(S1_T / S2_T) is Gaussian with mean log(s1/s2) + (sigma2^2 - sigma1^2) tau / 2 and
/// variance vbar^2 tau, vbar^2 = sigma1^2 - 2 rho sigma1 sigma2 + sigma2^2, so the price
/// is N(d) with d = mean / (vbar sqrt(tau)).
inline GreekBundle greeks_exchange_binary(const MarketModel& model, double t, const Vec& s) {
    if (model.payoff_kind() != PayoffKind::ExchangeBinary) throw DomainError("greeks_exchange_binary: wrong payoff");
    detail::require_before_maturity(model, t);
    SquareMatrix::require_same_dim(2, s.size());
    detail::require_positive(s);
    const double s1v = model.sigma1();
    const double s2v = model.sigma2();
    const double vbar2 = s1v * s1v - 2.0 * model.rho() * s1v * s2v + s2v * s2v;
    if (!(vbar2 > 0.0)) throw DomainError("greeks_exchange_binary: degenerate spread volatility");
    const double tau = model.maturity() - t;
    const double v = std::sqrt(vbar2 * tau);
    const double d = detail::clamp_d((std::log(s[0] / s[1]) + 0.5 * (s2v * s2v - s1v * s1v) * tau) / v);
    const double pdf = normal_pdf(d);

    GreekBundle g;
    g.valid_at = t;
    g.price = normal_cdf(d);
    g.delta = Vec{pdf / (v * s[0]), -pdf / (v * s[1])};
    g.gamma = SymMatrix(2);
    g.gamma.set(0, 0, -pdf / (v * s[0] * s[0]) * (d / v + 1.0));
    g.gamma.set(1, 1, pdf / (v * s[1] * s[1]) * (1.0 - d / v));
    g.gamma.set(0, 1, d * pdf / (v * v * s[0] * s[1]));
    return g;
}

/// Call or digital call in the one-asset model.
inline GreekBundle greeks_vanilla(const MarketModel& model, double t, double x) {
    if (model.payoff_kind() == PayoffKind::ExchangeBinary) throw DomainError("greeks_vanilla: wrong payoff");
    detail::require_before_maturity(model, t);
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("greeks_vanilla: price must be positive");
    const double k = model.strike();
    const double vol = model.sigma1() * std::sqrt(model.maturity() - t);
    const double d_plus = detail::clamp_d(std::log(x / k) / vol + 0.5 * vol);
    const double d_minus = detail::clamp_d(d_plus - vol);

    GreekBundle g;
    g.valid_at = t;
    g.gamma = SymMatrix(1);
    if (model.payoff_kind() == PayoffKind::Call) {
        g.price = x * normal_cdf(d_plus) - k * normal_cdf(d_minus);
        g.delta = Vec{normal_cdf(d_plus)};
        g.gamma.set(0, 0, normal_pdf(d_plus) / (x * vol));
    } else {
        const double pdf = normal_pdf(d_minus);
        g.price = normal_cdf(d_minus);
        g.delta = Vec{pdf / (x * vol)};
        g.gamma.set(0, 0, -pdf / (x * x * vol) * (d_minus / vol + 1.0));
    }
    return g;
}

inline GreekBundle greeks(const MarketModel& model, double t, const Vec& s) {
    if (model.payoff_kind() == PayoffKind::ExchangeBinary) return greeks_exchange_binary(model, t, s);
    SquareMatrix::require_same_dim(1, s.size());
    return greeks_vanilla(model, t, s[0]);
}

inline double payoff(const MarketModel& model, const Vec& s) {
    switch (model.payoff_kind()) {
        case PayoffKind::ExchangeBinary: return s[0] >= s[1] ? 1.0 : 0.0;
        case PayoffKind::Call: return std::max(s[0] - model.strike(), 0.0);
        case PayoffKind::DigitalCall: return s[0] >= model.strike() ? 1.0 : 0.0;
    }
    return 0.0;
}

/// c = sigma(s)^T Gamma sigma(s).
inline SymMatrix gamma_to_c(const MarketModel& model, const Vec& s, const GreekBundle& bundle) {
    return congruence(sigma_matrix(model, s), bundle.gamma);
}

}  // namespace hedgeopt
