#pragma once
// The pricing surface consumed by schedules and measurements. MarketModel is
// adapted through BlackScholesPricer; tests substitute hand-built pricers
// (zero Gamma, frozen sphere, linear payoffs) through the same concept.

#include <concepts>

#include "hedgeopt/market.hpp"

namespace hedgeopt {

template <class P>
concept Pricer = requires(const P& p, double t, const Vec& s) {
    { p.dim() } -> std::convertible_to<int>;
    { p.maturity() } -> std::convertible_to<double>;
    { p.greeks(t, s) } -> std::same_as<GreekBundle>;
    { p.payoff(s) } -> std::convertible_to<double>;
    { p.sigma(s) } -> std::same_as<SquareMatrix>;
};

class BlackScholesPricer {
public:
    explicit BlackScholesPricer(MarketModel model) : model_(std::move(model)) {}

    [[nodiscard]] int dim() const noexcept { return model_.dim(); }
    [[nodiscard]] double maturity() const noexcept { return model_.maturity(); }
    [[nodiscard]] GreekBundle greeks(double t, const Vec& s) const { return hedgeopt::greeks(model_, t, s); }
    [[nodiscard]] double payoff(const Vec& s) const { return hedgeopt::payoff(model_, s); }
    [[nodiscard]] SquareMatrix sigma(const Vec& s) const { return sigma_matrix(model_, s); }
    [[nodiscard]] const MarketModel& model() const noexcept { return model_; }

private:
    MarketModel model_;
};

}  // namespace hedgeopt
