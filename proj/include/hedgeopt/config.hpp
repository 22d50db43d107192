#pragma once
// Experiment configuration: a single strict JSON document. Unknown keys are rejected.

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hedgeopt/errors.hpp"
#include "hedgeopt/market.hpp"
#include "json.hpp"

namespace hedgeopt {

enum class Strategy { Stochastic, Uniform, Fractional, Karandikar };

inline constexpr std::array<Strategy, 4> kAllStrategies{Strategy::Stochastic, Strategy::Uniform, Strategy::Fractional,
                                                        Strategy::Karandikar};

inline std::string_view strategy_name(Strategy s) noexcept {
    switch (s) {
        case Strategy::Stochastic: return "stochastic";
        case Strategy::Uniform: return "uniform";
        case Strategy::Fractional: return "fractional";
        case Strategy::Karandikar: return "karandikar";
    }
    return "unknown";
}

inline Strategy parse_strategy(std::string_view name) {
    for (Strategy s : kAllStrategies)
        if (strategy_name(s) == name) return s;
    throw DomainError("config: unknown strategy '" + std::string(name) + "'");
}

struct ExperimentConfig {
    std::string payoff = "exchange_binary";
    std::vector<double> spot{100.0, 100.0};
    double sigma1 = 0.3;
    double sigma2 = 0.4;
    double rho = 0.5;
    double maturity = 1.0;
    std::optional<double> strike;
    double epsilon = 0.05;
    double mu = 0.0;
    int n_bar = 50000;
    int n_paths = 1000;
    std::uint64_t seed = 1;
    std::vector<Strategy> strategies{Strategy::Stochastic, Strategy::Uniform, Strategy::Fractional};
    std::string output_dir = "out";

    [[nodiscard]] bool has(Strategy s) const {
        return std::find(strategies.begin(), strategies.end(), s) != strategies.end();
    }

    /// Requested strategies in canonical column order.
    [[nodiscard]] std::vector<Strategy> ordered_strategies() const {
        std::vector<Strategy> out;
        for (Strategy s : kAllStrategies)
            if (has(s)) out.push_back(s);
        return out;
    }

    [[nodiscard]] MarketModel model() const {
        if (payoff == "exchange_binary") {
            if (spot.size() != 2) throw DomainError("config: exchange_binary needs a two-element spot");
            return MarketModel::exchange_binary(spot[0], spot[1], sigma1, sigma2, rho, maturity);
        }
        if (payoff == "call" || payoff == "digital_call") {
            if (spot.size() != 1) throw DomainError("config: " + payoff + " needs a one-element spot");
            if (!strike) throw DomainError("config: " + payoff + " needs a strike");
            return payoff == "call" ? MarketModel::call(spot[0], sigma1, *strike, maturity)
                                    : MarketModel::digital_call(spot[0], sigma1, *strike, maturity);
        }
        throw DomainError("config: unknown payoff '" + payoff + "'");
    }

    /// Throws DomainError on any invalid field.
    void validate() const {
        (void)model();
        if (!(epsilon > 0.0)) throw DomainError("config: epsilon must be > 0");
        if (!(mu >= 0.0)) throw DomainError("config: mu must be >= 0");
        if (n_bar < 2) throw DomainError("config: n_bar must be >= 2");
        if (n_paths < 1) throw DomainError("config: n_paths must be >= 1");
        if (strategies.empty()) throw DomainError("config: at least one strategy is required");
    }
};

enum class Preset { Paper, Desk };

inline Preset parse_preset(std::string_view name) {
    if (name == "paper") return Preset::Paper;
    if (name == "desk") return Preset::Desk;
    throw DomainError("unknown preset '" + std::string(name) + "' (expected paper or desk)");
}

/// paper: n_bar = 50000, 1000 paths. desk: n_bar = 20000, 200 paths.
inline void apply_preset(ExperimentConfig& cfg, Preset p) {
    if (p == Preset::Paper) {
        cfg.n_bar = 50000;
        cfg.n_paths = 1000;
    } else {
        cfg.n_bar = 20000;
        cfg.n_paths = 200;
    }
}

namespace detail {

template <class T>
T config_field(const nlohmann::json& j, const std::string& key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("config: field '" + key + "': " + e.what());
    }
}

}  // namespace detail

/// Overlays the keys present in `j` onto `base`.
inline ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {}) {
    if (!j.is_object()) throw DomainError("config: top level must be a JSON object");
    static const std::array<std::string_view, 15> known{"payoff", "spot",    "sigma1", "sigma2",     "rho",
                                                        "sigma",  "T",       "strike", "epsilon",    "mu",
                                                        "n_bar",  "n_paths", "seed",   "strategies", "output_dir"};
    for (const auto& item : j.items())
        if (std::find(known.begin(), known.end(), item.key()) == known.end())
            throw DomainError("config: unknown key '" + item.key() + "'");

    using detail::config_field;
    ExperimentConfig c = std::move(base);
    if (j.contains("payoff")) c.payoff = config_field<std::string>(j, "payoff");
    if (j.contains("spot")) c.spot = config_field<std::vector<double>>(j, "spot");
    if (j.contains("sigma1")) c.sigma1 = config_field<double>(j, "sigma1");
    if (j.contains("sigma")) c.sigma1 = config_field<double>(j, "sigma");
    if (j.contains("sigma2")) c.sigma2 = config_field<double>(j, "sigma2");
    if (j.contains("rho")) c.rho = config_field<double>(j, "rho");
    if (j.contains("T")) c.maturity = config_field<double>(j, "T");
    if (j.contains("strike")) c.strike = config_field<double>(j, "strike");
    if (j.contains("epsilon")) c.epsilon = config_field<double>(j, "epsilon");
    if (j.contains("mu")) c.mu = config_field<double>(j, "mu");
    if (j.contains("n_bar")) c.n_bar = config_field<int>(j, "n_bar");
    if (j.contains("n_paths")) c.n_paths = config_field<int>(j, "n_paths");
    if (j.contains("seed")) c.seed = config_field<std::uint64_t>(j, "seed");
    if (j.contains("output_dir")) c.output_dir = config_field<std::string>(j, "output_dir");
    if (j.contains("strategies")) {
        c.strategies.clear();
        for (const auto& name : config_field<std::vector<std::string>>(j, "strategies")) {
            const Strategy s = parse_strategy(name);
            if (!c.has(s)) c.strategies.push_back(s);
        }
    }
    c.validate();
    return c;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(path + ": " + e.what());
    }
}

}  // namespace hedgeopt
