#pragma once
// Counter-based Gaussian source: each draw is a pure function of
// (seed, path_id, step), so a path's noise does not depend on which worker
// simulates it or in what order.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace hedgeopt {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t path_id) noexcept
        : key_(splitmix64(splitmix64(seed) ^ splitmix64(path_id + 0x632be59bd9b4e019ULL))) {}

    /// 64 random bits for (key, counter).
    [[nodiscard]] std::uint64_t bits(std::uint64_t counter) const noexcept {
        return splitmix64(key_ ^ splitmix64(counter));
    }

    /// Uniform in (0, 1].
    [[nodiscard]] double uniform(std::uint64_t counter) const noexcept {
        return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
    }

    /// Two independent standard normals for a given step (Box-Muller).
    [[nodiscard]] std::array<double, 2> normal_pair(std::uint64_t step) const noexcept {
        const double u1 = uniform(2 * step);
        const double u2 = uniform(2 * step + 1);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

private:
    std::uint64_t key_;
};

}  // namespace hedgeopt
