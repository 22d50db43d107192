// Hedge one simulated exchange-binary path along the optimal ellipsoid hitting
// times and along a uniform mesh with the same number of dates.

#include <cstdio>

#include "hedgeopt/hedgeopt.hpp"

int main() {
    using namespace hedgeopt;
    const BlackScholesPricer pricer(MarketModel::reference_exchange_binary());
    const int n_bar = 20000;
    const double epsilon = 0.05;

    const PathGrid path = simulate_path(pricer.model(), n_bar, /*seed=*/1, /*path_id=*/0);
    const PathTrack track = track_greeks(path, pricer);

    const Schedule optimal = ellipsoid_schedule(path, pricer, epsilon, /*mu=*/0.0);
    const HedgeReport r_opt = evaluate_schedule(path, optimal, track, pricer, epsilon);
    const HedgeReport r_uni = evaluate_schedule(path, uniform_schedule(r_opt.n_dates, n_bar), track, pricer, epsilon);

    std::printf("lower bound (int tr X dt)^2 = %.6g\n", r_opt.lower_bound * r_opt.lower_bound);
    std::printf("%-10s N = %4d  <Z>_T = %.6g  N<Z>_T = %.6g  beta = %.4f  Z_T = % .5f\n", "ellipsoid", r_opt.n_dates,
                r_opt.qv, r_opt.n_dates * r_opt.qv, r_opt.beta, r_opt.z_terminal);
    std::printf("%-10s N = %4d  <Z>_T = %.6g  N<Z>_T = %.6g  beta = %.4f  Z_T = % .5f\n", "uniform", r_uni.n_dates,
                r_uni.qv, r_uni.n_dates * r_uni.qv, r_uni.beta, r_uni.z_terminal);
    std::printf("eps^2 N = %.4f vs int tr(Lambda sigma sigma^T) dt = %.4f\n", r_opt.eps2n, r_opt.target_integral);
    return 0;
}
