#pragma once

#include <cmath>

namespace polysieve {

// Color-budget stretch used by the exponential-space sieves.
inline constexpr double kAlphaStar = 1.302017;

// tau(alpha) = (1 - 1/alpha)^(alpha-1) e, with tau(1) = e.
inline double tau(double alpha) {
    if (alpha <= 1.0) return std::exp(1.0);
    return std::pow(1.0 - 1.0 / alpha, alpha - 1.0) * std::exp(1.0);
}

// Root of alpha ln(2(alpha-1)/alpha) = -1, the stretch minimizing the
// shared-sieve running-time base alpha/(alpha-1) =~ 4.312.
inline double alpha_star_root() {
    auto f = [](double a) { return a * std::log(2.0 * (a - 1.0) / a) + 1.0; };
    double lo = 1.05, hi = 1.95;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace polysieve
