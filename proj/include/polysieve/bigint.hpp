#pragma once

// Exact arbitrary-precision arithmetic used throughout the library.
// Counts produced by the evaluators must stay exact; nothing in here
// touches floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace polysieve {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int integer_sqrt(const Int& x) {
    if (x < 0) throw std::domain_error("integer_sqrt: negative input");
    return boost::multiprecision::sqrt(x);
}

inline Int factorial(long n) {
    Int r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline Int ipow(Int base, long exp) {
    Int r = 1;
    while (exp > 0) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

// exp(-x) for rational x >= 0 as an exact rational approximation via the
// truncated alternating series. The truncation error is below the last
// term, which for the arguments used here (x < 8, 40 terms) is < 1e-20.
inline Rat exp_neg(const Rat& x, int terms = 40) {
    if (x < 0) throw std::domain_error("exp_neg: negative argument");
    Rat sum = 0;
    Rat term = 1;
    for (int i = 0; i < terms; ++i) {
        sum += (i % 2 == 0) ? term : -term;
        term = term * x / (i + 1);
    }
    return sum;
}

}  // namespace polysieve
