#pragma once

// Exact integer linear algebra: fraction-free determinant (Bareiss) and
// the signed Pfaffian. These are the two evaluation kernels behind every
// polynomial in the library, so no floating point and no modular
// shortcuts appear here.

#include <stdexcept>
#include <utility>
#include <vector>

#include "polysieve/bigint.hpp"

namespace polysieve {

struct IntMatrix {
    int dim = 0;
    std::vector<Int> a;  // row-major

    explicit IntMatrix(int d = 0) : dim(d), a(static_cast<std::size_t>(d) * d) {}
    Int& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
    const Int& at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }
};

// Even-dimensional with M(i,j) = -M(j,i); validated on use.
struct SkewMatrix {
    int dim = 0;
    std::vector<Int> a;

    explicit SkewMatrix(int d = 0) : dim(d), a(static_cast<std::size_t>(d) * d) {}
    Int& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
    const Int& at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }

    void set_pair(int i, int j, const Int& v) {
        at(i, j) = v;
        at(j, i) = -v;
    }
};

inline void validate_skew(const SkewMatrix& m) {
    if (m.dim % 2 != 0) throw std::invalid_argument("skew matrix: odd dimension");
    for (int i = 0; i < m.dim; ++i)
        for (int j = i; j < m.dim; ++j)
            if (m.at(i, j) != -m.at(j, i)) throw std::invalid_argument("matrix not skew-symmetric");
}

// Fraction-free elimination; every intermediate value is an integer.
// Pivots on the first nonzero entry of each column; a row swap flips the
// sign. Returns 0 for singular input. det of the empty matrix is 1.
inline Int bareiss_det(IntMatrix m) {
    int n = m.dim;
    if (n == 0) return 1;
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int pivot_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    pivot_row = i;
                    break;
                }
            if (pivot_row < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev;  // exact by Sylvester's identity
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

// Signed Pfaffian, equal to the defining signed sum over pair partitions.
// Parlett-Reid style elimination over exact rationals: pivot the entry
// (k, k+1), swap rows and columns simultaneously (each transposition
// flips the sign), and fold the row-k tail into the trailing block.
inline Int signed_pfaffian(const SkewMatrix& m) {
    validate_skew(m);
    int n = m.dim;
    if (n == 0) return 1;
    std::vector<Rat> a(static_cast<std::size_t>(n) * n);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = Rat(m.a[i]);
    auto at = [&](int i, int j) -> Rat& { return a[static_cast<std::size_t>(i) * n + j]; };
    Rat result = 1;
    for (int k = 0; k < n - 1; k += 2) {
        int pivot = -1;
        for (int j = k + 1; j < n; ++j)
            if (at(k, j) != 0) {
                pivot = j;
                break;
            }
        if (pivot < 0) return 0;  // row k is zero: every pair product vanishes
        if (pivot != k + 1) {
            for (int j = 0; j < n; ++j) std::swap(at(k + 1, j), at(pivot, j));
            for (int i = 0; i < n; ++i) std::swap(at(i, k + 1), at(i, pivot));
            result = -result;
        }
        const Rat elem = at(k, k + 1);
        result *= elem;
        for (int i = k + 2; i < n; ++i) {
            Rat f = at(k, i) / elem;
            if (f == 0) continue;
            // row i -= f * row (k+1), col i -= f * col (k+1); rows and
            // columns k, k+1 stay pristine so the factors remain exact
            for (int j = k + 2; j < n; ++j) at(i, j) -= f * at(k + 1, j);
            for (int j = k + 2; j < n; ++j) at(j, i) -= f * at(j, k + 1);
        }
    }
    if (boost::multiprecision::denominator(result) != 1)
        throw std::logic_error("pfaffian of an integer matrix must be an integer");
    return boost::multiprecision::numerator(result);
}

}  // namespace polysieve
