#pragma once

#include "sel/errors.hpp"

#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

namespace sel {

/// Rows a[i] x[i-1] + d[i] x[i] + c[i] x[i+1] = rhs[i]; a[0] and c[n-1] are ignored.
template <class T>
struct Tridiagonal {
    std::vector<T> lower, diag, upper;

    explicit Tridiagonal(std::size_t n = 0) : lower(n), diag(n), upper(n) {}
    std::size_t size() const { return diag.size(); }

    std::vector<T> apply(const std::vector<T>& x) const {
        const std::size_t n = size();
        std::vector<T> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = diag[i] * x[i];
            if (i > 0) y[i] += lower[i] * x[i - 1];
            if (i + 1 < n) y[i] += upper[i] * x[i + 1];
        }
        return y;
    }

    /// Diagonal dominance with nonpositive off-diagonals and positive diagonal (real case).
    bool is_m_matrix() const {
        if constexpr (std::is_floating_point_v<T>) {
            for (std::size_t i = 0; i < size(); ++i) {
                const T off = (i > 0 ? -lower[i] : T(0)) + (i + 1 < size() ? -upper[i] : T(0));
                if (!(diag[i] > 0) || (i > 0 && lower[i] > 0) || (i + 1 < size() && upper[i] > 0) || diag[i] < off)
                    return false;
            }
            return true;
        } else {
            return false;
        }
    }
};

/// Thomas algorithm. Throws NumericalFailure on a vanishing pivot.
template <class T>
std::vector<T> solve(const Tridiagonal<T>& m, std::vector<T> rhs) {
    const std::size_t n = m.size();
    if (rhs.size() != n) throw InvalidInput("tridiagonal: size mismatch");
    if (n == 0) return rhs;
    std::vector<T> cp(n);
    T piv = m.diag[0];
    for (std::size_t i = 0;; ++i) {
        if (!(std::abs(piv) > 0) || !std::isfinite(std::abs(piv)))
            throw NumericalFailure("tridiagonal: singular pivot at row " + std::to_string(i));
        cp[i] = i + 1 < n ? m.upper[i] / piv : T(0);
        rhs[i] = (rhs[i] - (i > 0 ? m.lower[i] * rhs[i - 1] : T(0))) / piv;
        if (i + 1 == n) break;
        piv = m.diag[i + 1] - m.lower[i + 1] * cp[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cp[i] * rhs[i + 1];
    return rhs;
}

}  // namespace sel
