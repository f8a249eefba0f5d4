#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "perron/errors.hpp"
#include "perron/matrix.hpp"

namespace perron {

// Result of the Perron-value power iteration.  `value` is the midpoint of the
// final ratio bracket [lower, upper], `vector` the final iterate scaled to
// max-entry 1, `residual` = ||A v - value v||_inf.
struct PerronPair {
    double value = 0.0;
    Vector vector;
    double residual = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    int iterations = 0;
};

// Ratio bounds from a positive test vector: for irreducible nonnegative A,
//   min_i (Ax)_i / x_i  <=  rho(A)  <=  max_i (Ax)_i / x_i.
inline std::pair<double, double> collatz_wielandt(const Matrix& a, const Vector& x) {
    if (!is_nonnegative(a)) throw HypothesisError("collatz_wielandt: matrix must be nonnegative");
    if (static_cast<int>(x.size()) != a.n())
        throw HypothesisError("collatz_wielandt: dimension mismatch");
    if (!is_positive(x)) throw HypothesisError("collatz_wielandt: test vector must be positive");
    const Vector y = mat_vec(a, x);
    double lo = y[0] / x[0], hi = lo;
    for (size_t i = 1; i < x.size(); ++i) {
        const double r = y[i] / x[i];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi};
}

// Power iteration with max-entry renormalisation.  Starts from the all-ones
// vector; stops when the ratio bracket satisfies upper - lower <= tol * upper.
// Throws ConvergenceError (carrying the best bracket) if max_iter steps do
// not close the bracket, e.g. for imprimitive matrices whose ratio bounds
// stall.
inline PerronPair perron_root(const Matrix& a, double tol = 1e-9, int max_iter = 100000) {
    if (!is_nonnegative(a)) throw HypothesisError("perron_root: matrix must be nonnegative");
    if (!is_irreducible(a)) throw HypothesisError("perron_root: matrix must be irreducible");
    const int n = a.n();
    if (n == 1) {
        PerronPair p;
        p.value = p.lower = p.upper = a(0, 0);
        p.vector = {1.0};
        return p;
    }

    Vector x(n, 1.0);
    double best_lo = 0.0, best_hi = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it) {
        const Vector y = mat_vec(a, x);
        double lo = y[0] / x[0], hi = lo, ymax = y[0];
        for (int i = 1; i < n; ++i) {
            const double r = y[i] / x[i];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            ymax = std::max(ymax, y[i]);
        }
        best_lo = std::max(best_lo, lo);
        best_hi = std::min(best_hi, hi);
        for (int i = 0; i < n; ++i) x[i] = y[i] / ymax;
        if (hi - lo <= tol * hi) {
            PerronPair p;
            p.value = 0.5 * (lo + hi);
            p.vector = x;
            p.lower = lo;
            p.upper = hi;
            p.iterations = it;
            const Vector ax = mat_vec(a, x);
            double res = 0.0;
            for (int i = 0; i < n; ++i) res = std::max(res, std::abs(ax[i] - p.value * x[i]));
            p.residual = res;
            return p;
        }
    }
    throw ConvergenceError("perron_root: ratio bracket did not close within the iteration budget",
                           best_lo, best_hi, max_iter);
}

// True when x is (numerically) a Perron vector: x strictly positive and the
// ratios (Ax)_i / x_i agree to within tol * max ratio.
inline bool is_perron_vector(const Matrix& a, const Vector& x, double tol = 1e-9) {
    if (!is_nonnegative(a)) throw HypothesisError("is_perron_vector: matrix must be nonnegative");
    if (static_cast<int>(x.size()) != a.n()) return false;
    if (!is_positive(x)) return false;
    const Vector y = mat_vec(a, x);
    double lo = y[0] / x[0], hi = lo;
    for (size_t i = 1; i < x.size(); ++i) {
        const double r = y[i] / x[i];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return hi - lo <= tol * std::max(hi, 0.0) + 1e-300;
}

} // namespace perron
