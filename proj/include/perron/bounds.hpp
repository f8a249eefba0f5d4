#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "perron/eig.hpp"
#include "perron/errors.hpp"
#include "perron/matrix.hpp"
#include "perron/power_iteration.hpp"

namespace perron {

enum class BoundKind { A_MAX_RATIO, B_MIN_RATIO, C_RAYLEIGH };

// One bound sequence: values[k-1] holds the k-th term (indexing starts at
// k = 1).  perron_reference is an optional independently computed Perron
// value the sequence bounds.
struct BoundSequence {
    BoundKind kind;
    std::vector<double> values;
    int matrix_dim = 0;
    std::optional<double> perron_reference;
};

enum class Monotonicity { STRICTLY_DECREASING, STRICTLY_INCREASING, CONSTANT_FROM, NON_STRICT };

struct MonotonicityReport {
    Monotonicity classification;
    std::optional<int> onset_index;  // 1-based start of the constant tail (CONSTANT_FROM only)
    double strictness_tolerance = 0.0;
};

namespace detail {

inline void require_ratio_inputs(const Matrix& a, const Vector& x, int k, const char* who) {
    if (!is_nonnegative(a)) throw HypothesisError(std::string(who) + ": matrix must be nonnegative");
    if (!is_irreducible(a)) throw HypothesisError(std::string(who) + ": matrix must be irreducible");
    if (static_cast<int>(x.size()) != a.n())
        throw HypothesisError(std::string(who) + ": dimension mismatch");
    if (!is_positive(x)) throw HypothesisError(std::string(who) + ": test vector must be positive");
    if (k < 1) throw HypothesisError(std::string(who) + ": K must be >= 1");
}

} // namespace detail

// Max-ratio and min-ratio sequences from one shared iteration:
//   a_k = max_i (A^k x)_i / (A^{k-1} x)_i,   b_k = min_i (...).
// Iterates are renormalized by their max entry each step; the ratios are
// scale-invariant so this only changes them by rounding.
inline std::pair<BoundSequence, BoundSequence> ab_seq(const Matrix& a, const Vector& x, int k_max) {
    detail::require_ratio_inputs(a, x, k_max, "ab_seq");
    const int n = a.n();
    BoundSequence sa{BoundKind::A_MAX_RATIO, {}, n, std::nullopt};
    BoundSequence sb{BoundKind::B_MIN_RATIO, {}, n, std::nullopt};
    sa.values.reserve(k_max);
    sb.values.reserve(k_max);
    Vector z = x;
    for (int k = 1; k <= k_max; ++k) {
        const Vector y = mat_vec(a, z);
        double lo = y[0] / z[0], hi = lo, ymax = y[0];
        for (int i = 1; i < n; ++i) {
            const double r = y[i] / z[i];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            ymax = std::max(ymax, y[i]);
        }
        sa.values.push_back(hi);
        sb.values.push_back(lo);
        for (int i = 0; i < n; ++i) z[i] = y[i] / ymax;
    }
    return {std::move(sa), std::move(sb)};
}

inline BoundSequence a_seq(const Matrix& a, const Vector& x, int k_max) {
    return ab_seq(a, x, k_max).first;
}

inline BoundSequence b_seq(const Matrix& a, const Vector& x, int k_max) {
    return ab_seq(a, x, k_max).second;
}

// Rayleigh-type quotient sequence c_k = s_k / s_{k-1} with moments
// s_k = x^T A^k x.  Requires symmetric PSD A, so s_k can be split as
// (A^{ceil(k/2)} x)^T (A^{floor(k/2)} x) over renormalized iterates whose
// scale is tracked in log space; this avoids overflow for large k.
inline BoundSequence c_seq(const Matrix& a, const Vector& x, int k_max) {
    if (!is_nonnegative(a)) throw HypothesisError("c_seq: matrix must be nonnegative");
    if (!is_positive_semidefinite(a))
        throw HypothesisError("c_seq: matrix must be symmetric positive semidefinite");
    if (static_cast<int>(x.size()) != a.n())
        throw HypothesisError("c_seq: dimension mismatch");
    if (!is_nonnegative(x) || max_abs(x) == 0.0)
        throw HypothesisError("c_seq: test vector must be nonnegative and nonzero");
    if (k_max < 1) throw HypothesisError("c_seq: K must be >= 1");

    const int half_max = (k_max + 1) / 2;
    std::vector<Vector> iterates;
    std::vector<double> log_scales;
    iterates.reserve(half_max + 1);
    log_scales.reserve(half_max + 1);
    iterates.push_back(x);
    log_scales.push_back(0.0);
    for (int j = 1; j <= half_max; ++j) {
        Vector w = mat_vec(a, iterates.back());
        double m = 0.0;
        for (double v : w) m = std::max(m, v);
        if (m <= 0.0)
            throw HypothesisError("c_seq: iterate vanished (test vector lies in the kernel)");
        for (double& v : w) v /= m;
        iterates.push_back(std::move(w));
        log_scales.push_back(log_scales.back() + std::log(m));
    }

    auto log_moment = [&](int k) {
        const int hi = (k + 1) / 2, lo = k / 2;
        const double d = dot(iterates[hi], iterates[lo]);
        if (d <= 0.0) throw InternalError("c_seq: nonnegative moment vanished");
        return std::log(d) + log_scales[hi] + log_scales[lo];
    };

    BoundSequence sc{BoundKind::C_RAYLEIGH, {}, a.n(), std::nullopt};
    sc.values.reserve(k_max);
    double prev = log_moment(0);
    for (int k = 1; k <= k_max; ++k) {
        const double cur = log_moment(k);
        sc.values.push_back(std::exp(cur - prev));
        prev = cur;
    }
    return sc;
}

// Labels each consecutive difference as up, down, or flat (the strictness
// band is strict_tol * max(1, |values|)), then matches the label pattern:
// all-up / all-down / flat tail after a strictly monotone prefix / other.
// A constant tail must additionally stay inside the wider equality band
// eq_tol around its first element, so slow drift is not reported constant.
inline MonotonicityReport classify_monotonicity(const BoundSequence& seq,
                                                double strict_tol = 1e-10,
                                                double eq_tol = 1e-9) {
    const auto& v = seq.values;
    if (v.size() < 2) throw HypothesisError("classify_monotonicity: need at least 2 values");

    enum { UP, DOWN, FLAT };
    std::vector<int> label(v.size() - 1);
    for (size_t i = 0; i + 1 < v.size(); ++i) {
        const double scale = std::max({1.0, std::abs(v[i]), std::abs(v[i + 1])});
        const double d = v[i + 1] - v[i];
        label[i] = std::abs(d) <= strict_tol * scale ? FLAT : (d > 0.0 ? UP : DOWN);
    }

    MonotonicityReport rep;
    rep.strictness_tolerance = strict_tol;
    const bool all_up = std::all_of(label.begin(), label.end(), [](int l) { return l == UP; });
    const bool all_down = std::all_of(label.begin(), label.end(), [](int l) { return l == DOWN; });
    if (all_up) {
        rep.classification = Monotonicity::STRICTLY_INCREASING;
        return rep;
    }
    if (all_down) {
        rep.classification = Monotonicity::STRICTLY_DECREASING;
        return rep;
    }

    // Candidate pattern: strictly monotone prefix, then flat to the end.
    size_t tail = 0;
    while (tail < label.size() && label[tail] != FLAT) ++tail;
    const bool prefix_monotone =
        std::all_of(label.begin(), label.begin() + tail, [&](int l) { return l == label[0]; });
    const bool tail_flat =
        std::all_of(label.begin() + tail, label.end(), [](int l) { return l == FLAT; });
    if (prefix_monotone && tail_flat) {
        const double anchor = v[tail];
        bool constant = true;
        for (size_t i = tail; i < v.size(); ++i) {
            const double scale = std::max({1.0, std::abs(anchor), std::abs(v[i])});
            if (std::abs(v[i] - anchor) > eq_tol * scale) constant = false;
        }
        if (constant) {
            rep.classification = Monotonicity::CONSTANT_FROM;
            rep.onset_index = static_cast<int>(tail) + 1;
            return rep;
        }
    }
    rep.classification = Monotonicity::NON_STRICT;
    return rep;
}

// Smallest r in [0, K] such that A^r x is (numerically) a Perron vector;
// absent when no iterate within the horizon passes the ratio-uniformity test.
inline std::optional<int> perron_onset(const Matrix& a, const Vector& x, int k_max,
                                       double tol = 1e-9) {
    detail::require_ratio_inputs(a, x, std::max(k_max, 1), "perron_onset");
    Vector z = x;
    for (int r = 0; r <= k_max; ++r) {
        if (is_perron_vector(a, z, tol)) return r;
        Vector y = mat_vec(a, z);
        double m = 0.0;
        for (double v : y) m = std::max(m, v);
        for (double& v : y) v /= m;
        z = std::move(y);
    }
    return std::nullopt;
}

// Mediant of componentwise fractions: (sum of numerators)/(sum of
// denominators).  It never exceeds the largest a_i/b_i (and never falls
// below the smallest) when all denominators are positive.
inline double mediant(const Vector& numerators, const Vector& denominators) {
    if (numerators.size() != denominators.size() || numerators.empty())
        throw HypothesisError("mediant: need equally sized nonempty vectors");
    if (!is_positive(denominators)) throw HypothesisError("mediant: denominators must be positive");
    double sn = 0.0, sd = 0.0;
    for (size_t i = 0; i < numerators.size(); ++i) {
        sn += numerators[i];
        sd += denominators[i];
    }
    return sn / sd;
}

} // namespace perron
