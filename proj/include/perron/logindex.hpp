#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "perron/bounds.hpp"
#include "perron/eig.hpp"
#include "perron/errors.hpp"
#include "perron/matrix.hpp"
#include "perron/rational.hpp"

namespace perron {

enum class LogRole { CONCAVITY, CONVEXITY };

// One elimination step: which spectral column was used, which index realized
// the dominating choice, and which candidates survived the determinant test.
struct EliminationRound {
    LogRole role;
    int column;                  // 1-based position among the distinct eigenvalue clusters
    double mu;                   // that cluster's eigenvalue
    int chosen;                  // 1-based index selected by the dominating rule
    std::vector<int> surviving;  // 1-based surviving candidate set, ascending
};

struct LogIndexResult {
    std::vector<int> concavity_indices;  // 1-based, ascending
    std::vector<int> convexity_indices;  // 1-based, ascending
    int onset_k = 0;  // empirically verified: indices realize the extremum for k >= onset_k
    std::vector<EliminationRound> trace;
};

enum class SequenceOrigin { CONCAVITY_INDEX, CONVEXITY_INDEX, MOMENT };

struct GeneratedSequence {
    std::vector<BigRational> values;  // exact; integers whenever A and x are integral
    SequenceOrigin origin;
    int start_k = 0;  // k of values.front()
};

enum class LogShape { LOG_CONCAVE, LOG_CONVEX };

// Dominating-index rule: given positive x and arbitrary y, returns 1-based
// (max_index, min_index) such that det[[x_max, y_max],[x_j, y_j]] >= 0 and
// det[[x_min, y_min],[x_j, y_j]] <= 0 for every j.  Partition by sign of y:
// for the max role the negative-y entries dominate (their ratio x/y, maximal,
// i.e. closest to zero, wins), then zero entries, then positive-y entries by
// max ratio; the min role is the mirror image.  Ties break to the smallest
// index.
inline std::pair<int, int> select_dominating_index(const Vector& x, const Vector& y) {
    if (x.size() != y.size() || x.empty())
        throw HypothesisError("select_dominating_index: need equally sized nonempty vectors");
    if (!is_positive(x)) throw HypothesisError("select_dominating_index: x must be positive");
    const int n = static_cast<int>(x.size());

    auto pick = [&](bool negatives_first, bool want_max_ratio) {
        const double first_sign = negatives_first ? -1.0 : 1.0;
        int best = -1;
        double best_ratio = 0.0;
        // Pass 1: preferred sign class, extremal ratio x/y.
        for (int i = 0; i < n; ++i) {
            if (first_sign * y[i] <= 0.0) continue;
            const double r = x[i] / y[i];
            if (best < 0 || (want_max_ratio ? r > best_ratio : r < best_ratio)) {
                best = i;
                best_ratio = r;
            }
        }
        if (best >= 0) return best;
        // Pass 2: any zero entry.
        for (int i = 0; i < n; ++i)
            if (y[i] == 0.0) return i;
        // Pass 3: the remaining sign class.
        for (int i = 0; i < n; ++i) {
            if (first_sign * y[i] >= 0.0) continue;
            const double r = x[i] / y[i];
            if (best < 0 || (want_max_ratio ? r > best_ratio : r < best_ratio)) {
                best = i;
                best_ratio = r;
            }
        }
        return best;
    };

    const int max_index = pick(/*negatives_first=*/true, /*want_max_ratio=*/true);
    const int min_index = pick(/*negatives_first=*/false, /*want_max_ratio=*/false);
    return {max_index + 1, min_index + 1};
}

namespace detail {

// Indices attaining the componentwise max/min ratio (A^k x)_i / (A^{k-1} x)_i,
// by exact integer cross-products over the lifted iterates.  A relative
// tolerance band is useless here: every ratio converges to the spectral
// radius, so any fixed band eventually swallows all indices and a banded
// check certifies nothing.  Exact comparisons keep genuine (symmetry-forced)
// ties and nothing else.
struct ExactRatioSets {
    std::vector<int> argmax;  // 0-based
    std::vector<int> argmin;  // 0-based
};

inline ExactRatioSets exact_ratio_argsets(const std::vector<mpz_class>& prev,
                                          const std::vector<mpz_class>& cur) {
    const int n = static_cast<int>(prev.size());
    int imax = 0, imin = 0;
    for (int i = 1; i < n; ++i) {
        // cur[i]/prev[i] > cur[imax]/prev[imax] ?
        if (cur[i] * prev[imax] > cur[imax] * prev[i]) imax = i;
        if (cur[i] * prev[imin] < cur[imin] * prev[i]) imin = i;
    }
    ExactRatioSets out;
    for (int i = 0; i < n; ++i) {
        if (cur[i] * prev[imax] == cur[imax] * prev[i]) out.argmax.push_back(i);
        if (cur[i] * prev[imin] == cur[imin] * prev[i]) out.argmin.push_back(i);
    }
    return out;
}

} // namespace detail

// Exact argmax/argmin index sets (1-based) of the ratio vector
// (A^k x)_i / (A^{k-1} x)_i, computed with integer arithmetic after lifting
// the dyadic double inputs.  Ties are exact, not banded.
inline std::pair<std::vector<int>, std::vector<int>> ratio_argmax_sets(const Matrix& a,
                                                                       const Vector& x, int k) {
    if (!is_nonnegative(a)) throw HypothesisError("ratio_argmax_sets: matrix must be nonnegative");
    if (!is_irreducible(a)) throw HypothesisError("ratio_argmax_sets: matrix must be irreducible");
    if (!is_positive(x)) throw HypothesisError("ratio_argmax_sets: x must be positive");
    if (k < 1) throw HypothesisError("ratio_argmax_sets: k must be >= 1");
    detail::IntegerLift lift = detail::lift_to_integers(a, x);
    std::vector<mpz_class> prev = lift.x;
    std::vector<mpz_class> cur = detail::integer_mat_vec(lift.a, prev);
    for (int step = 2; step <= k; ++step) {
        prev = std::move(cur);
        cur = detail::integer_mat_vec(lift.a, prev);
    }
    const int n = a.n();
    std::vector<int> amax, amin;
    int imax = 0, imin = 0;
    for (int i = 1; i < n; ++i) {
        if (cur[i] * prev[imax] > cur[imax] * prev[i]) imax = i;
        if (cur[i] * prev[imin] < cur[imin] * prev[i]) imin = i;
    }
    for (int i = 0; i < n; ++i) {
        if (cur[i] * prev[imax] == cur[imax] * prev[i]) amax.push_back(i + 1);
        if (cur[i] * prev[imin] == cur[imin] * prev[i]) amin.push_back(i + 1);
    }
    return {amax, amin};
}

// Constructive search for the log-concavity and log-convexity index sets of a
// symmetric PSD irreducible nonnegative matrix with positive x.
//
// Spectral columns y_t = E_t x are processed in descending-eigenvalue order.
// Each round restricts the candidate set via the dominating-index rule and
// keeps exactly the candidates whose 2x2 determinant against the chosen index
// falls inside the zero band (they tie at this spectral order and stay in
// play).  Columns with (numerically) zero eigenvalue are skipped: their
// contribution carries a factor (mu_1 mu_t)^{k-1} that vanishes for k >= 2,
// so they cannot influence the eventual ratio ordering.  Zero columns
// (E_t x = 0) carry no information and are skipped as well.
//
// The reported sets are then certified by direct iteration in exact integer
// arithmetic: onset_k is the first k from which every reported index realizes
// the componentwise max (resp. min) ratio at every probed step, and that
// stability must persist through the whole horizon (at least `window` steps
// past the onset).  Failure to certify throws: a wrong elimination caused by
// rounding is reported, never returned.
inline LogIndexResult find_log_indices(const Matrix& a, const Vector& x, int window = 32) {
    const int n = a.n();
    if (n == 0) throw HypothesisError("find_log_indices: empty matrix");
    if (!is_nonnegative(a)) throw HypothesisError("find_log_indices: matrix must be nonnegative");
    if (!is_symmetric(a, 1e-9 * std::max(1.0, detail::frobenius_norm(a))))
        throw HypothesisError("find_log_indices: matrix must be symmetric");
    if (!is_irreducible(a)) throw HypothesisError("find_log_indices: matrix must be irreducible");
    if (!is_positive_semidefinite(a))
        throw HypothesisError("find_log_indices: matrix must be positive semidefinite");
    if (static_cast<int>(x.size()) != n)
        throw HypothesisError("find_log_indices: dimension mismatch");
    if (!is_positive(x)) throw HypothesisError("find_log_indices: x must be positive");
    if (window < 1) throw HypothesisError("find_log_indices: window must be >= 1");

    LogIndexResult result;

    if (n == 1) {
        result.concavity_indices = {1};
        result.convexity_indices = {1};
        result.onset_k = 1;
        return result;
    }

    const SpectralDecomposition sd = symmetric_eig(a, 1e-9);
    const double mu1 = sd.eigenvalues.front();
    const double mu_zero_band = 1e-9 * std::max(1.0, std::abs(mu1));
    const double col_zero_band = 1e-11 * std::max(1.0, max_abs(x));

    const Vector xcol = mat_vec(sd.projectors.front(), x);

    struct Column {
        int t;      // 1-based cluster position
        double mu;
        Vector y;
    };
    std::vector<Column> columns;
    for (size_t t = 1; t < sd.eigenvalues.size(); ++t) {
        if (std::abs(sd.eigenvalues[t]) <= mu_zero_band) continue;
        Vector y = mat_vec(sd.projectors[t], x);
        if (max_abs(y) <= col_zero_band) continue;
        columns.push_back({static_cast<int>(t) + 1, sd.eigenvalues[t], std::move(y)});
    }

    auto eliminate = [&](LogRole role) {
        std::vector<int> alive(n);
        for (int i = 0; i < n; ++i) alive[i] = i;
        for (const Column& col : columns) {
            if (alive.size() == 1) break;
            const double det_band =
                1e-12 * std::max(1e-300, max_abs(xcol)) * std::max(1e-300, max_abs(col.y));

            // Dominating choice restricted to the surviving set, with the
            // zero band applied to the y entries.
            int best = -1;
            double best_ratio = 0.0;
            auto consider = [&](int i, bool want_max) {
                const double r = xcol[i] / col.y[i];
                if (best < 0 || (want_max ? r > best_ratio : r < best_ratio)) {
                    best = i;
                    best_ratio = r;
                }
            };
            const bool negatives_first = (role == LogRole::CONCAVITY);
            const bool want_max = (role == LogRole::CONCAVITY);
            for (int i : alive)
                if ((negatives_first ? -col.y[i] : col.y[i]) > col_zero_band) consider(i, want_max);
            if (best < 0) {
                for (int i : alive)
                    if (std::abs(col.y[i]) <= col_zero_band) {
                        best = i;
                        break;
                    }
            }
            if (best < 0)
                for (int i : alive)
                    if ((negatives_first ? col.y[i] : -col.y[i]) > col_zero_band) consider(i, want_max);
            if (best < 0) continue;  // defensive: column was all-zero after banding

            std::vector<int> next;
            for (int j : alive) {
                const double det = xcol[best] * col.y[j] - xcol[j] * col.y[best];
                if (std::abs(det) <= det_band) next.push_back(j);
            }
            EliminationRound round;
            round.role = role;
            round.column = col.t;
            round.mu = col.mu;
            round.chosen = best + 1;
            for (int j : next) round.surviving.push_back(j + 1);
            result.trace.push_back(std::move(round));
            alive = std::move(next);
        }
        std::vector<int> out;
        for (int i : alive) out.push_back(i + 1);
        return out;
    };

    result.concavity_indices = eliminate(LogRole::CONCAVITY);
    result.convexity_indices = eliminate(LogRole::CONVEXITY);

    // Mandatory certification by direct iteration, exact integer arithmetic.
    // The horizon extends `window` steps beyond the onset cap; the onset is
    // the step after the last disagreement, so stability is certified from
    // the onset through the entire horizon, never just a transient stretch.
    const int onset_cap = 256;
    const int horizon = onset_cap + window;
    detail::IntegerLift lift = detail::lift_to_integers(a, x);
    std::vector<mpz_class> prev = lift.x;
    int last_bad = 0;
    for (int k = 1; k <= horizon; ++k) {
        std::vector<mpz_class> cur = detail::integer_mat_vec(lift.a, prev);
        detail::ExactRatioSets sets = detail::exact_ratio_argsets(prev, cur);
        auto contains_all = [](const std::vector<int>& super0, const std::vector<int>& sub1) {
            for (int v : sub1)
                if (!std::binary_search(super0.begin(), super0.end(), v - 1)) return false;
            return true;
        };
        const bool ok = contains_all(sets.argmax, result.concavity_indices) &&
                        contains_all(sets.argmin, result.convexity_indices);
        if (!ok) last_bad = k;
        prev = std::move(cur);
    }
    if (last_bad > onset_cap)
        throw InternalError(
            "find_log_indices: reported indices failed exact-iteration certification "
            "(tolerance inconsistency)");
    result.onset_k = last_bad + 1;
    return result;
}

// Exact entry sequence g_k = (A^k x)_{index}, k = 0..K, via rational
// arithmetic (integers whenever A and x are integral).
inline GeneratedSequence generate(const Matrix& a, const Vector& x, int index, int k_max,
                                  SequenceOrigin origin) {
    if (index < 1 || index > a.n()) throw HypothesisError("generate: index out of range");
    if (k_max < 2) throw HypothesisError("generate: K must be >= 2");
    if (static_cast<int>(x.size()) != a.n()) throw HypothesisError("generate: dimension mismatch");
    const int n = a.n();
    std::vector<std::vector<mpq_class>> aq(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            aq[i][j] = mpq_class(a(i, j));
            aq[i][j].canonicalize();
        }
    std::vector<mpq_class> z(n);
    for (int i = 0; i < n; ++i) {
        z[i] = mpq_class(x[i]);
        z[i].canonicalize();
    }
    GeneratedSequence seq;
    seq.origin = origin;
    seq.start_k = 0;
    seq.values.reserve(k_max + 1);
    seq.values.push_back(BigRational(z[index - 1]));
    for (int k = 1; k <= k_max; ++k) {
        std::vector<mpq_class> y(n, mpq_class(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) y[i] += aq[i][j] * z[j];
        z = std::move(y);
        seq.values.push_back(BigRational(z[index - 1]));
    }
    return seq;
}

// Exact moment sequence s_k = x^T A^k x, k = 0..K.
inline GeneratedSequence generate_moments(const Matrix& a, const Vector& x, int k_max) {
    if (k_max < 2) throw HypothesisError("generate_moments: K must be >= 2");
    if (static_cast<int>(x.size()) != a.n())
        throw HypothesisError("generate_moments: dimension mismatch");
    const int n = a.n();
    std::vector<std::vector<mpq_class>> aq(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            aq[i][j] = mpq_class(a(i, j));
            aq[i][j].canonicalize();
        }
    std::vector<mpq_class> xq(n), z(n);
    for (int i = 0; i < n; ++i) {
        xq[i] = mpq_class(x[i]);
        xq[i].canonicalize();
        z[i] = xq[i];
    }
    GeneratedSequence seq;
    seq.origin = SequenceOrigin::MOMENT;
    seq.start_k = 0;
    seq.values.reserve(k_max + 1);
    auto moment = [&]() {
        mpq_class s = 0;
        for (int i = 0; i < n; ++i) s += xq[i] * z[i];
        return BigRational(s);
    };
    seq.values.push_back(moment());
    for (int k = 1; k <= k_max; ++k) {
        std::vector<mpq_class> y(n, mpq_class(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) y[i] += aq[i][j] * z[j];
        z = std::move(y);
        seq.values.push_back(moment());
    }
    return seq;
}

// Log-shape check: z_{k-1} z_{k+1} <= z_k^2 for LOG_CONCAVE (>= for
// LOG_CONVEX), strict when requested.  Exact comparisons.
inline bool verify_log_shape(const std::vector<BigRational>& seq, LogShape shape, bool strict) {
    if (seq.size() < 3) throw HypothesisError("verify_log_shape: need at least 3 values");
    for (const BigRational& v : seq)
        if (v.sign() <= 0) throw HypothesisError("verify_log_shape: entries must be positive");
    for (size_t k = 1; k + 1 < seq.size(); ++k) {
        const BigRational lhs = seq[k - 1] * seq[k + 1];
        const BigRational rhs = seq[k] * seq[k];
        if (shape == LogShape::LOG_CONCAVE) {
            if (strict ? !(lhs < rhs) : !(lhs <= rhs)) return false;
        } else {
            if (strict ? !(lhs > rhs) : !(lhs >= rhs)) return false;
        }
    }
    return true;
}

// Floating-point variant with a relative tolerance band.
inline bool verify_log_shape(const std::vector<double>& seq, LogShape shape, bool strict,
                             double tol = 1e-12) {
    if (seq.size() < 3) throw HypothesisError("verify_log_shape: need at least 3 values");
    for (double v : seq)
        if (!(v > 0.0)) throw HypothesisError("verify_log_shape: entries must be positive");
    for (size_t k = 1; k + 1 < seq.size(); ++k) {
        const double lhs = seq[k - 1] * seq[k + 1];
        const double rhs = seq[k] * seq[k];
        if (shape == LogShape::LOG_CONCAVE) {
            if (strict ? !(lhs < rhs * (1.0 - tol)) : !(lhs <= rhs * (1.0 + tol))) return false;
        } else {
            if (strict ? !(lhs > rhs * (1.0 + tol)) : !(lhs >= rhs * (1.0 - tol))) return false;
        }
    }
    return true;
}

// D(k) = (A^k x)_2 (A^{k-1} x)_1 - (A^k x)_1 (A^{k-1} x)_2 for 2x2 A, exact.
inline BigRational two_by_two_D(const Matrix& a, const Vector& x, int k) {
    if (a.n() != 2 || x.size() != 2) throw HypothesisError("two_by_two_D: need a 2x2 system");
    if (!is_nonnegative(a)) throw HypothesisError("two_by_two_D: matrix must be nonnegative");
    if (!is_irreducible(a)) throw HypothesisError("two_by_two_D: matrix must be irreducible");
    if (!is_positive(x)) throw HypothesisError("two_by_two_D: x must be positive");
    if (k < 1) throw HypothesisError("two_by_two_D: k must be >= 1");
    mpq_class a00(a(0, 0)), a01(a(0, 1)), a10(a(1, 0)), a11(a(1, 1));
    mpq_class z0(x[0]), z1(x[1]);
    for (mpq_class* q : {&a00, &a01, &a10, &a11, &z0, &z1}) q->canonicalize();
    mpq_class p0 = z0, p1 = z1;  // previous iterate
    for (int step = 1; step <= k; ++step) {
        mpq_class n0 = a00 * z0 + a01 * z1;
        mpq_class n1 = a10 * z0 + a11 * z1;
        p0 = z0;
        p1 = z1;
        z0 = n0;
        z1 = n1;
    }
    return BigRational(mpq_class(z1 * p0 - z0 * p1));
}

// Closed form D(k) = (x_1 x_2 (d - a) - b x_2^2 + c x_1^2) (ad - bc)^{k-1}
// for A = [[a, b], [c, d]].
inline BigRational two_by_two_D_closed(const Matrix& a, const Vector& x, int k) {
    if (a.n() != 2 || x.size() != 2) throw HypothesisError("two_by_two_D_closed: need a 2x2 system");
    if (k < 1) throw HypothesisError("two_by_two_D_closed: k must be >= 1");
    const BigRational aa = BigRational::from_double(a(0, 0));
    const BigRational bb = BigRational::from_double(a(0, 1));
    const BigRational cc = BigRational::from_double(a(1, 0));
    const BigRational dd = BigRational::from_double(a(1, 1));
    const BigRational x1 = BigRational::from_double(x[0]);
    const BigRational x2 = BigRational::from_double(x[1]);
    const BigRational lead = x1 * x2 * (dd - aa) - bb * x2 * x2 + cc * x1 * x1;
    const BigRational det = aa * dd - bb * cc;
    return lead * pow(det, static_cast<unsigned>(k - 1));
}

} // namespace perron
