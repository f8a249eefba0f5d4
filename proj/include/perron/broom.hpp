#pragma once

// Brooms B(d,r): the tree formed from a path on d vertices by attaching r
// pendent vertices at one end (the junction).  Two rootings matter: B1 roots
// the broom at the junction, B2 at the far end of the path.  Their
// bottleneck/neckbottle matrices admit closed-form bound polynomials in
// (d,r), evaluated here in exact rational arithmetic, plus O(d)-per-step
// prefix-sum recurrences for the matrix-power iterates M^k 1 and Q^k 1 that
// never materialize a matrix.  The third-moment lower bounds via the
// bottleneck and neckbottle matrices swap sharpness order at a crossing
// point r0(d), isolated by exact sign scanning plus rational bisection.

#include <utility>
#include <vector>

#include "perron/errors.hpp"
#include "perron/power_iteration.hpp"
#include "perron/rational.hpp"
#include "perron/tree.hpp"

namespace perron {

enum class BroomVariant { B1, B2 };

// Which matrix a recurrence iterates: the bottleneck matrix of B1 or B2, or
// the neckbottle matrix of B1.
enum class BroomMatrixKind { B1_BOTTLENECK, B2_BOTTLENECK, B1_NECKBOTTLE };

struct BroomParams {
    int d;  // path vertex count, >= 1
    int r;  // pendant count, >= 1
};

// Exact entries of M^k 1 (or Q^k 1).  Positions 1..d follow the path in the
// broom's labeling; positions d+1..d+r are the pendants, which provably
// share one common value at every power.
struct BroomIterates {
    BroomMatrixKind variant;
    int k;
    std::vector<BigRational> values;  // length d + r
};

// The two closed-form third-moment lower bounds on the Perron value of a
// bottleneck matrix, computed from B1(d,r): via its neckbottle matrix Q and
// via its bottleneck matrix M.
struct BroomLowerBounds {
    BigRational via_q;
    BigRational via_m;
};

struct SweepRow {
    int r;
    BigRational c3_m;  // third-moment bound via the bottleneck matrix
    BigRational c3_q;  // third-moment bound via the neckbottle matrix
    double rho_m;      // Perron value of the bottleneck matrix
};

namespace detail {

inline void validate_broom(const BroomParams& p) {
    if (p.d < 1 || p.r < 1)
        throw HypothesisError("broom: need path length d >= 1 and pendant count r >= 1");
}

// ---- closed-form polynomial evaluations (exact) -------------------------
// Each function below evaluates one frozen polynomial in (d,r).  The names
// say which matrix moment the polynomial equals; the equalities are pinned
// against the recurrence and dense-matrix oracles in the test suite.

// (M^3 1)_n for the B2 bottleneck matrix: numerator of the a3 upper bound.
inline BigRational b2_cube_tail(const BigRational& d, const BigRational& r) {
    const BigRational d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d, d6 = d5 * d;
    const BigRational r2 = r * r, r3 = r2 * r;
    return d3 * r3 + BigRational(1, 6) * d2 * (7 * d2 + 9 * d + 20) * r2 +
           BigRational(1, 120) * d * (61 * d4 + 140 * d3 + 315 * d2 + 280 * d + 404) * r +
           BigRational(1, 720) *
               (61 * d6 + 183 * d5 + 385 * d4 + 465 * d3 + 634 * d2 + 432 * d + 720);
}

// (M^2 1)_n for the B2 bottleneck matrix: denominator of the a3 upper bound.
inline BigRational b2_square_tail(const BigRational& d, const BigRational& r) {
    const BigRational d2 = d * d, d3 = d2 * d, d4 = d3 * d;
    return d2 * r * r + BigRational(1, 6) * d * (5 * d2 + 6 * d + 13) * r +
           BigRational(1, 24) * (5 * d4 + 10 * d3 + 19 * d2 + 14 * d + 24);
}

// 1^T Q^3 1 for the B1 neckbottle matrix.
inline BigRational b1_neckbottle_third_moment(const BigRational& d, const BigRational& r) {
    const BigRational d2 = d * d, d3 = d2 * d, d4 = d3 * d;
    const BigRational r2 = r * r;
    return 4 * r2 * r + 2 * (d2 + 3 * d + 4) * r2 +
           BigRational(1, 12) * (13 * d4 + 26 * d3 + 41 * d2 + 28 * d + 48) * r +
           BigRational(1, 2520) * d * (d + 1) * (2 * d + 1) *
               (68 * d4 + 136 * d3 + 133 * d2 + 65 * d + 18);
}

// 1^T Q^2 1 for the B1 neckbottle matrix.
inline BigRational b1_neckbottle_second_moment(const BigRational& d, const BigRational& r) {
    const BigRational d2 = d * d;
    return 4 * r * r + 2 * (d2 + d + 2) * r +
           BigRational(1, 30) * d * (d + 1) * (2 * d + 1) * (2 * d2 + 2 * d + 1);
}

// 1^T M^3 1 for the B1 bottleneck matrix.
inline BigRational b1_bottleneck_third_moment(const BigRational& d, const BigRational& r) {
    const BigRational d2 = d * d, d3 = d2 * d, d4 = d3 * d;
    const BigRational r2 = r * r;
    return r2 * r2 + (4 * d + 3) * r2 * r +
           BigRational(1, 2) * (2 * d + 3) * (d + 2) * (d + 1) * r2 +
           BigRational(1, 15) * (d + 1) * (4 * d4 + 16 * d3 + 19 * d2 + 21 * d + 15) * r +
           BigRational(1, 2520) * d * (2 * d + 1) * (d + 1) *
               (68 * d4 + 136 * d3 + 133 * d2 + 65 * d + 18);
}

// 1^T M^2 1 for the B1 bottleneck matrix.
inline BigRational b1_bottleneck_second_moment(const BigRational& d, const BigRational& r) {
    const BigRational d2 = d * d;
    return r * r * r + (3 * d + 2) * r * r +
           BigRational(1, 3) * (d + 1) * (2 * d2 + 4 * d + 3) * r +
           BigRational(1, 30) * d * (2 * d + 1) * (d + 1) * (2 * d2 + 2 * d + 1);
}

// Numerator of classical_upper_bound - a3_upper_B2 (positive iff a3 is the
// sharper upper bound).
inline BigRational gap_numerator(const BigRational& d, const BigRational& r) {
    const BigRational d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d, d6 = d5 * d;
    const BigRational swing = 2 * d2 - 3 * d - 29;
    return 24 * d2 * (2 * d + 1) * (d + 1) * swing * r * r +
           12 * d * (2 * d + 1) * (d + 1) * (d2 - d + 4) * swing * r -
           (d + 3) * (d + 1) *
               (2 * d6 + 67 * d5 - 202 * d4 - 131 * d3 - 568 * d2 + 100 * d + 192);
}

// Denominator of the same gap; positive for all d, r >= 1.
inline BigRational gap_denominator(const BigRational& d, const BigRational& r) {
    const BigRational d2 = d * d, d3 = d2 * d, d4 = d3 * d;
    return 30 * (2 * d2 + 9 * d + 1) *
           (5 * d4 + 20 * d3 * r + 10 * d3 + 24 * d2 * r * r + 24 * d2 * r + 19 * d2 +
            52 * d * r + 14 * d + 24);
}

// Crossing polynomial: (1/(d r)) (1^T M^2 1)(1^T Q^2 1)(c3_M - c3_Q) for
// B1(d,r), as a cubic in r.  Its sign decides which third-moment lower
// bound is sharper; for d >= 3 it has exactly one positive root r0.
inline BigRational crossing_poly(const BigRational& d, const BigRational& r) {
    const BigRational d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d, d6 = d5 * d,
                      d7 = d6 * d;
    const BigRational r2 = r * r;
    return BigRational(1, 60) * (d - 1) * (d - 2) * (8 * d2 - 21 * d + 11) * r2 * r -
           BigRational(1, 2520) *
               (136 * d6 - 868 * d5 + 1540 * d4 - 1015 * d3 + 2674 * d2 - 4417 * d - 570) *
               r2 -
           BigRational(1, 840) * (d - 1) * (d + 1) *
               (24 * d5 - 16 * d4 - 242 * d3 + 355 * d2 - 116 * d - 184) * r -
           BigRational(1, 37800) * (d + 1) * (2 * d + 1) *
               (8 * d7 + 58 * d6 + 284 * d5 - 575 * d4 - 3763 * d3 + 2677 * d2 +
                4641 * d + 2970);
}

} // namespace detail

// Build the broom as a rooted tree in its canonical labeling.  B2: path
// 1..d rooted at vertex 1 (the far end), pendants d+1..d+r attached at
// vertex d.  B1: path 1..d rooted at vertex 1 (the junction), pendants
// d+1..d+r attached at vertex 1.
inline RootedTree build_broom(BroomVariant variant, const BroomParams& p) {
    detail::validate_broom(p);
    const int n = p.d + p.r;
    RootedTree t;
    t.n = n;
    t.root = 1;
    t.parent.assign(n + 1, 0);
    for (int j = 2; j <= p.d; ++j) t.parent[j] = j - 1;
    const int junction = variant == BroomVariant::B2 ? p.d : 1;
    for (int q = p.d + 1; q <= n; ++q) t.parent[q] = junction;
    return t;
}

// Exact M^k 1 (or Q^k 1) via the prefix-sum recurrences, O(d) state per
// step.  The three recurrences share the partial double sum
// sum_{i<=l} sum_{j>=i} prev_j, accumulated once per step via suffix sums.
// For the neckbottle matrix the labeling runs along the path toward the
// junction: position d is the junction and carries the pendant coupling.
inline BroomIterates broom_iterate(BroomMatrixKind variant, const BroomParams& p, int k) {
    detail::validate_broom(p);
    if (k < 0) throw HypothesisError("broom_iterate: power k must be >= 0");
    const int d = p.d;
    // state[0..d-1]: path positions 1..d; state[d]: the shared pendant value.
    std::vector<BigRational> state(d + 1, BigRational(1));
    std::vector<BigRational> suff(d + 2), next(d + 1);
    for (int step = 0; step < k; ++step) {
        suff[d] = state[d - 1];
        for (int j = d - 1; j >= 1; --j) suff[j] = suff[j + 1] + state[j - 1];
        BigRational acc(0);
        switch (variant) {
            case BroomMatrixKind::B2_BOTTLENECK:
                for (int l = 1; l <= d; ++l) {
                    acc += suff[l];
                    next[l - 1] = BigRational(static_cast<long>(l) * p.r) * state[d] + acc;
                }
                next[d] = next[d - 1] + state[d];
                break;
            case BroomMatrixKind::B1_BOTTLENECK:
                for (int l = 1; l <= d; ++l) {
                    acc += suff[l];
                    next[l - 1] = BigRational(p.r) * state[d] + acc;
                }
                next[d] = next[0] + state[d];
                break;
            case BroomMatrixKind::B1_NECKBOTTLE:
                for (int l = 1; l <= d; ++l) {
                    acc += suff[l];
                    next[l - 1] = acc;
                }
                next[d - 1] += BigRational(p.r) * (state[d - 1] + state[d]);
                next[d] = state[d - 1] + state[d];
                break;
        }
        state.swap(next);
    }
    BroomIterates out;
    out.variant = variant;
    out.k = k;
    out.values.assign(state.begin(), state.begin() + d);
    out.values.insert(out.values.end(), p.r, state[d]);
    return out;
}

// Exact a3 upper bound on the Perron value of the B2 bottleneck matrix:
// the ratio (M^3 1)_n / (M^2 1)_n, which is the maximum such ratio over
// all positions (attained at a pendant).
inline BigRational a3_upper_B2(const BroomParams& p) {
    detail::validate_broom(p);
    const BigRational d(p.d), r(p.r);
    return detail::b2_cube_tail(d, r) / detail::b2_square_tail(d, r);
}

// Exact third-moment lower bounds on the Perron value of the B1 bottleneck
// matrix, via the neckbottle matrix Q and via the bottleneck matrix M
// (which share that Perron value).
inline BroomLowerBounds c3_lower_B1(const BroomParams& p) {
    detail::validate_broom(p);
    const BigRational d(p.d), r(p.r);
    return {detail::b1_neckbottle_third_moment(d, r) / detail::b1_neckbottle_second_moment(d, r),
            detail::b1_bottleneck_third_moment(d, r) / detail::b1_bottleneck_second_moment(d, r)};
}

// The classical closed-form upper bound d*r + (4d^4+20d^3+25d^2+40d+1) /
// (10d^2+45d+5) on the Perron value of the B2 bottleneck matrix, used as
// the reference the a3 bound is measured against.
inline BigRational classical_upper_bound(const BroomParams& p) {
    detail::validate_broom(p);
    const BigRational d(p.d);
    const BigRational d2 = d * d;
    return d * BigRational(p.r) +
           (4 * d2 * d2 + 20 * d2 * d + 25 * d2 + 40 * d + 1) / (10 * d2 + 45 * d + 5);
}

// classical_upper_bound - a3_upper_B2 as one exact rational (positive means
// the a3 bound is sharper).  Evaluated from its own closed form; the test
// suite pins the identity with the difference of the two bounds.
inline BigRational upper_gap(const BroomParams& p) {
    detail::validate_broom(p);
    const BigRational d(p.d), r(p.r);
    return detail::gap_numerator(d, r) / detail::gap_denominator(d, r);
}

// The crossing polynomial at integer (d,r), exact.
inline BigRational F_crossing(const BroomParams& p) {
    detail::validate_broom(p);
    return detail::crossing_poly(BigRational(p.d), BigRational(p.r));
}

// Isolate the unique positive root r0 of the crossing polynomial for
// d >= 3: below r0 the neckbottle-based lower bound is sharper, above it
// the bottleneck-based one.  Exact integer sign scan finds the bracketing
// pair, then rational bisection refines to 1e-6.  The root always lies in
// (0.4 d^2 - 1, 0.42 d^2 + 2), enforced on the result.
inline double find_r0(int d) {
    if (d < 3)
        throw HypothesisError("find_r0: the crossing point requires path length d >= 3");
    const BigRational dd(d);
    const long scan_cap = static_cast<long>(2 * (0.42 * d * d + 2)) + 2;
    long bracket_lo = 0;
    BigRational root;
    bool found = false, exact_hit = false;
    int prev_sign = detail::crossing_poly(dd, BigRational(1)).sign();
    if (prev_sign == 0) {
        root = BigRational(1);
        found = exact_hit = true;
    }
    for (long rr = 2; !found && rr <= scan_cap; ++rr) {
        const int s = detail::crossing_poly(dd, BigRational(rr)).sign();
        if (s == 0) {
            root = BigRational(rr);
            found = exact_hit = true;
        } else if (prev_sign < 0 && s > 0) {
            bracket_lo = rr - 1;
            found = true;
        }
        prev_sign = s;
    }
    if (!found)
        throw InternalError("find_r0: no sign change of the crossing polynomial over the "
                            "scanned integer range");
    if (!exact_hit) {
        BigRational lo(bracket_lo), hi(bracket_lo + 1);
        const BigRational width_target(1, 2000000);  // bisect until hi - lo < 2e-6
        while (hi - lo > width_target) {
            const BigRational mid = (lo + hi) / BigRational(2);
            const int s = detail::crossing_poly(dd, mid).sign();
            if (s == 0) {
                lo = hi = mid;
                break;
            }
            (s < 0 ? lo : hi) = mid;
        }
        root = (lo + hi) / BigRational(2);
    }
    // Enforce the guaranteed enclosure (2d^2-5)/5 < r0 < (21d^2+100)/50.
    const long d2 = static_cast<long>(d) * d;
    if (!(root > BigRational(2 * d2 - 5, 5) && root < BigRational(21 * d2 + 100, 50)))
        throw InternalError("find_r0: isolated root fell outside its guaranteed enclosure");
    return root.to_double();
}

// Lower-bound comparison sweep for B1(d, r), r = 1..r_max: both exact
// third-moment bounds plus the Perron value of the bottleneck matrix.
inline std::vector<SweepRow> figure4_sweep(int d, int r_max) {
    if (d < 3) throw HypothesisError("figure4_sweep: need path length d >= 3");
    if (r_max < 1) throw HypothesisError("figure4_sweep: need r_max >= 1");
    std::vector<SweepRow> rows;
    rows.reserve(r_max);
    for (int r = 1; r <= r_max; ++r) {
        const BroomParams p{d, r};
        const BroomLowerBounds lb = c3_lower_B1(p);
        const Matrix m = bottleneck_of_rooted_tree(build_broom(BroomVariant::B1, p));
        rows.push_back({r, lb.via_m, lb.via_q, perron_root(m).value});
    }
    return rows;
}

} // namespace perron
