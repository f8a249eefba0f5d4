#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "perron/broom.hpp"

using namespace perron;

namespace {

// Dense integer iterate X^k 1 computed with plain matrix-vector products.
// Entries stay far below 2^53 for every size used here, so doubles are
// exact integers and comparisons against BigRational values are exact.
std::vector<double> dense_iterate(const Matrix& x, int k) {
    Vector v(x.n(), 1.0);
    for (int step = 0; step < k; ++step) v = mat_vec(x, v);
    return v;
}

double sum_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e;
    return s;
}

bool equals_dense(const std::vector<BigRational>& exact, const std::vector<double>& dense) {
    if (exact.size() != dense.size()) return false;
    for (std::size_t i = 0; i < exact.size(); ++i)
        if (!exact[i].is_integer() || exact[i].to_double() != dense[i]) return false;
    return true;
}

WeightedGraph random_tree(std::mt19937_64& rng, int n) {
    WeightedGraph g;
    g.n = n;
    if (n == 1) return g;
    if (n == 2) {
        g.edges.push_back({1, 2, 1.0});
        return g;
    }
    std::uniform_int_distribution<int> lab(1, n);
    std::vector<int> seq(n - 2);
    std::vector<int> deg(n + 1, 1);
    for (int& s : seq) {
        s = lab(rng);
        ++deg[s];
    }
    std::vector<int> leaves;
    for (int v = 1; v <= n; ++v)
        if (deg[v] == 1) leaves.push_back(v);
    std::make_heap(leaves.begin(), leaves.end(), std::greater<>());
    for (int v : seq) {
        std::pop_heap(leaves.begin(), leaves.end(), std::greater<>());
        const int u = leaves.back();
        leaves.pop_back();
        g.edges.push_back({u, v, 1.0});
        if (--deg[v] == 1) {
            leaves.push_back(v);
            std::push_heap(leaves.begin(), leaves.end(), std::greater<>());
        }
    }
    std::sort(leaves.begin(), leaves.end());
    g.edges.push_back({leaves[0], leaves[1], 1.0});
    return g;
}

} // namespace

TEST_CASE("broom construction in canonical labelings") {
    {
        const RootedTree t = build_broom(BroomVariant::B1, {2, 3});
        CHECK(t.n == 5);
        CHECK(t.root == 1);
        CHECK(t.parent == std::vector<int>{0, 0, 1, 1, 1, 1});
    }
    {
        const RootedTree t = build_broom(BroomVariant::B2, {2, 3});
        CHECK(t.n == 5);
        CHECK(t.root == 1);
        CHECK(t.parent == std::vector<int>{0, 0, 1, 2, 2, 2});
    }
    {
        // d = 1: both variants collapse to the star rooted at the junction.
        const RootedTree t1 = build_broom(BroomVariant::B1, {1, 1});
        const RootedTree t2 = build_broom(BroomVariant::B2, {1, 1});
        CHECK(t1.parent == std::vector<int>{0, 0, 1});
        CHECK(t2.parent == std::vector<int>{0, 0, 1});
        CHECK(bottleneck_of_rooted_tree(t1) == Matrix{{1.0, 1.0}, {1.0, 2.0}});
        CHECK(neckbottle(t1) == Matrix{{2.0, 1.0}, {1.0, 1.0}});
    }
    CHECK_THROWS_AS(build_broom(BroomVariant::B1, {0, 1}), HypothesisError);
    CHECK_THROWS_AS(build_broom(BroomVariant::B2, {1, 0}), HypothesisError);
}

TEST_CASE("recurrence iterates on hand-checked cases") {
    {
        const BroomIterates it = broom_iterate(BroomMatrixKind::B2_BOTTLENECK, {1, 1}, 1);
        REQUIRE(it.values.size() == 2);
        CHECK(it.values[0] == BigRational(2));
        CHECK(it.values[1] == BigRational(3));
    }
    {
        const BroomIterates it = broom_iterate(BroomMatrixKind::B1_NECKBOTTLE, {1, 1}, 2);
        REQUIRE(it.values.size() == 2);
        CHECK(it.values[0] == BigRational(8));
        CHECK(it.values[1] == BigRational(5));
    }
    for (const auto kind : {BroomMatrixKind::B1_BOTTLENECK, BroomMatrixKind::B2_BOTTLENECK,
                            BroomMatrixKind::B1_NECKBOTTLE}) {
        const BroomIterates it = broom_iterate(kind, {4, 3}, 0);
        CHECK(it.k == 0);
        for (const auto& v : it.values) CHECK(v == BigRational(1));
    }
    CHECK_THROWS_AS(broom_iterate(BroomMatrixKind::B1_BOTTLENECK, {2, 2}, -1), HypothesisError);
}

TEST_CASE("closed-form spot values at (1,1)") {
    const BigRational one(1);
    CHECK(detail::b2_cube_tail(one, one) == BigRational(21));
    CHECK(detail::b2_square_tail(one, one) == BigRational(8));
    CHECK(detail::b1_neckbottle_third_moment(one, one) == BigRational(34));
    CHECK(detail::b1_neckbottle_second_moment(one, one) == BigRational(13));
    CHECK(detail::b1_bottleneck_third_moment(one, one) == BigRational(34));
    CHECK(detail::b1_bottleneck_second_moment(one, one) == BigRational(13));
    CHECK(a3_upper_B2({1, 1}) == BigRational(21, 8));
    const BroomLowerBounds lb = c3_lower_B1({1, 1});
    CHECK(lb.via_q == BigRational(34, 13));
    CHECK(lb.via_m == BigRational(34, 13));
}

TEST_CASE("closed forms, recurrences, and dense matrices agree on the 1..12 grid") {
    for (int d = 1; d <= 12; ++d) {
        for (int r = 1; r <= 12; ++r) {
            const BroomParams p{d, r};
            const int n = d + r;
            const BigRational dd(d), rr(r);

            const BroomIterates m2_2 = broom_iterate(BroomMatrixKind::B2_BOTTLENECK, p, 2);
            const BroomIterates m2_3 = broom_iterate(BroomMatrixKind::B2_BOTTLENECK, p, 3);
            const BroomIterates m1_2 = broom_iterate(BroomMatrixKind::B1_BOTTLENECK, p, 2);
            const BroomIterates m1_3 = broom_iterate(BroomMatrixKind::B1_BOTTLENECK, p, 3);
            const BroomIterates q1_2 = broom_iterate(BroomMatrixKind::B1_NECKBOTTLE, p, 2);
            const BroomIterates q1_3 = broom_iterate(BroomMatrixKind::B1_NECKBOTTLE, p, 3);

            // Closed forms equal the recurrence values exactly.
            CHECK(detail::b2_cube_tail(dd, rr) == m2_3.values[n - 1]);
            CHECK(detail::b2_square_tail(dd, rr) == m2_2.values[n - 1]);
            BigRational u1(0), u2(0), v1(0), v2(0);
            for (const auto& e : q1_3.values) u1 += e;
            for (const auto& e : q1_2.values) u2 += e;
            for (const auto& e : m1_3.values) v1 += e;
            for (const auto& e : m1_2.values) v2 += e;
            CHECK(detail::b1_neckbottle_third_moment(dd, rr) == u1);
            CHECK(detail::b1_neckbottle_second_moment(dd, rr) == u2);
            CHECK(detail::b1_bottleneck_third_moment(dd, rr) == v1);
            CHECK(detail::b1_bottleneck_second_moment(dd, rr) == v2);
            CHECK(a3_upper_B2(p) == m2_3.values[n - 1] / m2_2.values[n - 1]);
            const BroomLowerBounds lb = c3_lower_B1(p);
            CHECK(lb.via_q == u1 / u2);
            CHECK(lb.via_m == v1 / v2);

            // The ratio (M^3 1)_i / (M^2 1)_i for the B2 bottleneck matrix
            // is maximized at a pendant (exact cross-product comparison).
            for (int i = 0; i < n; ++i)
                CHECK(m2_3.values[i] * m2_2.values[n - 1] <=
                      m2_3.values[n - 1] * m2_2.values[i]);

            // Recurrences equal dense matrix powers entrywise (bottleneck
            // matrices; both brooms label depth-first already) and in total
            // mass (neckbottle, whose dense row order is a permutation).
            const Matrix m2 = bottleneck_of_rooted_tree(build_broom(BroomVariant::B2, p));
            const Matrix m1 = bottleneck_of_rooted_tree(build_broom(BroomVariant::B1, p));
            const Matrix q1 = neckbottle(build_broom(BroomVariant::B1, p));
            CHECK(equals_dense(m2_3.values, dense_iterate(m2, 3)));
            CHECK(equals_dense(m2_2.values, dense_iterate(m2, 2)));
            CHECK(equals_dense(m1_3.values, dense_iterate(m1, 3)));
            CHECK(equals_dense(m1_2.values, dense_iterate(m1, 2)));
            CHECK(u1.to_double() == sum_of(dense_iterate(q1, 3)));
            CHECK(u2.to_double() == sum_of(dense_iterate(q1, 2)));
        }
    }
}

TEST_CASE("triple agreement at large spot parameters") {
    for (const BroomParams p : {BroomParams{16, 108}, BroomParams{16, 109}, BroomParams{20, 50}}) {
        const int n = p.d + p.r;
        const BigRational dd(p.d), rr(p.r);
        const BroomIterates m2_2 = broom_iterate(BroomMatrixKind::B2_BOTTLENECK, p, 2);
        const BroomIterates m2_3 = broom_iterate(BroomMatrixKind::B2_BOTTLENECK, p, 3);
        CHECK(detail::b2_cube_tail(dd, rr) == m2_3.values[n - 1]);
        CHECK(detail::b2_square_tail(dd, rr) == m2_2.values[n - 1]);
        for (int i = 0; i < n; ++i)
            CHECK(m2_3.values[i] * m2_2.values[n - 1] <= m2_3.values[n - 1] * m2_2.values[i]);

        BigRational u1(0), u2(0), v1(0), v2(0);
        for (const auto& e : broom_iterate(BroomMatrixKind::B1_NECKBOTTLE, p, 3).values) u1 += e;
        for (const auto& e : broom_iterate(BroomMatrixKind::B1_NECKBOTTLE, p, 2).values) u2 += e;
        for (const auto& e : broom_iterate(BroomMatrixKind::B1_BOTTLENECK, p, 3).values) v1 += e;
        for (const auto& e : broom_iterate(BroomMatrixKind::B1_BOTTLENECK, p, 2).values) v2 += e;
        CHECK(detail::b1_neckbottle_third_moment(dd, rr) == u1);
        CHECK(detail::b1_neckbottle_second_moment(dd, rr) == u2);
        CHECK(detail::b1_bottleneck_third_moment(dd, rr) == v1);
        CHECK(detail::b1_bottleneck_second_moment(dd, rr) == v2);

        const Matrix m1 = bottleneck_of_rooted_tree(build_broom(BroomVariant::B1, p));
        const Matrix m2 = bottleneck_of_rooted_tree(build_broom(BroomVariant::B2, p));
        CHECK(equals_dense(m2_3.values, dense_iterate(m2, 3)));
        CHECK(v1.to_double() == sum_of(dense_iterate(m1, 3)));
    }
}

TEST_CASE("upper-bound gap identity and sharpness threshold") {
    for (int d = 1; d <= 12; ++d)
        for (int r = 1; r <= 12; ++r)
            CHECK(upper_gap({d, r}) == classical_upper_bound({d, r}) - a3_upper_B2({d, r}));
    // Long path: the cubic-moment bound beats the classical closed form at
    // every pendant count from the d/8 threshold on.
    for (int r = 3; r <= 50; ++r) CHECK(upper_gap({17, r}).sign() > 0);
    // Mid-size paths: a threshold r0 in {2,3,4} works for every r up to 200.
    for (const int d : {5, 10, 16}) {
        int threshold = 0;
        for (const int cand : {2, 3, 4}) {
            bool all_pos = true;
            for (int r = cand; r <= 200 && all_pos; ++r)
                all_pos = upper_gap({d, r}).sign() > 0;
            if (all_pos) {
                threshold = cand;
                break;
            }
        }
        CHECK(threshold != 0);
    }
    // Short paths lean the other way: for d = 1 the classical bound wins.
    CHECK(upper_gap({1, 5}).sign() < 0);
}

TEST_CASE("crossing polynomial specializations and root isolation") {
    // d = 1 reduces to r^2 - 1 and d = 2 to r^2/2 + 3r/2 + 1.
    for (int r = 1; r <= 20; ++r) {
        const BigRational rr(r);
        CHECK(F_crossing({1, r}) == rr * rr - BigRational(1));
        CHECK(F_crossing({2, r}) ==
              rr * rr / BigRational(2) + BigRational(3, 2) * rr + BigRational(1));
    }

    const double r16 = find_r0(16);
    CHECK(std::abs(r16 - 108.1708) <= 1e-3);
    CHECK(r16 > 101.4);
    CHECK(r16 < 109.52);
    CHECK(F_crossing({16, 101}).sign() < 0);
    CHECK(F_crossing({16, 110}).sign() > 0);

    const double r3 = find_r0(3);
    CHECK(r3 > 0.4 * 9 - 1);
    CHECK(r3 < 0.42 * 9 + 2);

    // The lower bounds swap sharpness across the root.
    for (const int d : {3, 5, 16}) {
        const double r0 = find_r0(d);
        const int below = static_cast<int>(std::floor(r0));
        const BroomLowerBounds lo = c3_lower_B1({d, below});
        const BroomLowerBounds hi = c3_lower_B1({d, below + 1});
        CHECK(lo.via_m < lo.via_q);
        CHECK(hi.via_m > hi.via_q);
    }

    // Exactly one sign change over positive integers.
    for (int d = 3; d <= 10; ++d) {
        const int cap = static_cast<int>(2 * (0.42 * d * d + 2));
        int flips = 0;
        int prev = F_crossing({d, 1}).sign();
        for (int r = 2; r <= cap; ++r) {
            const int s = F_crossing({d, r}).sign();
            if (s != 0 && prev != 0 && s != prev) ++flips;
            if (s != 0) prev = s;
        }
        CHECK(flips == 1);
    }

    CHECK_THROWS_AS(find_r0(2), HypothesisError);
}

TEST_CASE("bound validity against dense Perron values on the 1..12 grid") {
    for (int d = 1; d <= 12; ++d) {
        for (int r = 1; r <= 12; ++r) {
            const BroomParams p{d, r};
            const Matrix m1 = bottleneck_of_rooted_tree(build_broom(BroomVariant::B1, p));
            const Matrix m2 = bottleneck_of_rooted_tree(build_broom(BroomVariant::B2, p));
            const double rho1 = perron_root(m1).value;
            const double rho2 = perron_root(m2).value;
            const BroomLowerBounds lb = c3_lower_B1(p);
            CHECK(lb.via_q.to_double() < rho1 + 1e-9 * rho1);
            CHECK(lb.via_m.to_double() < rho1 + 1e-9 * rho1);
            CHECK(a3_upper_B2(p).to_double() > rho2 - 1e-9 * rho2);
        }
    }
}

TEST_CASE("lower-bound sweep shows the crossing and stays below the Perron value") {
    const std::vector<SweepRow> rows = figure4_sweep(16, 110);
    REQUIRE(rows.size() == 110);
    for (const SweepRow& row : rows) {
        CHECK(row.c3_m.to_double() < row.rho_m * (1 + 1e-9));
        CHECK(row.c3_q.to_double() < row.rho_m * (1 + 1e-9));
    }
    CHECK(rows[107].r == 108);
    CHECK(rows[107].c3_m < rows[107].c3_q);
    CHECK(rows[108].r == 109);
    CHECK(rows[108].c3_m > rows[108].c3_q);
    // Appending pendants embeds each bottleneck matrix into the next, so
    // the Perron value is nondecreasing along the sweep.
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].rho_m >= rows[i - 1].rho_m * (1 - 1e-9));
    CHECK_THROWS_AS(figure4_sweep(2, 10), HypothesisError);
    CHECK_THROWS_AS(figure4_sweep(16, 0), HypothesisError);
}

TEST_CASE("broom bottleneck matrices bracket every rooted tree's Perron value") {
    std::mt19937_64 rng(90210u);
    std::uniform_int_distribution<int> size(2, 40);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = size(rng);
        const WeightedGraph g = random_tree(rng, n);
        std::uniform_int_distribution<int> pick(1, n);
        const RootedTree t = to_rooted(g, pick(rng));
        const int d = root_eccentricity(t);
        const int r = n - d;
        REQUIRE(d >= 1);
        REQUIRE(r >= 1);
        const double rho = perron_root(bottleneck_of_rooted_tree(t)).value;
        const double rho_lo = perron_root(
            bottleneck_of_rooted_tree(build_broom(BroomVariant::B1, {d, r}))).value;
        const double rho_hi = perron_root(
            bottleneck_of_rooted_tree(build_broom(BroomVariant::B2, {d, r}))).value;
        CHECK(rho_lo <= rho * (1 + 1e-9));
        CHECK(rho <= rho_hi * (1 + 1e-9));
    }
}
