#include "doctest.h"

#include <cmath>
#include <random>

#include "perron/eig.hpp"
#include "perron/matrix.hpp"
#include "perron/power_iteration.hpp"

using namespace perron;

namespace {

// Path graph "a*I + b*P" test matrix: tridiagonal with a on the diagonal and
// b on the off-diagonals.  Its eigenvalues are a + 2b cos(k*pi/(n+1)).
Matrix tridiagonal(int n, double a, double b) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = a;
        if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = b;
    }
    return m;
}

Matrix random_symmetric(std::mt19937& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Matrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = dist(rng);
    return m;
}

} // namespace

TEST_CASE("matrix basics: transpose, product, predicates") {
    Matrix a{{1.0, 2.0}, {3.0, 4.0}};
    Matrix at = transpose(a);
    CHECK(at(0, 1) == 3.0);
    CHECK(at(1, 0) == 2.0);

    Matrix p = mat_mul(a, a);
    CHECK(p(0, 0) == 7.0);
    CHECK(p(0, 1) == 10.0);
    CHECK(p(1, 0) == 15.0);
    CHECK(p(1, 1) == 22.0);

    CHECK(is_nonnegative(a));
    CHECK(is_positive(a));
    CHECK_FALSE(is_positive(Matrix{{1.0, 0.0}, {1.0, 1.0}}));
    CHECK_FALSE(is_nonnegative(Matrix{{1.0, -0.5}, {0.0, 1.0}}));
    CHECK(is_symmetric(Matrix{{2.0, 1.0}, {1.0, 2.0}}));
    CHECK_FALSE(is_symmetric(a));
}

TEST_CASE("mat_vec iterates of [[1,1],[1,2]] follow the Fibonacci pattern") {
    Matrix a{{1.0, 1.0}, {1.0, 2.0}};
    Vector x{1.0, 1.0};
    Vector x1 = mat_vec(a, x);
    CHECK(x1 == Vector{2.0, 3.0});
    Vector x2 = mat_vec(a, x1);
    CHECK(x2 == Vector{5.0, 8.0});
    Vector x3 = mat_vec(a, x2);
    CHECK(x3 == Vector{13.0, 21.0});
}

TEST_CASE("irreducibility is strong connectivity") {
    // Directed 3-cycle.
    Matrix cyc{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}};
    CHECK(is_irreducible(cyc));

    // Upper-triangular block structure is reducible.
    Matrix tri{{1.0, 1.0}, {0.0, 1.0}};
    CHECK_FALSE(is_irreducible(tri));

    // Path adjacency is irreducible (undirected connectivity).
    CHECK(is_irreducible(tridiagonal(5, 0.0, 1.0)));

    // Disconnected diagonal blocks.
    Matrix blocks{{1.0, 0.0}, {0.0, 1.0}};
    CHECK_FALSE(is_irreducible(blocks));

    CHECK(is_irreducible(Matrix{{0.0}}));
    CHECK_THROWS_AS(is_irreducible(Matrix{{-1.0}}), HypothesisError);
}

TEST_CASE("jacobi eigensystem: exact small spectra") {
    // Eigenvalues 2 + sqrt 2, 2, 2 - sqrt 2.
    Matrix a{{2.0, 1.0, 1.0}, {1.0, 2.0, 0.0}, {1.0, 0.0, 2.0}};
    Eigensystem es = symmetric_eigensystem(a);
    REQUIRE(es.values.size() == 3);
    CHECK(es.values[0] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-13));
    CHECK(es.values[1] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(es.values[2] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-13));

    // Tridiagonal(1, 2, 1) on 4 points: eigenvalues 2 + 2 cos(k pi / 5).
    Matrix t = tridiagonal(4, 2.0, 1.0);
    Eigensystem et = symmetric_eigensystem(t);
    const double pi = std::acos(-1.0);
    for (int k = 0; k < 4; ++k)
        CHECK(et.values[k] == doctest::Approx(2.0 + 2.0 * std::cos((k + 1) * pi / 5.0)).epsilon(1e-13));

    // Eigenvector columns are orthonormal.
    for (int c1 = 0; c1 < 4; ++c1)
        for (int c2 = 0; c2 < 4; ++c2) {
            double s = 0.0;
            for (int i = 0; i < 4; ++i) s += et.vectors(i, c1) * et.vectors(i, c2);
            CHECK(s == doctest::Approx(c1 == c2 ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
        }
}

TEST_CASE("spectral decomposition clusters repeated eigenvalues") {
    // Star on 4 vertices (adjacency): eigenvalues sqrt 3, 0, 0, -sqrt 3.
    Matrix star(4);
    for (int leaf = 1; leaf < 4; ++leaf) star(0, leaf) = star(leaf, 0) = 1.0;
    SpectralDecomposition sd = symmetric_eig(star);
    REQUIRE(sd.eigenvalues.size() == 3);
    CHECK(sd.eigenvalues[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    CHECK(sd.eigenvalues[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
    CHECK(sd.eigenvalues[2] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-13));

    // Projector traces are the multiplicities.
    auto trace = [](const Matrix& m) {
        double t = 0.0;
        for (int i = 0; i < m.n(); ++i) t += m(i, i);
        return t;
    };
    CHECK(trace(sd.projectors[0]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trace(sd.projectors[1]) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(trace(sd.projectors[2]) == doctest::Approx(1.0).epsilon(1e-12));

    // Reconstruction and idempotence.
    Matrix recon(4);
    for (size_t t2 = 0; t2 < sd.eigenvalues.size(); ++t2)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) recon(i, j) += sd.eigenvalues[t2] * sd.projectors[t2](i, j);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(recon(i, j) == doctest::Approx(star(i, j)).scale(1.0).epsilon(1e-12));

    for (size_t t1 = 0; t1 < sd.projectors.size(); ++t1)
        for (size_t t2 = 0; t2 < sd.projectors.size(); ++t2) {
            Matrix prod = mat_mul(sd.projectors[t1], sd.projectors[t2]);
            const Matrix& expect = sd.projectors[t1];
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double want = (t1 == t2) ? expect(i, j) : 0.0;
                    CHECK(prod(i, j) == doctest::Approx(want).scale(1.0).epsilon(1e-12));
                }
        }
}

TEST_CASE("spectral decomposition reconstructs random symmetric matrices") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix a = random_symmetric(rng, 6, -5.0, 5.0);
        SpectralDecomposition sd = symmetric_eig(a);
        Matrix recon(6);
        for (size_t t = 0; t < sd.eigenvalues.size(); ++t)
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) recon(i, j) += sd.eigenvalues[t] * sd.projectors[t](i, j);
        double err = 0.0;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) err = std::max(err, std::abs(recon(i, j) - a(i, j)));
        CHECK(err <= 1e-10);
    }
}

TEST_CASE("positive semidefiniteness") {
    CHECK(is_positive_semidefinite(Matrix{{2.0, 1.0}, {1.0, 2.0}}));
    CHECK_FALSE(is_positive_semidefinite(Matrix{{1.0, 2.0}, {2.0, 1.0}}));  // eigenvalues 3, -1
    CHECK(is_positive_semidefinite(Matrix{{1.0, 1.0}, {1.0, 1.0}}));        // eigenvalues 2, 0
    CHECK_FALSE(is_positive_semidefinite(Matrix{{0.0, 1.0}, {0.0, 0.0}})); // not symmetric

    // Gram matrices are PSD.
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix b(5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) b(i, j) = dist(rng);
        CHECK(is_positive_semidefinite(mat_mul(transpose(b), b)));
    }
}

TEST_CASE("collatz-wielandt ratio bounds") {
    Matrix a{{1.0, 1.0}, {1.0, 2.0}};
    auto [lo1, hi1] = collatz_wielandt(a, {1.0, 1.0});
    CHECK(lo1 == 2.0);
    CHECK(hi1 == 3.0);
    auto [lo2, hi2] = collatz_wielandt(a, {2.0, 1.0});
    CHECK(lo2 == 1.5);
    CHECK(hi2 == 4.0);

    CHECK_THROWS_AS(collatz_wielandt(a, {1.0, 0.0}), HypothesisError);
    CHECK_THROWS_AS(collatz_wielandt(a, {1.0}), HypothesisError);
}

TEST_CASE("perron value of [[1,1],[1,2]] is the golden-ratio square") {
    Matrix a{{1.0, 1.0}, {1.0, 2.0}};
    PerronPair p = perron_root(a);
    const double rho = (3.0 + std::sqrt(5.0)) / 2.0;
    CHECK(p.value == doctest::Approx(rho).epsilon(1e-9));
    CHECK(p.lower <= rho + 1e-12);
    CHECK(p.upper >= rho - 1e-12);
    CHECK(p.residual <= 1e-8);
    CHECK(is_perron_vector(a, p.vector, 2e-9));

    // The Perron vector is proportional to (1, golden ratio).
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(p.vector[1] / p.vector[0] == doctest::Approx(phi).epsilon(1e-8));
}

TEST_CASE("perron handles the trivial sizes and rejects bad input") {
    PerronPair one = perron_root(Matrix{{5.0}});
    CHECK(one.value == 5.0);
    CHECK(one.vector == Vector{1.0});

    CHECK_THROWS_AS(perron_root(Matrix{{1.0, 1.0}, {0.0, 1.0}}), HypothesisError);
    CHECK_THROWS_AS(perron_root(Matrix{{1.0, -1.0}, {1.0, 1.0}}), HypothesisError);
}

TEST_CASE("perron reports non-convergence on a stalled imprimitive bracket") {
    // Directed weighted 2-cycle: ratio bounds oscillate between 1 and 2 forever.
    Matrix a{{0.0, 2.0}, {1.0, 0.0}};
    CHECK_THROWS_AS(perron_root(a, 1e-9, 500), ConvergenceError);
    try {
        perron_root(a, 1e-9, 500);
    } catch (const ConvergenceError& e) {
        CHECK(e.lower == doctest::Approx(1.0));
        CHECK(e.upper == doctest::Approx(2.0));
        CHECK(e.iterations == 500);
        const double rho = std::sqrt(2.0);
        CHECK(e.lower <= rho);
        CHECK(e.upper >= rho);
    }
}

TEST_CASE("perron value sits inside every ratio bracket (random positive matrices)") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> entry(0.1, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a(5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) a(i, j) = entry(rng);
        PerronPair p = perron_root(a);
        CHECK(is_perron_vector(a, p.vector, 2e-9));
        for (int probe = 0; probe < 20; ++probe) {
            Vector x(5);
            for (double& v : x) v = entry(rng);
            auto [lo, hi] = collatz_wielandt(a, x);
            CHECK(lo <= p.value * (1.0 + 1e-9));
            CHECK(hi >= p.value * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("is_perron_vector rejects non-eigenvectors and non-positive vectors") {
    Matrix a{{1.0, 1.0}, {1.0, 2.0}};
    CHECK_FALSE(is_perron_vector(a, {1.0, 1.0}));
    CHECK_FALSE(is_perron_vector(a, {1.0, -1.0}));
    CHECK_FALSE(is_perron_vector(a, {1.0, 0.0}));
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(is_perron_vector(a, {1.0, phi}, 1e-9));
    // Scaling invariance.
    CHECK(is_perron_vector(a, {17.0, 17.0 * phi}, 1e-9));
}
