#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "perron/errors.hpp"
#include "perron/matrix.hpp"

namespace perron {

// Full eigensystem of a symmetric matrix: values[k] is the k-th eigenvalue in
// descending order and vectors(., k) the matching orthonormal eigenvector
// column.
struct Eigensystem {
    Vector values;
    Matrix vectors;
};

// Eigenvalues grouped into numerically distinct clusters, each with its
// orthogonal spectral projector E_t = sum of v v^T over the cluster.
// eigenvalues[t] is the cluster representative (mean), descending.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    std::vector<Matrix> projectors;
};

namespace detail {

inline double off_diagonal_norm(const Matrix& s) {
    double sum = 0.0;
    for (int p = 0; p < s.n(); ++p)
        for (int q = p + 1; q < s.n(); ++q) sum += s(p, q) * s(p, q);
    return std::sqrt(2.0 * sum);
}

inline double frobenius_norm(const Matrix& a) {
    double sum = 0.0;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) sum += a(i, j) * a(i, j);
    return std::sqrt(sum);
}

} // namespace detail

// Cyclic Jacobi rotations.  Deterministic; converges quadratically once the
// off-diagonal mass is small.  The input must be symmetric.
inline Eigensystem symmetric_eigensystem(const Matrix& a) {
    const int n = a.n();
    if (n == 0) throw HypothesisError("symmetric_eigensystem: empty matrix");
    if (!is_symmetric(a, 1e-9 * std::max(1.0, detail::frobenius_norm(a))))
        throw HypothesisError("symmetric_eigensystem: matrix is not symmetric");

    Matrix s = a;
    // Enforce exact symmetry so rotations stay consistent.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double m = 0.5 * (s(i, j) + s(j, i));
            s(i, j) = s(j, i) = m;
        }
    Matrix v = Matrix::identity(n);

    const double scale = std::max(1.0, detail::frobenius_norm(s));
    const double target = 1e-15 * scale;
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && detail::off_diagonal_norm(s) > target; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = s(p, q);
                if (std::abs(apq) <= 1e-18 * scale) continue;
                const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);
                const double spp = s(p, p), sqq = s(q, q);
                s(p, p) = spp - t * apq;
                s(q, q) = sqq + t * apq;
                s(p, q) = s(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double skp = s(k, p), skq = s(k, q);
                    s(k, p) = s(p, k) = skp - sn * (skq + tau * skp);
                    s(k, q) = s(q, k) = skq + sn * (skp - tau * skq);
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp - sn * (vkq + tau * vkp);
                    v(k, q) = vkq + sn * (vkp - tau * vkq);
                }
            }
        }
    }
    if (detail::off_diagonal_norm(s) > 1e-10 * scale)
        throw InternalError("symmetric_eigensystem: Jacobi sweeps did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&s](int i, int j) { return s(i, i) > s(j, j); });

    Eigensystem out;
    out.values.resize(n);
    out.vectors = Matrix(n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = s(order[k], order[k]);
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

// Groups the sorted eigenvalues into clusters: a new cluster starts whenever
// the gap to the previous eigenvalue exceeds cluster_tol * max(1, |mu_1|),
// mu_1 being the largest eigenvalue.  Each cluster's projector is the sum of
// the outer products of its eigenvectors.
inline SpectralDecomposition symmetric_eig(const Matrix& a, double cluster_tol = 1e-9) {
    const Eigensystem es = symmetric_eigensystem(a);
    const int n = a.n();
    const double band = cluster_tol * std::max(1.0, std::abs(es.values[0]));

    SpectralDecomposition out;
    int start = 0;
    for (int k = 1; k <= n; ++k) {
        if (k == n || es.values[k - 1] - es.values[k] > band) {
            double mean = 0.0;
            Matrix proj(n);
            for (int c = start; c < k; ++c) {
                mean += es.values[c];
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        proj(i, j) += es.vectors(i, c) * es.vectors(j, c);
            }
            out.eigenvalues.push_back(mean / (k - start));
            out.projectors.push_back(std::move(proj));
            start = k;
        }
    }
    return out;
}

// True when every eigenvalue is >= -tol * max(1, |largest eigenvalue|).
inline bool is_positive_semidefinite(const Matrix& a, double tol = 1e-9) {
    if (!is_symmetric(a, 1e-9 * std::max(1.0, detail::frobenius_norm(a)))) return false;
    const Eigensystem es = symmetric_eigensystem(a);
    const double band = tol * std::max(1.0, std::abs(es.values.front()));
    return es.values.back() >= -band;
}

} // namespace perron
