#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "perron/errors.hpp"

namespace perron {

using Vector = std::vector<double>;

// Dense square matrix of doubles, row-major.  Entries are addressed with
// 0-based (i, j).  Sized at construction; n() is the dimension.
class Matrix {
public:
    Matrix() : n_(0) {}
    explicit Matrix(int n, double fill = 0.0) : n_(n), a_(static_cast<size_t>(n) * n, fill) {
        if (n < 0) throw HypothesisError("matrix dimension must be nonnegative");
    }
    Matrix(std::initializer_list<std::initializer_list<double>> rows)
        : n_(static_cast<int>(rows.size())), a_(rows.size() * rows.size(), 0.0) {
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != n_)
                throw HypothesisError("matrix initializer must be square");
            int j = 0;
            for (double v : row) (*this)(i, j++) = v;
            ++i;
        }
    }

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int n() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    bool operator==(const Matrix& o) const { return n_ == o.n_ && a_ == o.a_; }

private:
    int n_;
    std::vector<double> a_;
};

inline Matrix transpose(const Matrix& a) {
    const int n = a.n();
    Matrix t(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t(j, i) = a(i, j);
    return t;
}

inline Vector mat_vec(const Matrix& a, const Vector& x) {
    const int n = a.n();
    if (static_cast<int>(x.size()) != n)
        throw HypothesisError("mat_vec: dimension mismatch");
    Vector y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    const int n = a.n();
    if (b.n() != n) throw HypothesisError("mat_mul: dimension mismatch");
    Matrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline double dot(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw HypothesisError("dot: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double max_abs(const Vector& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

inline bool is_nonnegative(const Matrix& a) {
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j)
            if (a(i, j) < 0.0) return false;
    return true;
}

inline bool is_positive(const Matrix& a) {
    if (a.n() == 0) return false;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j)
            if (a(i, j) <= 0.0) return false;
    return true;
}

inline bool is_positive(const Vector& x) {
    if (x.empty()) return false;
    return std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
}

inline bool is_nonnegative(const Vector& x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0; });
}

inline bool is_symmetric(const Matrix& a, double tol = 1e-12) {
    for (int i = 0; i < a.n(); ++i)
        for (int j = i + 1; j < a.n(); ++j)
            if (std::abs(a(i, j) - a(j, i)) > tol) return false;
    return true;
}

// Strong connectivity of the directed graph with an arc i -> j whenever
// a(i, j) > 0.  Requires a nonnegative matrix.  A 1x1 matrix is irreducible
// by convention.
inline bool is_irreducible(const Matrix& a) {
    if (!is_nonnegative(a)) throw HypothesisError("is_irreducible: matrix must be nonnegative");
    const int n = a.n();
    if (n == 0) return false;
    if (n == 1) return true;
    auto reach_all = [n, &a](bool transposed) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack = {0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v) {
                double w = transposed ? a(v, u) : a(u, v);
                if (w > 0.0 && !seen[v]) {
                    seen[v] = 1;
                    ++count;
                    stack.push_back(v);
                }
            }
        }
        return count == n;
    };
    return reach_all(false) && reach_all(true);
}

} // namespace perron
