#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "perron/errors.hpp"
#include "perron/matrix.hpp"

namespace perron {

// Arbitrary-precision rational, always kept canonical: gcd(num, den) = 1 and
// den > 0.  Backed by GMP.
class BigRational {
public:
    BigRational() : q_(0) {}
    BigRational(long v) : q_(v) {}  // NOLINT: implicit by design, mirrors integer literals
    BigRational(long num, long den) : q_(num, den) {
        if (den == 0) throw HypothesisError("BigRational: zero denominator");
        q_.canonicalize();
    }
    explicit BigRational(const mpz_class& v) : q_(v) {}
    BigRational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
        if (den == 0) throw HypothesisError("BigRational: zero denominator");
        q_.canonicalize();
    }
    explicit BigRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Exact conversion: every finite double is a dyadic rational.
    static BigRational from_double(double v) {
        BigRational r;
        r.q_ = mpq_class(v);
        r.q_.canonicalize();
        return r;
    }

    // Parses "p/q" or "p".
    static BigRational from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw HypothesisError("BigRational: cannot parse '" + s + "'");
        if (q.get_den() == 0) throw HypothesisError("BigRational: zero denominator in '" + s + "'");
        q.canonicalize();
        return BigRational(q);
    }

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    double to_double() const { return q_.get_d(); }
    // Canonical rendering: "p/q", or just "p" when the denominator is 1.
    std::string to_string() const { return q_.get_str(); }

    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }

    BigRational operator-() const { return BigRational(mpq_class(-q_)); }
    BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
    BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
    BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
    BigRational& operator/=(const BigRational& o) {
        if (o.q_ == 0) throw HypothesisError("BigRational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return a.q_ != b.q_; }
    friend bool operator<(const BigRational& a, const BigRational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const BigRational& a, const BigRational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const BigRational& a, const BigRational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const BigRational& a, const BigRational& b) { return a.q_ >= b.q_; }

private:
    mpq_class q_;
};

inline BigRational abs(const BigRational& a) { return a.sign() < 0 ? -a : a; }

inline BigRational pow(const BigRational& base, unsigned exp) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.num().get_mpz_t(), exp);
    mpz_pow_ui(den.get_mpz_t(), base.den().get_mpz_t(), exp);
    return BigRational(num, den);
}

namespace detail {

// Lifts a double matrix and vector to integer (mpz) form exactly: doubles are
// dyadic rationals, so multiplying by the common denominator clears them.
// Positive scaling never changes componentwise ratio comparisons between
// iterates, which is all the exact verification paths need.
struct IntegerLift {
    std::vector<std::vector<mpz_class>> a;  // n x n
    std::vector<mpz_class> x;               // n
};

inline IntegerLift lift_to_integers(const Matrix& am, const Vector& xv) {
    const int n = am.n();
    mpz_class da = 1, dx = 1;
    std::vector<std::vector<mpq_class>> aq(n, std::vector<mpq_class>(n));
    std::vector<mpq_class> xq(xv.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            aq[i][j] = mpq_class(am(i, j));
            aq[i][j].canonicalize();
            mpz_lcm(da.get_mpz_t(), da.get_mpz_t(), aq[i][j].get_den().get_mpz_t());
        }
    for (size_t i = 0; i < xv.size(); ++i) {
        xq[i] = mpq_class(xv[i]);
        xq[i].canonicalize();
        mpz_lcm(dx.get_mpz_t(), dx.get_mpz_t(), xq[i].get_den().get_mpz_t());
    }
    IntegerLift lift;
    lift.a.assign(n, std::vector<mpz_class>(n));
    lift.x.resize(xv.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mpq_class scaled = aq[i][j] * da;
            lift.a[i][j] = scaled.get_num();  // denominator is 1 by construction
        }
    for (size_t i = 0; i < xv.size(); ++i) {
        mpq_class scaled = xq[i] * dx;
        lift.x[i] = scaled.get_num();
    }
    return lift;
}

inline std::vector<mpz_class> integer_mat_vec(const std::vector<std::vector<mpz_class>>& a,
                                              const std::vector<mpz_class>& x) {
    const size_t n = a.size();
    std::vector<mpz_class> y(n, mpz_class(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) y[i] += a[i][j] * x[j];
    return y;
}

} // namespace detail

} // namespace perron
