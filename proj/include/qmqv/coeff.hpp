#pragma once
// Exact coefficient arithmetic: Laurent polynomials in q over Q, the
// fraction field Q(q), and truncated series in h whose coefficients are
// polynomials in formal vertex parameters.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qmqv {

// Laurent polynomial in q with rational coefficients.
// Invariant: terms_ holds no zero coefficients.
class LaurentQ {
public:
    LaurentQ() = default;
    LaurentQ(long n) : LaurentQ(mpq_class(n)) {}
    explicit LaurentQ(const mpq_class& c);
    static LaurentQ q_power(int k);
    static LaurentQ q() { return q_power(1); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    int low_exp() const;   // requires nonzero
    int high_exp() const;  // requires nonzero
    mpq_class coeff(int k) const;
    const std::map<int, mpq_class>& terms() const { return terms_; }

    LaurentQ operator-() const;
    LaurentQ& operator+=(const LaurentQ& o);
    LaurentQ& operator-=(const LaurentQ& o);
    LaurentQ& operator*=(const LaurentQ& o);
    friend LaurentQ operator+(LaurentQ a, const LaurentQ& b) { return a += b; }
    friend LaurentQ operator-(LaurentQ a, const LaurentQ& b) { return a -= b; }
    friend LaurentQ operator*(const LaurentQ& a, const LaurentQ& b);

    LaurentQ shifted(int k) const;  // multiply by q^k

    // requires q0 != 0 when negative exponents are present
    mpq_class eval(const mpq_class& q0) const;

    std::string str() const;
    static LaurentQ parse(const std::string& s);  // throws std::invalid_argument

    bool operator==(const LaurentQ&) const = default;

private:
    std::map<int, mpq_class> terms_;
    void add(int k, const mpq_class& c);
};

// Element of Q(q) in reduced form: the denominator is an ordinary
// polynomial with nonzero constant term and leading coefficient one,
// coprime to the numerator shifted to lowest exponent zero.
class RatQ {
public:
    RatQ() : num_(), den_(1) {}
    RatQ(long n) : num_(n), den_(1) {}
    explicit RatQ(const mpq_class& c) : num_(c), den_(1) {}
    RatQ(const LaurentQ& n) : num_(n), den_(1) {}
    RatQ(const LaurentQ& n, const LaurentQ& d);  // throws on d == 0
    static RatQ q_power(int k) { return RatQ(LaurentQ::q_power(k)); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    const LaurentQ& num() const { return num_; }
    const LaurentQ& den() const { return den_; }
    bool is_laurent() const { return den_.is_one(); }

    RatQ operator-() const;
    RatQ inv() const;  // throws on zero
    RatQ& operator+=(const RatQ& o);
    RatQ& operator-=(const RatQ& o);
    RatQ& operator*=(const RatQ& o);
    RatQ& operator/=(const RatQ& o);  // throws on zero divisor
    friend RatQ operator+(RatQ a, const RatQ& b) { return a += b; }
    friend RatQ operator-(RatQ a, const RatQ& b) { return a -= b; }
    friend RatQ operator*(RatQ a, const RatQ& b) { return a *= b; }
    friend RatQ operator/(RatQ a, const RatQ& b) { return a /= b; }

    // nullopt when the denominator vanishes at q0
    std::optional<mpq_class> eval(const mpq_class& q0) const;

    std::string str() const;

    bool operator==(const RatQ&) const = default;

private:
    LaurentQ num_, den_;
    void normalize();
};

// Polynomial over Q in commuting variables L_<name>, one per vertex.
// Invariant: no zero coefficients; monomial exponents are positive.
class LambdaPoly {
public:
    using Mono = std::map<std::string, int>;

    LambdaPoly() = default;
    explicit LambdaPoly(const mpq_class& c);
    static LambdaPoly var(const std::string& name);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Mono, mpq_class>& terms() const { return terms_; }
    mpq_class constant_term() const;

    LambdaPoly operator-() const;
    LambdaPoly& operator+=(const LambdaPoly& o);
    LambdaPoly& operator-=(const LambdaPoly& o);
    friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
    friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
    friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b);

    std::string str() const;

    bool operator==(const LambdaPoly&) const = default;

private:
    std::map<Mono, mpq_class> terms_;
    void add(const Mono& m, const mpq_class& c);
    friend class HbarSeries;
};

// Truncated series sum_{n<order} c_n h^n + O(h^order), c_n in Q[L_*].
// Arithmetic truncates to the smaller order of the operands.
class HbarSeries {
public:
    explicit HbarSeries(int order);
    HbarSeries(const mpq_class& c, int order);
    static HbarSeries h_power(int k, int order);
    static HbarSeries lambda(const std::string& name, int order);
    static HbarSeries exp_qpower(int k, int order);           // q^k at q = e^h
    static HbarSeries exp_h2_lambda(const std::string& name, int order);

    int order() const { return order_; }
    const LambdaPoly& coeff(int n) const;  // 0 <= n < order
    bool is_zero() const;

    HbarSeries operator-() const;
    friend HbarSeries operator+(const HbarSeries& a, const HbarSeries& b);
    friend HbarSeries operator-(const HbarSeries& a, const HbarSeries& b);
    friend HbarSeries operator*(const HbarSeries& a, const HbarSeries& b);

    HbarSeries truncated(int order) const;

    std::string str() const;
    static HbarSeries parse(const std::string& s);  // throws std::invalid_argument

    bool operator==(const HbarSeries&) const = default;

private:
    int order_ = 0;
    std::vector<LambdaPoly> c_;  // size == order_
};

// q = e^h substitution, coefficients kept through h^order inclusive.
HbarSeries hbar_substitute(const LaurentQ& p, int order);

}  // namespace qmqv
