#include "qmqv/coeff.hpp"

#include <cctype>
#include <stdexcept>
#include <string_view>
#include <utility>

namespace qmqv {

namespace {

mpq_class qpow(const mpq_class& q0, int k) {
    if (k == 0) return mpq_class(1);
    mpz_class nn, dd;
    unsigned long e = static_cast<unsigned long>(k > 0 ? k : -long(k));
    mpz_pow_ui(nn.get_mpz_t(), q0.get_num().get_mpz_t(), e);
    mpz_pow_ui(dd.get_mpz_t(), q0.get_den().get_mpz_t(), e);
    if (k < 0) std::swap(nn, dd);
    if (dd == 0) throw std::domain_error("qpow: 0 raised to a negative power");
    mpq_class r(nn, dd);
    r.canonicalize();
    return r;
}

void append_term(std::string& s, bool neg, const std::string& body) {
    if (s.empty()) {
        if (neg) s += "-";
    } else {
        s += neg ? " - " : " + ";
    }
    s += body;
}

std::string coeff_term_str(const mpq_class& c, const std::string& tail) {
    if (tail.empty()) return c.get_str();
    if (c == 1) return tail;
    return c.get_str() + "*" + tail;
}

std::string mono_str(const LambdaPoly::Mono& m) {
    std::string t;
    for (const auto& [v, e] : m) {
        if (!t.empty()) t += "*";
        t += "L_" + v;
        if (e != 1) t += "^" + std::to_string(e);
    }
    return t;
}

struct Lexer {
    std::string_view s;
    size_t i = 0;
    explicit Lexer(const std::string& in) : s(in) {}
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip();
        return i >= s.size();
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw std::invalid_argument(std::string("expected '") + c + "'");
    }
    std::string digits() {
        skip();
        size_t j = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == j) throw std::invalid_argument("expected a number");
        return std::string(s.substr(j, i - j));
    }
    std::string name() {
        skip();
        size_t j = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        if (i == j) throw std::invalid_argument("expected a name");
        return std::string(s.substr(j, i - j));
    }
    int signed_int() {
        int sign = 1;
        if (eat('-')) sign = -1;
        else eat('+');
        return sign * std::stoi(digits());
    }
};

mpq_class parse_rational(Lexer& lx) {
    std::string n = lx.digits();
    if (lx.eat('/')) n += "/" + lx.digits();
    mpq_class v(n);
    v.canonicalize();
    return v;
}

LaurentQ parse_lq_factor(Lexer& lx) {
    char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return LaurentQ(parse_rational(lx));
    if (c == 'q') {
        std::string nm = lx.name();
        if (nm != "q") throw std::invalid_argument("unknown symbol: " + nm);
        int k = 1;
        if (lx.eat('^')) k = lx.signed_int();
        return LaurentQ::q_power(k);
    }
    throw std::invalid_argument("expected a coefficient or q power");
}

using Dense = std::vector<mpq_class>;  // coeff of q^i; back() nonzero unless empty

void dense_trim(Dense& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense dense_of(const LaurentQ& p) {
    // requires p nonzero with low_exp() == 0
    Dense a(size_t(p.high_exp()) + 1, mpq_class(0));
    for (const auto& [k, c] : p.terms()) a[size_t(k)] = c;
    return a;
}

LaurentQ laurent_of(const Dense& a, int shift) {
    LaurentQ r;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) r += LaurentQ(a[i]).shifted(int(i) + shift);
    return r;
}

std::pair<Dense, Dense> dense_divmod(Dense a, const Dense& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    dense_trim(a);
    if (a.size() < b.size()) return {Dense{}, std::move(a)};
    Dense q(a.size() - b.size() + 1, mpq_class(0));
    for (size_t qi = q.size(); qi-- > 0;) {
        size_t top = qi + b.size() - 1;
        if (a[top] == 0) continue;
        mpq_class f(a[top] / b.back());
        q[qi] = f;
        for (size_t j = 0; j < b.size(); ++j) a[qi + j] -= f * b[j];
    }
    dense_trim(a);
    return {std::move(q), std::move(a)};
}

Dense dense_gcd(Dense a, Dense b) {
    dense_trim(a);
    dense_trim(b);
    while (!b.empty()) {
        auto [q, r] = dense_divmod(std::move(a), b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        mpq_class lc = a.back();
        for (auto& c : a) c /= lc;
    }
    return a;
}

Dense dense_divexact(const Dense& a, const Dense& b) {
    auto [q, r] = dense_divmod(a, b);
    if (!r.empty()) throw std::logic_error("inexact polynomial division");
    return q;
}

}  // namespace

// ---------------------------------------------------------------- LaurentQ

LaurentQ::LaurentQ(const mpq_class& c) {
    if (c != 0) terms_[0] = c;
}

LaurentQ LaurentQ::q_power(int k) {
    LaurentQ r;
    r.terms_[k] = 1;
    return r;
}

bool LaurentQ::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

int LaurentQ::low_exp() const {
    if (terms_.empty()) throw std::logic_error("low_exp of zero");
    return terms_.begin()->first;
}

int LaurentQ::high_exp() const {
    if (terms_.empty()) throw std::logic_error("high_exp of zero");
    return terms_.rbegin()->first;
}

mpq_class LaurentQ::coeff(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

void LaurentQ::add(int k, const mpq_class& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentQ LaurentQ::operator-() const {
    LaurentQ r;
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
}

LaurentQ& LaurentQ::operator+=(const LaurentQ& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

LaurentQ& LaurentQ::operator-=(const LaurentQ& o) {
    for (const auto& [k, c] : o.terms_) add(k, mpq_class(-c));
    return *this;
}

LaurentQ operator*(const LaurentQ& a, const LaurentQ& b) {
    LaurentQ r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) r.add(ka + kb, mpq_class(ca * cb));
    return r;
}

LaurentQ& LaurentQ::operator*=(const LaurentQ& o) {
    *this = *this * o;
    return *this;
}

LaurentQ LaurentQ::shifted(int k) const {
    LaurentQ r;
    for (const auto& [e, c] : terms_) r.terms_[e + k] = c;
    return r;
}

mpq_class LaurentQ::eval(const mpq_class& q0) const {
    mpq_class r(0);
    for (const auto& [k, c] : terms_) r += c * qpow(q0, k);
    return r;
}

std::string LaurentQ::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        mpq_class c = it->second;
        bool neg = c < 0;
        if (neg) c = -c;
        int k = it->first;
        std::string tail;
        if (k != 0) tail = k == 1 ? "q" : "q^" + std::to_string(k);
        append_term(s, neg, coeff_term_str(c, tail));
    }
    return s;
}

LaurentQ LaurentQ::parse(const std::string& in) {
    Lexer lx(in);
    if (lx.eof()) throw std::invalid_argument("empty input");
    LaurentQ acc;
    bool first = true;
    while (!lx.eof()) {
        int sign = 1;
        if (lx.eat('-')) {
            sign = -1;
        } else if (lx.eat('+')) {
            if (first) throw std::invalid_argument("unexpected leading +");
        } else if (!first) {
            throw std::invalid_argument("expected + or - between terms");
        }
        LaurentQ term = parse_lq_factor(lx);
        while (lx.eat('*')) term *= parse_lq_factor(lx);
        if (sign < 0) term = -term;
        acc += term;
        first = false;
    }
    return acc;
}

// ------------------------------------------------------------------- RatQ

RatQ::RatQ(const LaurentQ& n, const LaurentQ& d) : num_(n), den_(d) {
    if (d.is_zero()) throw std::domain_error("zero denominator");
    normalize();
}

void RatQ::normalize() {
    if (num_.is_zero()) {
        den_ = LaurentQ(1);
        return;
    }
    int sn = num_.low_exp(), sd = den_.low_exp();
    Dense a = dense_of(num_.shifted(-sn));
    Dense b = dense_of(den_.shifted(-sd));
    Dense g = dense_gcd(a, b);
    if (g.size() > 1) {
        a = dense_divexact(a, g);
        b = dense_divexact(b, g);
    }
    mpq_class lc = b.back();
    if (lc != 1) {
        for (auto& c : a) c /= lc;
        for (auto& c : b) c /= lc;
    }
    num_ = laurent_of(a, sn - sd);
    den_ = laurent_of(b, 0);
}

RatQ RatQ::operator-() const {
    RatQ r(*this);
    r.num_ = -r.num_;
    return r;
}

RatQ RatQ::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return RatQ(den_, num_);
}

RatQ& RatQ::operator+=(const RatQ& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RatQ& RatQ::operator-=(const RatQ& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RatQ& RatQ::operator*=(const RatQ& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

RatQ& RatQ::operator/=(const RatQ& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

std::optional<mpq_class> RatQ::eval(const mpq_class& q0) const {
    if (num_.is_zero()) return mpq_class(0);
    if (q0 == 0 && num_.low_exp() < 0) return std::nullopt;
    mpq_class d = den_.eval(q0);
    if (d == 0) return std::nullopt;
    return mpq_class(num_.eval(q0) / d);
}

std::string RatQ::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ------------------------------------------------------------- LambdaPoly

LambdaPoly::LambdaPoly(const mpq_class& c) {
    if (c != 0) terms_[{}] = c;
}

LambdaPoly LambdaPoly::var(const std::string& name) {
    LambdaPoly r;
    r.terms_[{{name, 1}}] = 1;
    return r;
}

mpq_class LambdaPoly::constant_term() const {
    auto it = terms_.find({});
    return it == terms_.end() ? mpq_class(0) : it->second;
}

void LambdaPoly::add(const Mono& m, const mpq_class& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LambdaPoly LambdaPoly::operator-() const {
    LambdaPoly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

LambdaPoly& LambdaPoly::operator+=(const LambdaPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

LambdaPoly& LambdaPoly::operator-=(const LambdaPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, mpq_class(-c));
    return *this;
}

LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
    LambdaPoly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            LambdaPoly::Mono m = ma;
            for (const auto& [v, e] : mb) m[v] += e;
            r.add(m, mpq_class(ca * cb));
        }
    return r;
}

std::string LambdaPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        mpq_class a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        append_term(s, neg, coeff_term_str(a, mono_str(m)));
    }
    return s;
}

// ------------------------------------------------------------- HbarSeries

HbarSeries::HbarSeries(int order) : order_(order) {
    if (order < 0) throw std::invalid_argument("negative series order");
    c_.resize(size_t(order));
}

HbarSeries::HbarSeries(const mpq_class& c, int order) : HbarSeries(order) {
    if (order_ > 0) c_[0] = LambdaPoly(c);
}

HbarSeries HbarSeries::h_power(int k, int order) {
    if (k < 0) throw std::invalid_argument("negative h power");
    HbarSeries r(order);
    if (k < order) r.c_[size_t(k)] = LambdaPoly(mpq_class(1));
    return r;
}

HbarSeries HbarSeries::lambda(const std::string& name, int order) {
    HbarSeries r(order);
    if (order > 0) r.c_[0] = LambdaPoly::var(name);
    return r;
}

HbarSeries HbarSeries::exp_qpower(int k, int order) {
    HbarSeries r(order);
    mpq_class term(1);  // k^n / n!
    for (int n = 0; n < order; ++n) {
        if (n > 0) {
            term *= k;
            term /= n;
        }
        r.c_[size_t(n)] = LambdaPoly(term);
    }
    return r;
}

HbarSeries HbarSeries::exp_h2_lambda(const std::string& name, int order) {
    HbarSeries r(order);
    LambdaPoly lam = LambdaPoly::var(name);
    LambdaPoly pw(mpq_class(1));  // lam^n / n!
    for (int n = 0; 2 * n < order; ++n) {
        if (n > 0) pw = pw * lam * LambdaPoly(mpq_class(1, n));
        r.c_[size_t(2 * n)] = pw;
    }
    return r;
}

const LambdaPoly& HbarSeries::coeff(int n) const {
    if (n < 0 || n >= order_) throw std::out_of_range("series coefficient past order");
    return c_[size_t(n)];
}

bool HbarSeries::is_zero() const {
    for (const auto& p : c_)
        if (!p.is_zero()) return false;
    return true;
}

HbarSeries HbarSeries::operator-() const {
    HbarSeries r(*this);
    for (auto& p : r.c_) p = -p;
    return r;
}

HbarSeries operator+(const HbarSeries& a, const HbarSeries& b) {
    HbarSeries r(std::min(a.order_, b.order_));
    for (int n = 0; n < r.order_; ++n) r.c_[size_t(n)] = a.c_[size_t(n)] + b.c_[size_t(n)];
    return r;
}

HbarSeries operator-(const HbarSeries& a, const HbarSeries& b) {
    HbarSeries r(std::min(a.order_, b.order_));
    for (int n = 0; n < r.order_; ++n) r.c_[size_t(n)] = a.c_[size_t(n)] - b.c_[size_t(n)];
    return r;
}

HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) {
    HbarSeries r(std::min(a.order_, b.order_));
    for (int i = 0; i < r.order_; ++i) {
        if (a.c_[size_t(i)].is_zero()) continue;
        for (int j = 0; i + j < r.order_; ++j)
            r.c_[size_t(i + j)] += a.c_[size_t(i)] * b.c_[size_t(j)];
    }
    return r;
}

HbarSeries HbarSeries::truncated(int order) const {
    if (order > order_) throw std::invalid_argument("cannot extend a truncated series");
    HbarSeries r(order);
    for (int n = 0; n < order; ++n) r.c_[size_t(n)] = c_[size_t(n)];
    return r;
}

HbarSeries hbar_substitute(const LaurentQ& p, int order) {
    if (order < 0) throw std::invalid_argument("negative truncation order");
    HbarSeries r(order + 1);
    for (const auto& [k, c] : p.terms())
        r = r + HbarSeries(c, order + 1) * HbarSeries::exp_qpower(k, order + 1);
    return r;
}

std::string HbarSeries::str() const {
    std::string s;
    for (int n = 0; n < order_; ++n) {
        for (const auto& [m, c] : c_[size_t(n)].terms()) {
            mpq_class a = c;
            bool neg = a < 0;
            if (neg) a = -a;
            std::string tail;
            if (n > 0) tail = n == 1 ? "h" : "h^" + std::to_string(n);
            std::string ms = mono_str(m);
            if (!ms.empty()) tail += tail.empty() ? ms : "*" + ms;
            append_term(s, neg, coeff_term_str(a, tail));
        }
    }
    std::string otail = "O(h^" + std::to_string(order_) + ")";
    return s.empty() ? otail : s + " + " + otail;
}

HbarSeries HbarSeries::parse(const std::string& in) {
    Lexer lx(in);
    if (lx.eof()) throw std::invalid_argument("empty input");
    struct Term {
        mpq_class c;
        int h = 0;
        LambdaPoly::Mono m;
    };
    std::vector<Term> terms;
    std::optional<int> order;
    bool first = true;
    while (!lx.eof()) {
        if (order) throw std::invalid_argument("terms after the O(...) tail");
        int sign = 1;
        if (lx.eat('-')) {
            sign = -1;
        } else if (lx.eat('+')) {
            if (first) throw std::invalid_argument("unexpected leading +");
        } else if (!first) {
            throw std::invalid_argument("expected + or - between terms");
        }
        first = false;
        if (lx.peek() == 'O') {
            if (sign < 0) throw std::invalid_argument("negated O(...) tail");
            lx.name();
            lx.expect('(');
            if (lx.peek() == '1') {
                lx.digits();
                order = 0;
            } else {
                std::string nm = lx.name();
                if (nm != "h") throw std::invalid_argument("expected h inside O(...)");
                int k = 1;
                if (lx.eat('^')) k = lx.signed_int();
                order = k;
            }
            lx.expect(')');
            continue;
        }
        Term t;
        t.c = sign;
        do {
            char c = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                t.c *= parse_rational(lx);
            } else if (c == 'h') {
                std::string nm = lx.name();
                if (nm != "h") throw std::invalid_argument("unknown symbol: " + nm);
                int k = 1;
                if (lx.eat('^')) k = lx.signed_int();
                if (k < 0) throw std::invalid_argument("negative h power");
                t.h += k;
            } else if (c == 'L') {
                std::string nm = lx.name();
                if (nm.size() < 3 || nm.compare(0, 2, "L_") != 0)
                    throw std::invalid_argument("unknown symbol: " + nm);
                int k = 1;
                if (lx.eat('^')) k = lx.signed_int();
                if (k <= 0) throw std::invalid_argument("nonpositive variable power");
                t.m[nm.substr(2)] += k;
            } else {
                throw std::invalid_argument("expected a series factor");
            }
        } while (lx.eat('*'));
        terms.push_back(std::move(t));
    }
    int ord;
    if (order) {
        ord = *order;
    } else {
        ord = 1;
        for (const auto& t : terms) ord = std::max(ord, t.h + 1);
    }
    HbarSeries r(ord);
    for (const auto& t : terms)
        if (t.h < ord) r.c_[size_t(t.h)].add(t.m, t.c);
    return r;
}

}  // namespace qmqv
