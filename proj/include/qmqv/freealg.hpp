#pragma once
// Free algebra layer: interned generators, words under degree-lex order,
// noncommutative polynomials over a coefficient ring, dense matrices with
// noncommutative entries, and the gl_n R-matrix.

#include "qmqv/coeff.hpp"
#include "qmqv/quiver.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmqv {

enum class GenKind : uint8_t { A, D, AInv, DInv, GaInv, GbInv };

std::string gen_kind_name(GenKind k);

struct GenId {
    GenKind kind = GenKind::A;
    int edge = 0;  // index into Quiver::edges
    int up = 1;    // 1-based matrix indices
    int lo = 1;
    friend auto operator<=>(const GenId&, const GenId&) = default;
};

// A word is a byte string of generator codes; code order equals the
// generator order, so byte-lex comparison is generator-lex.
using Word = std::string;

struct DegLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

struct GenTable {
    std::vector<GenId> gens;           // sorted; byte code == index
    std::vector<std::string> edge_ids;  // copied from the quiver

    size_t size() const { return gens.size(); }
    int code_of(const GenId& g) const;  // -1 when absent
    const GenId& gen(uint8_t code) const { return gens.at(code); }
    Word word1(const GenId& g) const;  // throws when absent
    std::string letter_str(uint8_t code) const;
    std::string word_str(const Word& w) const;
};

// a (and optionally d) generators for every edge, in canonical order
GenTable base_gen_table(const Quiver& q, bool with_adjoints = true);

template <class K>
class PolyT {
public:
    using TermMap = std::map<Word, K, DegLex>;

    PolyT() = default;
    explicit PolyT(const K& c) { add_term(Word(), c); }
    PolyT(long n) : PolyT(K(n)) {}
    static PolyT monomial(const Word& w, const K& c) {
        PolyT p;
        p.add_term(w, c);
        return p;
    }

    bool is_zero() const { return t_.empty(); }
    const TermMap& terms() const { return t_; }
    int degree() const { return t_.empty() ? -1 : int(t_.rbegin()->first.size()); }
    const std::pair<const Word, K>& leading() const {
        if (t_.empty()) throw std::logic_error("leading term of zero");
        return *t_.rbegin();
    }

    void add_term(const Word& w, const K& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = t_.emplace(w, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    PolyT operator-() const {
        PolyT r;
        for (const auto& [w, c] : t_) r.t_.emplace(w, -c);
        return r;
    }
    PolyT& operator+=(const PolyT& o) {
        for (const auto& [w, c] : o.t_) add_term(w, c);
        return *this;
    }
    PolyT& operator-=(const PolyT& o) {
        for (const auto& [w, c] : o.t_) add_term(w, -c);
        return *this;
    }
    friend PolyT operator+(PolyT a, const PolyT& b) { return a += b; }
    friend PolyT operator-(PolyT a, const PolyT& b) { return a -= b; }
    friend PolyT operator*(const PolyT& x, const PolyT& y) {
        PolyT r;
        for (const auto& [wx, cx] : x.t_)
            for (const auto& [wy, cy] : y.t_) r.add_term(wx + wy, cx * cy);
        return r;
    }
    PolyT& operator*=(const PolyT& o) {
        *this = *this * o;
        return *this;
    }
    PolyT scaled(const K& c) const {
        PolyT r;
        for (const auto& [w, cc] : t_) r.add_term(w, cc * c);
        return r;
    }

    bool operator==(const PolyT&) const = default;

private:
    TermMap t_;
};

using NCPoly = PolyT<RatQ>;

std::string render(const NCPoly& p, const GenTable& t);

template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c)) {}
    T& at(int i, int j) { return a[size_t(i) * size_t(cols) + size_t(j)]; }
    const T& at(int i, int j) const { return a[size_t(i) * size_t(cols) + size_t(j)]; }

    static Mat id(int n, const T& one = T(1)) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
        Mat r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const T& xe = x.at(i, k);
                if (xe.is_zero()) continue;
                for (int j = 0; j < y.cols; ++j) {
                    const T& ye = y.at(k, j);
                    if (ye.is_zero()) continue;
                    r.at(i, j) += xe * ye;  // entries multiply in written order
                }
            }
        return r;
    }
    friend Mat operator+(Mat x, const Mat& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw std::invalid_argument("matrix shape mismatch");
        for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
        return x;
    }
    friend Mat operator-(Mat x, const Mat& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw std::invalid_argument("matrix shape mismatch");
        for (size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
        return x;
    }

    bool is_zero() const {
        for (const auto& e : a)
            if (!e.is_zero()) return false;
        return true;
    }

    bool operator==(const Mat&) const = default;
};

template <class T>
Mat<T> kron(const Mat<T>& x, const Mat<T>& y) {
    Mat<T> r(x.rows * y.rows, x.cols * y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) {
            if (x.at(i, j).is_zero()) continue;
            for (int p = 0; p < y.rows; ++p)
                for (int s = 0; s < y.cols; ++s) {
                    if (y.at(p, s).is_zero()) continue;
                    r.at(i * y.rows + p, j * y.cols + s) = x.at(i, j) * y.at(p, s);
                }
        }
    return r;
}

template <class T, class F>
Mat<T> mat_map(const Mat<T>& x, F&& f) {
    Mat<T> r(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = f(x.a[i]);
    return r;
}

// R acts on the square tensor space; row (i,j) and column (k,l) are
// flattened as i*n + j with 0-based indices.
Mat<RatQ> r_matrix(int n);
Mat<RatQ> r_matrix_inv(int n);
Mat<RatQ> flip_matrix(int n);
Mat<RatQ> r21_of(const Mat<RatQ>& r, int n);

bool qybe_holds(int n);
bool hecke_holds(int n);

}  // namespace qmqv
