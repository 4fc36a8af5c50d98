#include "qmqv/freealg.hpp"

#include <algorithm>

namespace qmqv {

std::string gen_kind_name(GenKind k) {
    switch (k) {
        case GenKind::A: return "a";
        case GenKind::D: return "d";
        case GenKind::AInv: return "ainv";
        case GenKind::DInv: return "dinv";
        case GenKind::GaInv: return "gainv";
        case GenKind::GbInv: return "gbinv";
    }
    return "?";
}

int GenTable::code_of(const GenId& g) const {
    auto it = std::lower_bound(gens.begin(), gens.end(), g);
    if (it == gens.end() || !(*it == g)) return -1;
    return int(it - gens.begin());
}

Word GenTable::word1(const GenId& g) const {
    int c = code_of(g);
    if (c < 0) throw std::logic_error("generator not in table");
    return Word(1, char(c));
}

std::string GenTable::letter_str(uint8_t code) const {
    const GenId& g = gen(code);
    return gen_kind_name(g.kind) + "[" + edge_ids.at(size_t(g.edge)) + "]^" +
           std::to_string(g.up) + "_" + std::to_string(g.lo);
}

std::string GenTable::word_str(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (char c : w) {
        if (!s.empty()) s += ".";
        s += letter_str(uint8_t(c));
    }
    return s;
}

GenTable base_gen_table(const Quiver& q, bool with_adjoints) {
    GenTable t;
    for (const auto& e : q.edges) t.edge_ids.push_back(e.id);
    for (size_t e = 0; e < q.edges.size(); ++e) {
        int ds = q.vertices[size_t(q.edges[e].src)].dim;
        int dt = q.vertices[size_t(q.edges[e].tgt)].dim;
        for (int i = 1; i <= ds; ++i)
            for (int j = 1; j <= dt; ++j) t.gens.push_back({GenKind::A, int(e), i, j});
    }
    if (with_adjoints)
        for (size_t e = 0; e < q.edges.size(); ++e) {
            int ds = q.vertices[size_t(q.edges[e].src)].dim;
            int dt = q.vertices[size_t(q.edges[e].tgt)].dim;
            for (int i = 1; i <= dt; ++i)
                for (int j = 1; j <= ds; ++j) t.gens.push_back({GenKind::D, int(e), i, j});
        }
    if (!std::is_sorted(t.gens.begin(), t.gens.end()))
        throw std::logic_error("generator table out of order");
    if (t.gens.size() > 255) throw std::runtime_error("too many generators for byte codes");
    return t;
}

std::string render(const NCPoly& p, const GenTable& t) {
    if (p.is_zero()) return "0";
    std::string s;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const Word& w = it->first;
        const RatQ& c = it->second;
        std::string body;
        bool neg = false;
        if (c.is_laurent() && c.num().terms().size() == 1) {
            auto [exp, coe] = *c.num().terms().begin();
            mpq_class cc = coe;
            neg = cc < 0;
            if (neg) cc = -cc;
            std::string cs = LaurentQ(cc).shifted(exp).str();
            if (w.empty()) body = cs;
            else if (cs == "1") body = t.word_str(w);
            else body = cs + "*" + t.word_str(w);
        } else {
            body = "(" + c.str() + ")";
            if (!w.empty()) body += "*" + t.word_str(w);
        }
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        s += body;
    }
    return s;
}

Mat<RatQ> r_matrix(int n) {
    // q^{delta_ij} on matching pairs plus (q - q^-1) above the diagonal
    Mat<RatQ> r(n * n, n * n);
    RatQ qq = RatQ::q_power(1), qi = RatQ::q_power(-1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            r.at(i * n + j, i * n + j) += i == j ? qq : RatQ(1);
            if (i > j) r.at(i * n + j, j * n + i) += qq - qi;
        }
    return r;
}

Mat<RatQ> r_matrix_inv(int n) {
    Mat<RatQ> r(n * n, n * n);
    RatQ qq = RatQ::q_power(1), qi = RatQ::q_power(-1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            r.at(i * n + j, i * n + j) += i == j ? qi : RatQ(1);
            if (i > j) r.at(i * n + j, j * n + i) -= qq - qi;
        }
    return r;
}

Mat<RatQ> flip_matrix(int n) {
    Mat<RatQ> t(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.at(i * n + j, j * n + i) = RatQ(1);
    return t;
}

Mat<RatQ> r21_of(const Mat<RatQ>& r, int n) {
    Mat<RatQ> s(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    s.at(i * n + j, k * n + l) = r.at(j * n + i, l * n + k);
    return s;
}

bool qybe_holds(int n) {
    Mat<RatQ> r = r_matrix(n), idn = Mat<RatQ>::id(n), fl = flip_matrix(n);
    Mat<RatQ> r12 = kron(r, idn), r23 = kron(idn, r);
    Mat<RatQ> t12 = kron(fl, idn), t23 = kron(idn, fl);
    Mat<RatQ> lhs = t12 * r12 * t23 * r23 * t12 * r12;
    Mat<RatQ> rhs = t23 * r23 * t12 * r12 * t23 * r23;
    return lhs == rhs;
}

bool hecke_holds(int n) {
    Mat<RatQ> r = r_matrix(n), fl = flip_matrix(n);
    Mat<RatQ> lhs = fl * r - r_matrix_inv(n) * fl;
    Mat<RatQ> rhs = Mat<RatQ>::id(n * n, RatQ::q_power(1) - RatQ::q_power(-1));
    return lhs == rhs;
}

}  // namespace qmqv
