#include "qmqv/moment.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace qmqv {

namespace {

RatQ qdiff() { return RatQ::q_power(1) - RatQ::q_power(-1); }

const Edge& checked_edge(const Presentation& p, int e, const char* who) {
    if (e < 0 || size_t(e) >= p.quiver.edges.size())
        throw std::invalid_argument(std::string(who) + ": edge index out of range");
    if (!p.has_adjoints)
        throw std::invalid_argument(std::string(who) + ": presentation has no derivative generators");
    return p.quiver.edges[size_t(e)];
}

Mat<NCPoly> gen_matrix(const Presentation& p, int e, bool adjoint) {
    const Edge& ed = p.quiver.edges[size_t(e)];
    VirtualEdge ve{e, adjoint, adjoint ? ed.tgt : ed.src, adjoint ? ed.src : ed.tgt};
    return virtual_edge_matrix(p.gens, p.quiver, ve);
}

Mat<NCPoly> one_plus_scaled(const Mat<NCPoly>& prod, const RatQ& c) {
    Mat<NCPoly> r = Mat<NCPoly>::id(prod.rows, NCPoly(1));
    for (int i = 0; i < prod.rows; ++i)
        for (int j = 0; j < prod.cols; ++j) r.at(i, j) += prod.at(i, j).scaled(c);
    return r;
}

}  // namespace

RatQ CharacterSpec::at(const std::string& id) const {
    auto it = values.find(id);
    if (it == values.end()) return RatQ(1);
    if (it->second.is_zero())
        throw std::invalid_argument("character value at vertex \"" + id + "\" must be nonzero");
    return it->second;
}

MomentMatrix edge_moment_beta(const Presentation& p, int e, const RatQ& t) {
    const Edge& ed = checked_edge(p, e, "edge_moment_beta");
    if (ed.src == ed.tgt)
        throw std::invalid_argument("edge_moment_beta: loop edges have a separate map");
    Mat<NCPoly> a = gen_matrix(p, e, false);
    Mat<NCPoly> d = gen_matrix(p, e, true);
    return {ed.tgt, one_plus_scaled(d * a, t * qdiff())};
}

MomentMatrix edge_moment_alpha_bar(const Presentation& p, int e, const RatQ& t) {
    const Edge& ed = checked_edge(p, e, "edge_moment_alpha_bar");
    if (ed.src == ed.tgt)
        throw std::invalid_argument("edge_moment_alpha_bar: loop edges have a separate map");
    Mat<NCPoly> a = gen_matrix(p, e, false);
    Mat<NCPoly> d = gen_matrix(p, e, true);
    return {ed.src, one_plus_scaled(a * d, t * qdiff())};
}

MomentMatrix edge_moment_loop(const Presentation& p, int e) {
    const Edge& ed = checked_edge(p, e, "edge_moment_loop");
    if (ed.src != ed.tgt) throw std::invalid_argument("edge_moment_loop: not a loop");
    if (p.quiver.vertices[size_t(ed.src)].dim != 1)
        throw std::runtime_error("loop moment map requires matrix inverses; unsupported");
    if (p.gens.code_of({GenKind::AInv, e, 1, 1}) < 0 ||
        p.gens.code_of({GenKind::DInv, e, 1, 1}) < 0)
        throw std::invalid_argument("edge_moment_loop: presentation lacks the loop's inverses");
    Word w = p.gens.word1({GenKind::D, e, 1, 1}) + p.gens.word1({GenKind::AInv, e, 1, 1}) +
             p.gens.word1({GenKind::DInv, e, 1, 1}) + p.gens.word1({GenKind::A, e, 1, 1});
    Mat<NCPoly> m(1, 1);
    m.at(0, 0) = NCPoly::monomial(w, RatQ(1));
    return {ed.src, m};
}

MomentMatrix vertex_moment(const Presentation& p, int v, const RatQ& t) {
    if (v < 0 || size_t(v) >= p.quiver.vertices.size())
        throw std::invalid_argument("vertex_moment: vertex index out of range");
    int n = p.quiver.vertices[size_t(v)].dim;
    Mat<NCPoly> m = Mat<NCPoly>::id(n, NCPoly(1));
    for (size_t e = 0; e < p.quiver.edges.size(); ++e) {
        const Edge& ed = p.quiver.edges[e];
        if (ed.src != v && ed.tgt != v) continue;
        if (ed.src == ed.tgt) {
            m = m * edge_moment_loop(p, int(e)).m;
        } else if (ed.tgt == v) {
            m = m * edge_moment_beta(p, int(e), t).m;
        } else {
            if (t.is_zero()) continue;
            int inv = n == 1 && t.is_one() ? p.gens.code_of({GenKind::GbInv, int(e), 1, 1}) : -1;
            if (inv < 0)
                throw std::runtime_error(
                    "source-side moment map needs the inverse of 1 + t(q - q^{-1}) a d; "
                    "only t = 1 with an adjoined GbInv at a 1x1 edge is supported");
            Mat<NCPoly> f(1, 1);
            f.at(0, 0) = NCPoly::monomial(Word(1, char(inv)), RatQ(1));
            m = m * f;
        }
    }
    return {v, m};
}

std::vector<InverseSpec> vertex_moment_inverse_specs(const Quiver& q) {
    std::vector<InverseSpec> specs;
    for (size_t e = 0; e < q.edges.size(); ++e) {
        const Edge& ed = q.edges[e];
        bool one = q.vertices[size_t(ed.src)].dim == 1 && q.vertices[size_t(ed.tgt)].dim == 1;
        if (!one) continue;
        if (ed.src == ed.tgt) {
            specs.push_back({GenKind::AInv, int(e)});
            specs.push_back({GenKind::DInv, int(e)});
        } else {
            specs.push_back({GenKind::GbInv, int(e)});
        }
    }
    std::sort(specs.begin(), specs.end(), [](const InverseSpec& x, const InverseSpec& y) {
        return GenId{x.kind, x.edge, 1, 1} < GenId{y.kind, y.edge, 1, 1};
    });
    return specs;
}

std::vector<NCPoly> moment_ideal_generators(const Presentation& p, const CharacterSpec& ch,
                                            const RatQ& t) {
    std::vector<NCPoly> out;
    for (size_t v = 0; v < p.quiver.vertices.size(); ++v) {
        RatQ xi = ch.at(p.quiver.vertices[v].id);
        Mat<NCPoly> m = vertex_moment(p, int(v), t).m;
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) {
                NCPoly g = m.at(i, j);
                if (i == j) g -= NCPoly(1).scaled(xi);
                out.push_back(std::move(g));
            }
    }
    return out;
}

CheckReport character_check(int N) {
    auto t0 = std::chrono::steady_clock::now();
    if (N < 1) throw std::invalid_argument("character_check: N must be positive");
    Mat<RatQ> r = r_matrix(N);
    auto R = [&](int i, int j, int k, int l) {
        return r.at((i - 1) * N + (j - 1), (k - 1) * N + (l - 1));
    };
    CheckReport rep = make_pass("character", "N=" + std::to_string(N));
    // Both contractions are homogeneous of degree 2 in rho, so comparing
    // the rho^2 coefficients is the whole symbolic comparison.
    for (int i = 1; i <= N && rep.passed(); ++i)
        for (int j = 1; j <= N && rep.passed(); ++j)
            for (int n = 1; n <= N && rep.passed(); ++n)
                for (int pp = 1; pp <= N && rep.passed(); ++pp) {
                    // Left side: sum over k, l of R^{ij}_{kl} R^{lk}_{np}.
                    // Right side: sum over l, m of R^{ij}_{lm} R^{ml}_{np},
                    // the contraction left by the substitution on the other
                    // side of the reflection equation.
                    RatQ lhs, rhs;
                    for (int k = 1; k <= N; ++k)
                        for (int l = 1; l <= N; ++l) lhs += R(i, j, k, l) * R(l, k, n, pp);
                    for (int l = 1; l <= N; ++l)
                        for (int m = 1; m <= N; ++m) rhs += R(i, j, l, m) * R(m, l, n, pp);
                    if (!(lhs == rhs))
                        rep = make_fail("character", rep.parameters,
                                        "component (" + std::to_string(i) + "," + std::to_string(j) +
                                            "," + std::to_string(n) + "," + std::to_string(pp) +
                                            ") differs");
                }
    rep.elapsed_ms = long(std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count());
    if (rep.passed()) rep.witness = "all rho^2 coefficients agree";
    return rep;
}

}  // namespace qmqv
