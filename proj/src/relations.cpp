#include "qmqv/relations.hpp"

#include <functional>
#include <stdexcept>

namespace qmqv {

namespace {

VirtualEdge base_of(const Quiver& q, int e) {
    return {e, false, q.edges[size_t(e)].src, q.edges[size_t(e)].tgt};
}

VirtualEdge adjoint_of(const Quiver& q, int e) {
    return {e, true, q.edges[size_t(e)].tgt, q.edges[size_t(e)].src};
}

} // namespace

std::vector<VirtualEdge> bracket_order(const Quiver& q) {
    size_t nv = q.vertices.size(), ne = q.edges.size();
    std::vector<char> vseen(nv, 0), eseen(ne, 0);
    std::vector<VirtualEdge> out;
    out.reserve(2 * ne);

    std::function<void(int)> walk = [&](int v) {
        vseen[size_t(v)] = 1;
        for (size_t e = 0; e < ne; ++e) {
            if (eseen[e]) continue;
            const Edge& ed = q.edges[e];
            if (ed.src != v && ed.tgt != v) continue;
            eseen[e] = 1;
            int other = ed.src == v ? ed.tgt : ed.src;
            out.push_back(base_of(q, int(e)));
            if (other != v && !vseen[size_t(other)]) walk(other);
            out.push_back(adjoint_of(q, int(e)));
        }
    };
    for (size_t v = 0; v < nv; ++v)
        if (!vseen[v]) walk(int(v));
    return out;
}

Mat<NCPoly> lift_mat(const Mat<RatQ>& m) {
    Mat<NCPoly> r(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (!m.at(i, j).is_zero()) r.at(i, j) = NCPoly(m.at(i, j));
    return r;
}

Mat<NCPoly> eval_legs(const std::vector<LegFactor>& factors, int l1, int l2) {
    if (factors.empty()) throw std::invalid_argument("empty leg product");
    Mat<NCPoly> acc;
    bool have = false;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        Mat<NCPoly> f;
        if (const Leg1* g = std::get_if<Leg1>(&*it)) {
            if (g->m->cols != l1) throw std::logic_error("leg-1 shape mismatch");
            f = kron(*g->m, Mat<NCPoly>::id(l2));
            l1 = g->m->rows;
        } else if (const Leg2* g = std::get_if<Leg2>(&*it)) {
            if (g->m->cols != l2) throw std::logic_error("leg-2 shape mismatch");
            f = kron(Mat<NCPoly>::id(l1), *g->m);
            l2 = g->m->rows;
        } else {
            const Flat& fl = std::get<Flat>(*it);
            if (fl.m->rows != fl.m->cols || fl.m->rows != l1 * l2)
                throw std::logic_error("two-leg factor shape mismatch");
            f = lift_mat(*fl.m);
        }
        acc = have ? f * acc : std::move(f);
        have = true;
    }
    return acc;
}

Mat<NCPoly> virtual_edge_matrix(const GenTable& gens, const Quiver& q,
                                const VirtualEdge& ve) {
    int dr = q.vertices[size_t(ve.src)].dim;
    int dc = q.vertices[size_t(ve.tgt)].dim;
    Mat<NCPoly> m(dr, dc);
    GenKind k = ve.adjoint ? GenKind::D : GenKind::A;
    for (int i = 1; i <= dr; ++i)
        for (int j = 1; j <= dc; ++j)
            m.at(i - 1, j - 1) =
                NCPoly::monomial(gens.word1({k, ve.edge, i, j}), RatQ(1));
    return m;
}

namespace {

void push_entries(std::vector<Relation>& rels, const Mat<NCPoly>& m,
                  RelOrigin origin, int e1, int e2, bool loop_cross) {
    for (const auto& entry : m.a)
        if (!entry.is_zero()) rels.push_back({entry, origin, e1, e2, loop_cross});
}

// Relations among the generators of one virtual edge.
void same_edge_relations(std::vector<Relation>& rels, const Presentation& p,
                         const VirtualEdge& ve, RelOrigin origin) {
    const Quiver& q = p.quiver;
    Mat<NCPoly> A = virtual_edge_matrix(p.gens, q, ve);
    int dv = q.vertices[size_t(ve.src)].dim;
    if (ve.src == ve.tgt) {
        Mat<RatQ> r = r_matrix(dv);
        Mat<RatQ> r21 = r21_of(r, dv);
        Leg1 a1{&A};
        Leg2 a2{&A};
        Flat fr{&r}, fr21{&r21};
        Mat<NCPoly> lhs = eval_legs({fr21, a1, fr, a2}, dv, dv);
        Mat<NCPoly> rhs = eval_legs({a2, fr21, a1, fr}, dv, dv);
        push_entries(rels, lhs - rhs, origin, ve.edge, -1, false);
    } else {
        int dw = q.vertices[size_t(ve.tgt)].dim;
        Mat<RatQ> rv = r_matrix(dv);
        Mat<RatQ> rw21 = r21_of(r_matrix(dw), dw);
        Leg1 a1{&A};
        Leg2 a2{&A};
        Flat frv{&rv}, frw21{&rw21};
        Mat<NCPoly> lhs = eval_legs({frv, a2, a1}, dw, dw);
        Mat<NCPoly> rhs = eval_legs({a1, a2, frw21}, dw, dw);
        push_entries(rels, lhs - rhs, origin, ve.edge, -1, false);
    }
}

// Cross relations between the coordinate and derivative generators of a
// single edge; the non-loop case carries the inhomogeneous pairing term.
void same_edge_cross_relations(std::vector<Relation>& rels,
                               const Presentation& p, int e) {
    const Quiver& q = p.quiver;
    VirtualEdge vb = base_of(q, e);
    VirtualEdge va = adjoint_of(q, e);
    Mat<NCPoly> A = virtual_edge_matrix(p.gens, q, vb);
    Mat<NCPoly> D = virtual_edge_matrix(p.gens, q, va);
    if (q.edge_is_loop(e)) {
        int dv = q.vertices[size_t(vb.src)].dim;
        Mat<RatQ> r = r_matrix(dv);
        Mat<RatQ> r21 = r21_of(r, dv);
        Mat<RatQ> r21inv = r21_of(r_matrix_inv(dv), dv);
        Leg1 d1{&D};
        Leg2 a2{&A};
        Flat fr{&r}, fr21{&r21}, fr21i{&r21inv};
        Mat<NCPoly> lhs = eval_legs({fr21, d1, fr, a2}, dv, dv);
        Mat<NCPoly> rhs = eval_legs({a2, fr21, d1, fr21i}, dv, dv);
        push_entries(rels, lhs - rhs, RelOrigin::SameEdgeCross, e, -1, true);
    } else {
        int m = q.vertices[size_t(vb.src)].dim;
        int n = q.vertices[size_t(vb.tgt)].dim;
        Mat<RatQ> rvinv = r_matrix_inv(m);
        Mat<RatQ> rw = r_matrix(n);
        Leg1 a1{&A};
        Leg2 d2{&D};
        Flat frvi{&rvinv}, frw{&rw};
        Mat<NCPoly> lhs = eval_legs({d2, frvi, a1}, n, m);
        Mat<NCPoly> rhs = eval_legs({a1, frw, d2}, n, m);
        Mat<NCPoly> omega(m * n, n * m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) omega.at(i * n + j, j * m + i) = NCPoly(1);
        push_entries(rels, lhs - rhs - omega, RelOrigin::SameEdgeCross, e, -1,
                     false);
    }
}

// Cross relations between two distinct edges, e earlier than f.  The
// incidence pattern of the ordered pair selects the braiding dressing.
void cross_pair_relations(std::vector<Relation>& rels, const Presentation& p,
                          const VirtualEdge& e, const VirtualEdge& f) {
    const Quiver& q = p.quiver;
    Mat<NCPoly> E = virtual_edge_matrix(p.gens, q, e);
    Mat<NCPoly> F = virtual_edge_matrix(p.gens, q, f);
    Leg1 f1{&F};
    Leg2 e2{&E};
    int l1 = F.cols, l2 = E.cols;

    bool eloop = e.src == e.tgt, floop = f.src == f.tgt;
    std::vector<LegFactor> lhs, rhs;
    Mat<RatQ> rv, rvinv, rw, rwinv;
    auto set_v = [&](int v) {
        int d = q.vertices[size_t(v)].dim;
        rv = r_matrix(d);
        rvinv = r_matrix_inv(d);
    };
    auto set_w = [&](int w) {
        int d = q.vertices[size_t(w)].dim;
        rw = r_matrix(d);
        rwinv = r_matrix_inv(d);
    };
    Flat frv{&rv}, frvi{&rvinv}, frw{&rw}, frwi{&rwinv};

    if (eloop && floop) {
        if (e.src == f.src) { // both loops on one vertex
            set_v(e.src);
            lhs = {f1, frv, e2, frvi};
            rhs = {frv, e2, frvi, f1};
        } else {
            lhs = {f1, e2};
            rhs = {e2, f1};
        }
    } else if (eloop) {
        if (f.tgt == e.src) { // f points at the loop vertex
            set_v(e.src);
            lhs = {f1, frv, e2};
            rhs = {e2, f1, frv};
        } else if (f.src == e.src) { // f leaves the loop vertex
            set_v(e.src);
            lhs = {f1, e2};
            rhs = {frv, e2, frvi, f1};
        } else {
            lhs = {f1, e2};
            rhs = {e2, f1};
        }
    } else if (floop) {
        if (e.tgt == f.src) { // e points at the loop vertex
            set_v(f.src);
            lhs = {f1, e2};
            rhs = {e2, frvi, f1, frv};
        } else if (e.src == f.src) { // e leaves the loop vertex
            set_v(f.src);
            lhs = {f1, frv, e2};
            rhs = {frv, e2, f1};
        } else {
            lhs = {f1, e2};
            rhs = {e2, f1};
        }
    } else if (e.src == f.src && e.tgt == f.tgt) { // parallel
        set_v(e.src);
        set_w(e.tgt);
        lhs = {f1, e2};
        rhs = {frv, e2, f1, frw};
    } else if (e.src == f.tgt && e.tgt == f.src) { // antiparallel
        set_v(e.src);
        set_w(e.tgt);
        lhs = {f1, frv, e2};
        rhs = {e2, frwi, f1};
    } else if (e.tgt == f.src) { // head of e feeds tail of f
        set_v(e.tgt);
        lhs = {f1, e2};
        rhs = {e2, frvi, f1};
    } else if (e.src == f.tgt) { // head of f feeds tail of e
        set_v(e.src);
        lhs = {f1, frv, e2};
        rhs = {e2, f1};
    } else if (e.tgt == f.tgt) { // heads meet
        set_v(e.tgt);
        lhs = {f1, e2};
        rhs = {e2, f1, frv};
    } else if (e.src == f.src) { // tails meet
        set_v(e.src);
        lhs = {f1, e2};
        rhs = {frv, e2, f1};
    } else { // no shared vertex
        lhs = {f1, e2};
        rhs = {e2, f1};
    }

    Mat<NCPoly> diff = eval_legs(lhs, l1, l2) - eval_legs(rhs, l1, l2);
    push_entries(rels, diff, RelOrigin::CrossPair, e.edge, f.edge, false);
}

void build_relations(Presentation& p, bool dq) {
    const Quiver& q = p.quiver;
    for (int e = 0; e < int(q.edges.size()); ++e) {
        same_edge_relations(p.relations, p, base_of(q, e), RelOrigin::SameEdgeAA);
        if (dq) {
            same_edge_relations(p.relations, p, adjoint_of(q, e),
                                RelOrigin::SameEdgeDD);
            same_edge_cross_relations(p.relations, p, e);
        }
    }
    std::vector<VirtualEdge> order = bracket_order(q);
    if (!dq) {
        std::erase_if(order, [](const VirtualEdge& ve) { return ve.adjoint; });
    }
    for (size_t i = 0; i < order.size(); ++i)
        for (size_t j = i + 1; j < order.size(); ++j) {
            if (order[i].edge == order[j].edge) continue;
            cross_pair_relations(p.relations, p, order[i], order[j]);
        }
}

} // namespace

Presentation oq_presentation(const Quiver& q) {
    Presentation p;
    p.quiver = q;
    p.gens = base_gen_table(q, false);
    p.has_adjoints = false;
    build_relations(p, false);
    return p;
}

Presentation dq_presentation(const Quiver& q) {
    Presentation p;
    p.quiver = q;
    p.gens = base_gen_table(q, true);
    p.has_adjoints = true;
    build_relations(p, true);
    return p;
}

Presentation adjoin_inverses(const Presentation& p,
                             const std::vector<InverseSpec>& specs) {
    Presentation r = p;
    RatQ qdiff(LaurentQ::q_power(1) - LaurentQ::q_power(-1));
    for (const InverseSpec& s : specs) {
        if (s.edge < 0 || s.edge >= int(r.quiver.edges.size()))
            throw std::invalid_argument("inverse spec: edge out of range");
        const Edge& ed = r.quiver.edges[size_t(s.edge)];
        if (r.quiver.vertices[size_t(ed.src)].dim != 1 ||
            r.quiver.vertices[size_t(ed.tgt)].dim != 1)
            throw std::invalid_argument("inverses need a 1x1 edge");
        if (s.kind != GenKind::AInv && s.kind != GenKind::DInv &&
            s.kind != GenKind::GaInv && s.kind != GenKind::GbInv)
            throw std::invalid_argument("inverse spec: not an inverse kind");

        NCPoly a = NCPoly::monomial(r.gens.word1({GenKind::A, s.edge, 1, 1}),
                                    RatQ(1));
        NCPoly target;
        switch (s.kind) {
        case GenKind::AInv: target = a; break;
        case GenKind::DInv:
            target = NCPoly::monomial(r.gens.word1({GenKind::D, s.edge, 1, 1}),
                                      RatQ(1));
            break;
        case GenKind::GaInv: {
            NCPoly d = NCPoly::monomial(
                r.gens.word1({GenKind::D, s.edge, 1, 1}), RatQ(1));
            target = NCPoly(1) + (d * a).scaled(qdiff);
            break;
        }
        case GenKind::GbInv: {
            NCPoly d = NCPoly::monomial(
                r.gens.word1({GenKind::D, s.edge, 1, 1}), RatQ(1));
            target = NCPoly(1) + (a * d).scaled(qdiff);
            break;
        }
        default: break;
        }

        GenId inv{s.kind, s.edge, 1, 1};
        if (!r.gens.gens.empty() && !(r.gens.gens.back() < inv))
            throw std::invalid_argument("inverse generators must be adjoined "
                                        "in increasing order");
        r.gens.gens.push_back(inv);
        if (r.gens.gens.size() > 255)
            throw std::runtime_error("too many generators for byte codes");
        std::uint8_t code = std::uint8_t(r.gens.gens.size() - 1);
        NCPoly invp = NCPoly::monomial(Word(1, char(code)), RatQ(1));
        r.relations.push_back(
            {target * invp - NCPoly(1), RelOrigin::UnitRel, s.edge, -1, false});
        r.relations.push_back(
            {invp * target - NCPoly(1), RelOrigin::UnitRel, s.edge, -1, false});
        r.inverses.push_back({code, target});
    }
    return r;
}

NCPoly monic(const NCPoly& p) {
    if (p.is_zero()) return p;
    return p.scaled(p.leading().second.inv());
}

} // namespace qmqv
