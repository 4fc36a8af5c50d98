#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmqv/relations.hpp"

#include <set>
#include <string>
#include <vector>

using namespace qmqv;

namespace {

Quiver quiver_of(const std::string& text) { return Quiver::from_json_text(text); }

Quiver kron(int da, int db) {
    return quiver_of(R"({"vertices":[{"id":"v","dim":)" + std::to_string(da) +
                     R"(},{"id":"w","dim":)" + std::to_string(db) +
                     R"(}],"edges":[{"id":"e","src":"v","tgt":"w"}]})");
}

Quiver jordan(int n) {
    return quiver_of(R"({"vertices":[{"id":"v","dim":)" + std::to_string(n) +
                     R"(}],"edges":[{"id":"l","src":"v","tgt":"v"}]})");
}

Quiver cm(int n) {
    return quiver_of(R"({"vertices":[{"id":"v","dim":)" + std::to_string(n) +
                     R"(},{"id":"w","dim":1}],)" +
                     R"("edges":[{"id":"l","src":"v","tgt":"v"},)" +
                     R"({"id":"e","src":"w","tgt":"v"}]})");
}

NCPoly g(const Presentation& p, GenKind k, int e, int up, int lo) {
    return NCPoly::monomial(p.gens.word1({k, e, up, lo}), RatQ(1));
}

RatQ qp(int k) { return RatQ(LaurentQ::q_power(k)); }
RatQ qdiff() { return RatQ(LaurentQ::q_power(1) - LaurentQ::q_power(-1)); }

// R^{ij}_{kl} with 1-based tensor indices
RatQ rr(const Mat<RatQ>& R, int n, int i, int j, int k, int l) {
    return R.at((i - 1) * n + (j - 1), (k - 1) * n + (l - 1));
}

std::set<std::string> monic_set(const std::vector<Relation>& rels,
                                const GenTable& t) {
    std::set<std::string> s;
    for (const auto& r : rels)
        if (!r.poly.is_zero()) s.insert(render(monic(r.poly), t));
    return s;
}

std::set<std::string> monic_set(const std::vector<NCPoly>& polys,
                                const GenTable& t) {
    std::set<std::string> s;
    for (const auto& p : polys)
        if (!p.is_zero()) s.insert(render(monic(p), t));
    return s;
}

std::vector<Relation> rels_of(const Presentation& p, RelOrigin origin) {
    std::vector<Relation> out;
    for (const auto& r : p.relations)
        if (r.origin == origin) out.push_back(r);
    return out;
}

std::vector<Relation> pair_rels(const Presentation& p, int e1, int e2) {
    std::vector<Relation> out;
    for (const auto& r : p.relations)
        if (r.origin == RelOrigin::CrossPair &&
            ((r.edge == e1 && r.edge2 == e2) || (r.edge == e2 && r.edge2 == e1)))
            out.push_back(r);
    return out;
}

// leading-term elimination over the word basis
struct Span {
    std::map<Word, NCPoly, DegLex> rows;

    NCPoly reduce(NCPoly p) const {
        while (!p.is_zero()) {
            auto it = rows.find(p.leading().first);
            if (it == rows.end()) break;
            p -= it->second.scaled(p.leading().second);
        }
        return p;
    }
    void add(const NCPoly& p) {
        NCPoly r = reduce(p);
        if (!r.is_zero()) rows.emplace(r.leading().first, monic(r));
    }
    bool contains(const NCPoly& p) const { return reduce(p).is_zero(); }
};

bool same_span(const std::vector<Relation>& rels,
               const std::vector<NCPoly>& expected) {
    Span a, b;
    for (const auto& r : rels) a.add(r.poly);
    for (const auto& p : expected) b.add(p);
    for (const auto& r : rels)
        if (!b.contains(r.poly)) return false;
    for (const auto& p : expected)
        if (!a.contains(p)) return false;
    return true;
}

} // namespace

TEST_CASE("bracket order walks edges out and back") {
    SUBCASE("loop then framing edge") {
        Quiver q = cm(2);
        auto o = bracket_order(q);
        REQUIRE(o.size() == 4);
        CHECK(o[0] == VirtualEdge{0, false, 0, 0});
        CHECK(o[1] == VirtualEdge{0, true, 0, 0});
        CHECK(o[2] == VirtualEdge{1, false, 1, 0});
        CHECK(o[3] == VirtualEdge{1, true, 0, 1});
    }
    SUBCASE("chain nests, sibling legs stay sequential") {
        // two legs into v0: one of length two, one of length one
        Quiver q = quiver_of(R"({"vertices":[
            {"id":"v0","dim":1},{"id":"v11","dim":1},
            {"id":"v12","dim":1},{"id":"v21","dim":1}],
            "edges":[{"id":"e10","src":"v11","tgt":"v0"},
                     {"id":"e11","src":"v12","tgt":"v11"},
                     {"id":"e20","src":"v21","tgt":"v0"}]})");
        auto o = bracket_order(q);
        std::vector<std::pair<int, bool>> got;
        for (const auto& ve : o) got.push_back({ve.edge, ve.adjoint});
        std::vector<std::pair<int, bool>> want = {
            {0, false}, {1, false}, {1, true}, {0, true}, {2, false}, {2, true}};
        CHECK(got == want);
    }
    SUBCASE("cycle closes the last edge immediately") {
        Quiver q = quiver_of(R"({"vertices":[
            {"id":"u1","dim":1},{"id":"u2","dim":1},{"id":"u3","dim":1}],
            "edges":[{"id":"c1","src":"u1","tgt":"u2"},
                     {"id":"c2","src":"u2","tgt":"u3"},
                     {"id":"c3","src":"u3","tgt":"u1"}]})");
        auto o = bracket_order(q);
        std::vector<std::pair<int, bool>> got;
        for (const auto& ve : o) got.push_back({ve.edge, ve.adjoint});
        std::vector<std::pair<int, bool>> want = {
            {0, false}, {1, false}, {2, false}, {2, true}, {1, true}, {0, true}};
        CHECK(got == want);
    }
    SUBCASE("components are visited in vertex order") {
        Quiver q = quiver_of(R"({"vertices":[
            {"id":"p","dim":1},{"id":"r","dim":1}],
            "edges":[{"id":"s","src":"p","tgt":"p"},
                     {"id":"t","src":"r","tgt":"r"}]})");
        auto o = bracket_order(q);
        std::vector<std::pair<int, bool>> got;
        for (const auto& ve : o) got.push_back({ve.edge, ve.adjoint});
        std::vector<std::pair<int, bool>> want = {
            {0, false}, {0, true}, {1, false}, {1, true}};
        CHECK(got == want);
    }
}

TEST_CASE("one-dimensional edge gives the rank-one Weyl-type relation") {
    Presentation p = dq_presentation(kron(1, 1));
    REQUIRE(p.relations.size() == 1);
    NCPoly a = g(p, GenKind::A, 0, 1, 1), d = g(p, GenKind::D, 0, 1, 1);
    NCPoly expect = (d * a).scaled(qp(-1)) - (a * d).scaled(qp(1)) - NCPoly(1);
    CHECK(p.relations[0].poly == expect);
    CHECK(p.relations[0].origin == RelOrigin::SameEdgeCross);
    CHECK_FALSE(p.relations[0].loop_cross);
}

TEST_CASE("one-dimensional loop gives the q-squared scaling relation") {
    Presentation p = dq_presentation(jordan(1));
    REQUIRE(p.relations.size() == 1);
    NCPoly a = g(p, GenKind::A, 0, 1, 1), d = g(p, GenKind::D, 0, 1, 1);
    NCPoly expect = (d * a).scaled(qp(2)) - a * d;
    CHECK(p.relations[0].poly == expect);
    CHECK(p.relations[0].loop_cross);

    CHECK(oq_presentation(jordan(1)).relations.empty());
}

TEST_CASE("quantum plane relations at N=3") {
    const int n = 3;
    Presentation p = dq_presentation(kron(1, n));
    auto x = [&](int j) { return g(p, GenKind::A, 0, 1, j); };
    auto dd = [&](int i) { return g(p, GenKind::D, 0, i, 1); };

    std::vector<NCPoly> expected;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j < i; ++j) {
            expected.push_back(x(i) * x(j) - (x(j) * x(i)).scaled(qp(-1)));
            expected.push_back(dd(i) * dd(j) - (dd(j) * dd(i)).scaled(qp(1)));
        }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j)
                expected.push_back(dd(i) * x(j) - (x(j) * dd(i)).scaled(qp(1)));
    for (int i = 1; i <= n; ++i) {
        NCPoly r = dd(i) * x(i) - (x(i) * dd(i)).scaled(qp(2)) - NCPoly(qp(1));
        for (int k = i + 1; k <= n; ++k)
            r -= (x(k) * dd(k)).scaled(qp(2) - RatQ(1));
        expected.push_back(r);
    }
    CHECK(monic_set(p.relations, p.gens) == monic_set(expected, p.gens));
}

TEST_CASE("square edge matches its quadratic exchange family") {
    // d_src = d_tgt = 2; expanding the matrix relation puts the crossing
    // term on the n > m side of the i > j family.
    Presentation p = oq_presentation(kron(2, 2));
    auto a = [&](int i, int j) { return g(p, GenKind::A, 0, i, j); };

    std::vector<NCPoly> expected;
    for (int m = 1; m <= 2; ++m)
        for (int n = 1; n <= 2; ++n) {
            // i > j family
            NCPoly r = a(2, m) * a(1, n) -
                       (a(1, n) * a(2, m)).scaled(m == n ? qp(1) : RatQ(1));
            if (n > m) r -= (a(1, m) * a(2, n)).scaled(qdiff());
            expected.push_back(r);
        }
    for (int i = 1; i <= 2; ++i) // m > n family
        expected.push_back(a(i, 2) * a(i, 1) - (a(i, 1) * a(i, 2)).scaled(qp(-1)));

    auto gen_monic = monic_set(p.relations, p.gens);
    for (const auto& e : expected)
        CHECK(gen_monic.count(render(monic(e), p.gens)) == 1);
    CHECK(same_span(p.relations, expected));
}

TEST_CASE("loop relations match the doubly dressed exchange identities") {
    const int n = 2;
    Presentation p = dq_presentation(jordan(n));
    Mat<RatQ> R = r_matrix(n);
    Mat<RatQ> Ri = r_matrix_inv(n);
    auto a = [&](int i, int j) { return g(p, GenKind::A, 0, i, j); };
    auto d = [&](int i, int j) { return g(p, GenKind::D, 0, i, j); };

    // sum over internal indices of  R^{ji}_{kl} X^l_p R^{pk}_{mo} Y^o_n
    auto dressed = [&](auto X, auto Y, int j, int i, int m, int nn) {
        NCPoly acc;
        for (int k = 1; k <= n; ++k)
            for (int l = 1; l <= n; ++l)
                for (int pp = 1; pp <= n; ++pp)
                    for (int o = 1; o <= n; ++o) {
                        RatQ c = rr(R, n, j, i, k, l) * rr(R, n, pp, k, m, o);
                        if (c.is_zero()) continue;
                        acc += (X(l, pp) * Y(o, nn)).scaled(c);
                    }
        return acc;
    };
    // X^j_p R^{pi}_{sq} X^q_t R^{ts}_{mn}
    auto exchange = [&](auto X) {
        std::vector<NCPoly> v;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int m = 1; m <= n; ++m)
                    for (int nn = 1; nn <= n; ++nn) {
                        NCPoly rhs;
                        for (int pp = 1; pp <= n; ++pp)
                            for (int s = 1; s <= n; ++s)
                                for (int qq = 1; qq <= n; ++qq)
                                    for (int t = 1; t <= n; ++t) {
                                        RatQ c = rr(R, n, pp, i, s, qq) *
                                                 rr(R, n, t, s, m, nn);
                                        if (c.is_zero()) continue;
                                        rhs += (X(j, pp) * X(qq, t)).scaled(c);
                                    }
                        v.push_back(dressed(X, X, j, i, m, nn) - rhs);
                    }
        return v;
    };

    CHECK(monic_set(rels_of(p, RelOrigin::SameEdgeAA), p.gens) ==
          monic_set(exchange(a), p.gens));
    CHECK(monic_set(rels_of(p, RelOrigin::SameEdgeDD), p.gens) ==
          monic_set(exchange(d), p.gens));

    // cross family: dressed derivative against a, reordered through R^-1
    std::vector<NCPoly> cross;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int m = 1; m <= n; ++m)
                for (int nn = 1; nn <= n; ++nn) {
                    NCPoly rhs;
                    for (int l = 1; l <= n; ++l)
                        for (int pp = 1; pp <= n; ++pp)
                            for (int k = 1; k <= n; ++k)
                                for (int o = 1; o <= n; ++o) {
                                    RatQ c = rr(R, n, l, i, pp, k) *
                                             rr(Ri, n, pp, o, nn, m);
                                    if (c.is_zero()) continue;
                                    rhs += (a(j, l) * d(k, o)).scaled(c);
                                }
                    cross.push_back(dressed(d, a, j, i, m, nn) - rhs);
                }
    CHECK(monic_set(rels_of(p, RelOrigin::SameEdgeCross), p.gens) ==
          monic_set(cross, p.gens));
    for (const auto& r : rels_of(p, RelOrigin::SameEdgeCross))
        CHECK(r.loop_cross);
}

TEST_CASE("loop plus framing edge at dimension one") {
    Presentation p = dq_presentation(cm(1));
    NCPoly la = g(p, GenKind::A, 0, 1, 1), ld = g(p, GenKind::D, 0, 1, 1);
    NCPoly x = g(p, GenKind::A, 1, 1, 1), xi = g(p, GenKind::D, 1, 1, 1);

    std::vector<NCPoly> expected = {
        (ld * la).scaled(qp(2)) - la * ld,
        (xi * x).scaled(qp(-1)) - (x * xi).scaled(qp(1)) - NCPoly(1),
        x * la - la * x,
        x * ld - ld * x,
        xi * la - la * xi,
        xi * ld - ld * xi,
    };
    REQUIRE(p.relations.size() == 6);
    CHECK(monic_set(p.relations, p.gens) == monic_set(expected, p.gens));
}

TEST_CASE("loop plus framing edge at node dimension two") {
    const int n = 2;
    Presentation p = dq_presentation(cm(n));
    Mat<RatQ> R = r_matrix(n);
    Mat<RatQ> Ri = r_matrix_inv(n);
    auto la = [&](int i, int j) { return g(p, GenKind::A, 0, i, j); };
    auto ld = [&](int i, int j) { return g(p, GenKind::D, 0, i, j); };
    auto x = [&](int k) { return g(p, GenKind::A, 1, 1, k); };
    auto xi = [&](int k) { return g(p, GenKind::D, 1, k, 1); };

    // x_k R^{ki}_{jl} Y^l_m  =  Y^i_k x_l R^{lk}_{jm}
    auto frame_cross = [&](auto Y) {
        std::vector<NCPoly> v;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int m = 1; m <= n; ++m) {
                    NCPoly r;
                    for (int k = 1; k <= n; ++k)
                        for (int l = 1; l <= n; ++l) {
                            r += (x(k) * Y(l, m)).scaled(rr(R, n, k, i, j, l));
                            r -= (Y(i, k) * x(l)).scaled(rr(R, n, l, k, j, m));
                        }
                    v.push_back(r);
                }
        return v;
    };
    // D^i Y^j_m  =  R^{ij}_{kl} Y^l_o (R^-1)^{ko}_{pm} D^p
    auto dual_cross = [&](auto Y) {
        std::vector<NCPoly> v;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int m = 1; m <= n; ++m) {
                    NCPoly r = xi(i) * Y(j, m);
                    for (int k = 1; k <= n; ++k)
                        for (int l = 1; l <= n; ++l)
                            for (int o = 1; o <= n; ++o)
                                for (int pp = 1; pp <= n; ++pp) {
                                    RatQ c = rr(R, n, i, j, k, l) *
                                             rr(Ri, n, k, o, pp, m);
                                    if (c.is_zero()) continue;
                                    r -= (Y(l, o) * xi(pp)).scaled(c);
                                }
                    v.push_back(r);
                }
        return v;
    };

    // split the four virtual-edge pairs by generator content
    std::vector<Relation> xa, xd, xia, xid;
    for (const auto& r : pair_rels(p, 0, 1)) {
        bool has_ld = false, has_xi = false;
        for (const auto& [w, c] : r.poly.terms())
            for (char ch : w) {
                GenId id = p.gens.gen(uint8_t(ch));
                if (id.edge == 0 && id.kind == GenKind::D) has_ld = true;
                if (id.edge == 1 && id.kind == GenKind::D) has_xi = true;
            }
        (has_xi ? (has_ld ? xid : xia) : (has_ld ? xd : xa)).push_back(r);
    }
    CHECK(monic_set(xa, p.gens) == monic_set(frame_cross(la), p.gens));
    CHECK(monic_set(xd, p.gens) == monic_set(frame_cross(ld), p.gens));
    CHECK(monic_set(xia, p.gens) == monic_set(dual_cross(la), p.gens));
    CHECK(monic_set(xid, p.gens) == monic_set(dual_cross(ld), p.gens));
}

TEST_CASE("chain of two one-dimensional edges") {
    Quiver q = quiver_of(R"({"vertices":[
        {"id":"v0","dim":1},{"id":"v11","dim":1},
        {"id":"v12","dim":1},{"id":"v21","dim":1}],
        "edges":[{"id":"e10","src":"v11","tgt":"v0"},
                 {"id":"e11","src":"v12","tgt":"v11"},
                 {"id":"e20","src":"v21","tgt":"v0"}]})");
    Presentation p = dq_presentation(q);
    auto x = [&](int e) { return g(p, GenKind::A, e, 1, 1); };
    auto dd = [&](int e) { return g(p, GenKind::D, e, 1, 1); };

    auto expect_pair = [&](int e1, int e2, std::vector<NCPoly> want) {
        CHECK(monic_set(pair_rels(p, e1, e2), p.gens) ==
              monic_set(want, p.gens));
    };
    // chain pairs: the nested bracket order dresses them asymmetrically
    expect_pair(0, 1, {
        (x(1) * x(0)).scaled(qp(1)) - x(0) * x(1),
        (dd(0) * dd(1)).scaled(qp(1)) - dd(1) * dd(0),
        dd(1) * x(0) - (x(0) * dd(1)).scaled(qp(1)),
        dd(0) * x(1) - (x(1) * dd(0)).scaled(qp(1)),
    });
    // nodal pairs: each leg block closes before the next leg opens
    expect_pair(0, 2, {
        x(2) * x(0) - (x(0) * x(2)).scaled(qp(1)),
        (x(2) * dd(0)).scaled(qp(1)) - dd(0) * x(2),
        dd(2) * x(0) - (x(0) * dd(2)).scaled(qp(-1)),
        dd(2) * dd(0) - (dd(0) * dd(2)).scaled(qp(1)),
    });
    // disjoint pairs commute
    expect_pair(1, 2, {
        x(2) * x(1) - x(1) * x(2),
        x(2) * dd(1) - dd(1) * x(2),
        dd(2) * x(1) - x(1) * dd(2),
        dd(2) * dd(1) - dd(1) * dd(2),
    });
}

TEST_CASE("two legs into a two-dimensional node") {
    const int n = 2;
    Quiver q = quiver_of(R"({"vertices":[
        {"id":"v0","dim":2},{"id":"v11","dim":1},{"id":"v21","dim":1}],
        "edges":[{"id":"e10","src":"v11","tgt":"v0"},
                 {"id":"e20","src":"v21","tgt":"v0"}]})");
    Presentation p = dq_presentation(q);
    Mat<RatQ> R = r_matrix(n);
    Mat<RatQ> Ri = r_matrix_inv(n);
    auto y = [&](int leg, int j) { return g(p, GenKind::A, leg, 1, j); };
    auto xi = [&](int leg, int i) { return g(p, GenKind::D, leg, i, 1); };

    std::vector<NCPoly> expected;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            NCPoly yy = y(1, i) * y(0, j);
            NCPoly xiy = xi(0, i) * y(1, j);
            NCPoly yxi = xi(1, i) * y(0, j);
            NCPoly xixi = xi(1, i) * xi(0, j);
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    yy -= (y(0, k) * y(1, l)).scaled(rr(R, n, l, k, i, j));
                    xiy -= (y(1, k) * xi(0, l)).scaled(rr(R, n, k, i, j, l));
                    yxi -= (y(0, k) * xi(1, l)).scaled(rr(Ri, n, i, k, l, j));
                    xixi -= (xi(0, l) * xi(1, k)).scaled(rr(R, n, i, j, k, l));
                }
            expected.push_back(yy);
            expected.push_back(xiy);
            expected.push_back(yxi);
            expected.push_back(xixi);
        }
    CHECK(monic_set(pair_rels(p, 0, 1), p.gens) == monic_set(expected, p.gens));
}

TEST_CASE("adjoined inverses extend the table in place") {
    Presentation p0 = dq_presentation(kron(1, 1));
    size_t ngens = p0.gens.size();
    Presentation p = adjoin_inverses(
        p0, {{GenKind::AInv, 0}, {GenKind::DInv, 0}, {GenKind::GaInv, 0},
             {GenKind::GbInv, 0}});
    REQUIRE(p.gens.size() == ngens + 4);
    for (size_t c = 0; c < ngens; ++c)
        CHECK(p.gens.gen(uint8_t(c)) == p0.gens.gen(uint8_t(c)));
    REQUIRE(p.inverses.size() == 4);

    NCPoly a = g(p, GenKind::A, 0, 1, 1), d = g(p, GenKind::D, 0, 1, 1);
    CHECK(p.inverses[0].target == a);
    CHECK(p.inverses[1].target == d);
    CHECK(p.inverses[2].target == NCPoly(1) + (d * a).scaled(qdiff()));
    CHECK(p.inverses[3].target == NCPoly(1) + (a * d).scaled(qdiff()));
    CHECK(p.relations.size() == p0.relations.size() + 8);

    NCPoly ainv = g(p, GenKind::AInv, 0, 1, 1);
    CHECK(p.relations[p0.relations.size()].poly == a * ainv - NCPoly(1));
    CHECK(p.relations[p0.relations.size()].origin == RelOrigin::UnitRel);

    CHECK_THROWS(adjoin_inverses(p, {{GenKind::AInv, 0}}));
    CHECK_THROWS(adjoin_inverses(dq_presentation(kron(1, 2)),
                                 {{GenKind::AInv, 0}}));
}

TEST_CASE("leg product evaluation rejects shape mismatches") {
    Mat<NCPoly> m(2, 3);
    Leg1 f1{&m};
    CHECK_THROWS_AS(eval_legs({f1}, 2, 1), std::logic_error);
    Mat<RatQ> r = r_matrix(2);
    Flat fr{&r};
    CHECK_THROWS_AS(eval_legs({fr}, 2, 1), std::logic_error);
}
