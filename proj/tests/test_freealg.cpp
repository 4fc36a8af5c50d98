#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmqv/freealg.hpp"

#include <random>

using namespace qmqv;

namespace {

Quiver one_edge_22() {
    return Quiver::from_json_text(
        R"({"vertices":[{"id":"v","dim":2},{"id":"w","dim":2}],
            "edges":[{"id":"e","src":"v","tgt":"w"}]})");
}

Mat<RatQ> random_mat(std::mt19937_64& rng, int r, int c) {
    std::uniform_int_distribution<int> d(-3, 3);
    Mat<RatQ> m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = RatQ(LaurentQ(d(rng)).shifted(d(rng)));
    return m;
}

}  // namespace

TEST_CASE("generator table order") {
    GenTable t = base_gen_table(one_edge_22());
    REQUIRE(t.size() == 8);
    // all a's before all d's, row-major within a kind
    CHECK(t.gen(0) == GenId{GenKind::A, 0, 1, 1});
    CHECK(t.gen(1) == GenId{GenKind::A, 0, 1, 2});
    CHECK(t.gen(2) == GenId{GenKind::A, 0, 2, 1});
    CHECK(t.gen(3) == GenId{GenKind::A, 0, 2, 2});
    CHECK(t.gen(4) == GenId{GenKind::D, 0, 1, 1});
    CHECK(t.gen(7) == GenId{GenKind::D, 0, 2, 2});
    CHECK(t.code_of({GenKind::D, 0, 1, 2}) == 5);
    CHECK(t.code_of({GenKind::AInv, 0, 1, 1}) == -1);
    CHECK(t.letter_str(5) == "d[e]^1_2");
}

TEST_CASE("degree lex word order") {
    DegLex lt;
    Word e, x(1, char(0)), y(1, char(1));
    CHECK(lt(e, x));
    CHECK(lt(x, y));
    CHECK(lt(y, x + x));  // shorter words first
    CHECK(lt(x + y, y + x));
    CHECK(!lt(x, x));
}

TEST_CASE("free polynomials do not commute") {
    GenTable t = base_gen_table(one_edge_22());
    NCPoly x = NCPoly::monomial(t.word1({GenKind::A, 0, 1, 1}), RatQ(1));
    NCPoly y = NCPoly::monomial(t.word1({GenKind::A, 0, 1, 2}), RatQ(1));
    CHECK(x * y != y * x);

    NCPoly sq = (x + y) * (x + y);
    REQUIRE(sq.terms().size() == 4);
    for (const auto& [w, c] : sq.terms()) {
        CHECK(w.size() == 2);
        CHECK(c == RatQ(1));
    }
    CHECK(sq - (x * x + x * y + y * x + y * y) == NCPoly());

    NCPoly p = x * y - y * x;
    CHECK(p.degree() == 2);
    CHECK(p.leading().second == RatQ(-1));  // yx is the larger word
}

TEST_CASE("rendering") {
    Quiver q = one_edge_22();
    GenTable t = base_gen_table(q);
    RatQ qmq = RatQ::q_power(1) - RatQ::q_power(-1);
    Word w = t.word1({GenKind::D, 0, 1, 2}) + t.word1({GenKind::A, 0, 2, 1});
    NCPoly p = NCPoly::monomial(w, qmq) + NCPoly(1);
    CHECK(render(p, t) == "(q - q^-1)*d[e]^1_2.a[e]^2_1 + 1");

    NCPoly m = NCPoly::monomial(t.word1({GenKind::A, 0, 1, 1}), RatQ::q_power(2));
    CHECK(render(m, t) == "q^2*a[e]^1_1");
    CHECK(render(m - m, t) == "0");
    CHECK(render(-m, t) == "-q^2*a[e]^1_1");
    CHECK(render(NCPoly(-3), t) == "-3");
}

TEST_CASE("r matrix entries at n = 2") {
    // nonzeros: q on (11,11) and (22,22); 1 on (12,12) and (21,21);
    // q - q^-1 on row (2,1), column (1,2)
    Mat<RatQ> r = r_matrix(2);
    RatQ qq = RatQ::q_power(1);
    CHECK(r.at(0, 0) == qq);
    CHECK(r.at(3, 3) == qq);
    CHECK(r.at(1, 1) == RatQ(1));
    CHECK(r.at(2, 2) == RatQ(1));
    CHECK(r.at(2, 1) == qq - RatQ::q_power(-1));
    int nonzeros = 0;
    for (const auto& e : r.a) nonzeros += !e.is_zero();
    CHECK(nonzeros == 5);
}

TEST_CASE("r matrix inverse in closed form") {
    for (int n = 1; n <= 3; ++n) {
        Mat<RatQ> prod = r_matrix(n) * r_matrix_inv(n);
        CHECK(prod == Mat<RatQ>::id(n * n));
        Mat<RatQ> prod2 = r_matrix_inv(n) * r_matrix(n);
        CHECK(prod2 == Mat<RatQ>::id(n * n));
    }
}

TEST_CASE("braid relation") {
    CHECK(qybe_holds(2));
    CHECK(qybe_holds(3));
}

TEST_CASE("hecke condition") {
    CHECK(hecke_holds(2));
    CHECK(hecke_holds(3));
}

TEST_CASE("flip and r21") {
    int n = 2;
    Mat<RatQ> fl = flip_matrix(n);
    CHECK(fl * fl == Mat<RatQ>::id(n * n));
    Mat<RatQ> r21 = r21_of(r_matrix(n), n);
    // R21[(i,j),(k,l)] = R[(j,i),(l,k)]
    CHECK(r21.at(1, 2) == RatQ::q_power(1) - RatQ::q_power(-1));
    CHECK(r21.at(0, 0) == RatQ::q_power(1));
    CHECK(r21.at(2, 1) == RatQ(0));
}

TEST_CASE("matrix entries multiply in written order") {
    GenTable t = base_gen_table(one_edge_22());
    NCPoly x = NCPoly::monomial(t.word1({GenKind::A, 0, 1, 1}), RatQ(1));
    NCPoly y = NCPoly::monomial(t.word1({GenKind::D, 0, 1, 1}), RatQ(1));
    Mat<NCPoly> mx(1, 1), my(1, 1);
    mx.at(0, 0) = x;
    my.at(0, 0) = y;
    Mat<NCPoly> prod = mx * my;
    CHECK(prod.at(0, 0) == x * y);
    CHECK(prod.at(0, 0) != y * x);
}

TEST_CASE("kronecker product") {
    std::mt19937_64 rng(0xABCD);
    Mat<RatQ> a = random_mat(rng, 2, 3), b = random_mat(rng, 3, 2);
    Mat<RatQ> c = random_mat(rng, 3, 2), d = random_mat(rng, 2, 3);
    CHECK(kron(a, c) * kron(b, d) == kron(a * b, c * d));
    CHECK(kron(Mat<RatQ>::id(2), Mat<RatQ>::id(3)) == Mat<RatQ>::id(6));
    // placement: kron(A, id) repeats A in blocks, kron(id, A) tiles A on the diagonal
    Mat<RatQ> a11(1, 1);
    a11.at(0, 0) = RatQ(5);
    Mat<RatQ> k1 = kron(a, a11);
    CHECK(k1.at(0, 0) == a.at(0, 0) * RatQ(5));
}
