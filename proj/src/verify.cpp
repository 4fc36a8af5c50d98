#include "qmqv/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <random>

namespace qmqv {

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    long ms() const {
        return long(std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count());
    }
};

RatQ qdiff() { return RatQ::q_power(1) - RatQ::q_power(-1); }

std::string present_params(const Presentation& p, int D) {
    std::string s = "dims=(";
    bool first = true;
    for (const auto& v : p.quiver.vertices) {
        if (!first) s += ",";
        first = false;
        s += v.id + ":" + std::to_string(v.dim);
    }
    s += "); D=" + std::to_string(D);
    return s;
}

CheckReport make_unsupported(std::string name, std::string params, const std::string& why) {
    return {std::move(name), std::move(params), CheckStatus::InconclusiveAtBound,
            "unsupported: " + why, 0};
}

// Enumerates all words of a fixed length over letter codes 0..g-1 in
// lexicographic order.
template <class F>
void for_each_word(int g, int len, F&& f) {
    if (len == 0) {
        f(Word());
        return;
    }
    if (g <= 0) return;
    std::vector<int> idx(size_t(len), 0);
    Word w(size_t(len), char(0));
    for (;;) {
        for (int i = 0; i < len; ++i) w[size_t(i)] = char(idx[size_t(i)]);
        f(w);
        int pos = len - 1;
        while (pos >= 0 && ++idx[size_t(pos)] == g) {
            idx[size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

bool word_is_standard(const Word& u) {
    for (size_t i = 1; i < u.size(); ++i)
        if (std::uint8_t(u[i - 1]) > std::uint8_t(u[i])) return false;
    return true;
}

// Enumerates the standard (non-decreasing) words of a fixed length.
template <class F>
void for_each_standard_word(int g, int len, F&& f) {
    if (len == 0) {
        f(Word());
        return;
    }
    if (g <= 0) return;
    std::vector<int> idx(size_t(len), 0);
    Word w(size_t(len), char(0));
    for (;;) {
        for (int i = 0; i < len; ++i) w[size_t(i)] = char(idx[size_t(i)]);
        f(w);
        int pos = len - 1;
        while (pos >= 0 && idx[size_t(pos)] == g - 1) --pos;
        if (pos < 0) break;
        int v = idx[size_t(pos)] + 1;
        for (int i = pos; i < len; ++i) idx[size_t(i)] = v;
    }
}

void echelon_insert(std::map<Word, NCPoly, DegLex>& rows, NCPoly x) {
    while (!x.is_zero()) {
        Word w = x.leading().first;
        RatQ c = x.leading().second;
        auto it = rows.find(w);
        if (it == rows.end()) {
            rows.emplace(std::move(w), x.scaled(c.inv()));
            return;
        }
        x -= it->second.scaled(c);
    }
}

NCPoly echelon_reduce(const std::map<Word, NCPoly, DegLex>& rows, NCPoly x) {
    NCPoly rem;
    while (!x.is_zero()) {
        Word w = x.leading().first;
        RatQ c = x.leading().second;
        auto it = rows.find(w);
        if (it == rows.end()) {
            rem.add_term(w, c);
            x -= NCPoly::monomial(w, c);
        } else {
            x -= it->second.scaled(c);
        }
    }
    return rem;
}

std::vector<NCPoly> relation_polys(const Presentation& p) {
    std::vector<NCPoly> rels;
    for (const auto& r : p.relations)
        if (!r.poly.is_zero()) rels.push_back(r.poly);
    return rels;
}

Mat<NCPoly> gen_matrix(const Presentation& p, int e, bool adjoint) {
    const Edge& ed = p.quiver.edges[size_t(e)];
    VirtualEdge ve{e, adjoint, adjoint ? ed.tgt : ed.src, adjoint ? ed.src : ed.tgt};
    return virtual_edge_matrix(p.gens, p.quiver, ve);
}

}  // namespace

long long max_word_guard() {
    if (const char* s = std::getenv("QMQV_MAX_WORDS")) {
        char* end = nullptr;
        long long v = std::strtoll(s, &end, 10);
        if (end && *end == '\0' && v > 0) return std::min(v, 1000000000000000LL);
    }
    return 160000;
}

long long words_up_to(int g, int n) {
    if (g > 20)
        throw VerifyError("generator guard exceeded: " + std::to_string(g) +
                          " generators (limit 20)");
    if (g <= 0) return 1;  // only the empty word
    long long guard = max_word_guard();
    long long total = 0, pw = 1;
    for (int k = 0; k <= n; ++k) {
        total += pw;
        if (total > guard)
            throw VerifyError("word guard exceeded: over " + std::to_string(guard) +
                              " words of length <= " + std::to_string(n) + " over " +
                              std::to_string(g) +
                              " generators (set QMQV_MAX_WORDS to raise)");
        if (pw > guard) pw = guard + 1;
        pw *= g;
    }
    return total;
}

// ---- DegreeSpan ----------------------------------------------------------

DegreeSpan::DegreeSpan(const Presentation& p, int D)
    : n_gens_(int(p.gens.size())), rels_(relation_polys(p)) {
    if (D < 0) throw std::invalid_argument("DegreeSpan: negative bound");
    extend(D);
}

void DegreeSpan::extend(int new_bound) {
    if (new_bound <= bound_) return;
    (void)words_up_to(n_gens_, new_bound);
    for (int stage = bound_ + 1; stage <= new_bound; ++stage) {
        for (const NCPoly& r : rels_) {
            int dr = r.degree();
            if (dr > stage) continue;
            int k = stage - dr;
            for (int i = 0; i <= k; ++i) {
                for_each_word(n_gens_, i, [&](const Word& x) {
                    NCPoly xr = NCPoly::monomial(x, RatQ(1)) * r;
                    for_each_word(n_gens_, k - i, [&](const Word& y) {
                        insert(xr * NCPoly::monomial(y, RatQ(1)));
                    });
                });
            }
        }
    }
    bound_ = new_bound;
}

void DegreeSpan::insert(NCPoly x) { echelon_insert(rows_, std::move(x)); }

NCPoly DegreeSpan::reduce(NCPoly x) const { return echelon_reduce(rows_, std::move(x)); }

DegreeSpan ideal_span(const Presentation& p, int D) { return DegreeSpan(p, D); }

// ---- RewriteSystem -------------------------------------------------------

RewriteSystem::RewriteSystem(const Presentation& p) { build(relation_polys(p)); }

RewriteSystem::RewriteSystem(std::vector<NCPoly> rels) { build(std::move(rels)); }

void RewriteSystem::build(std::vector<NCPoly> rels) {
    std::deque<NCPoly> pending(rels.begin(), rels.end());
    while (!pending.empty()) {
        NCPoly r = normal_form(std::move(pending.front()));
        pending.pop_front();
        if (r.is_zero()) continue;
        if (r.degree() == 0) {
            witness_ = "a relation reduces to the nonzero constant " + r.leading().second.str();
            rules_.clear();
            max_lead_ = 0;
            return;
        }
        Word w = r.leading().first;
        RatQ c = r.leading().second;
        NCPoly tail = NCPoly::monomial(w, RatQ(1)) - r.scaled(c.inv());
        for (auto it = rules_.begin(); it != rules_.end();) {
            bool hit = it->first.find(w) != Word::npos;
            if (!hit)
                for (const auto& [tw, tc] : it->second.terms())
                    if (tw.find(w) != Word::npos) {
                        hit = true;
                        break;
                    }
            if (hit) {
                pending.push_back(NCPoly::monomial(it->first, RatQ(1)) - it->second);
                it = rules_.erase(it);
            } else {
                ++it;
            }
        }
        rules_.emplace(std::move(w), std::move(tail));
        max_lead_ = 0;
        for (const auto& [lw, t] : rules_) max_lead_ = std::max(max_lead_, lw.size());
    }
}

NCPoly RewriteSystem::normal_form(NCPoly x) const {
    if (!witness_.empty()) return NCPoly();  // unit ideal: everything collapses
    NCPoly out;
    while (!x.is_zero()) {
        Word w = x.leading().first;
        RatQ c = x.leading().second;
        x -= NCPoly::monomial(w, c);
        size_t pos = Word::npos, len = 0;
        for (size_t i = 0; i < w.size() && pos == Word::npos; ++i) {
            size_t cap = std::min(max_lead_, w.size() - i);
            for (size_t l = cap; l >= 1; --l)
                if (rules_.count(w.substr(i, l))) {
                    pos = i;
                    len = l;
                    break;
                }
        }
        if (pos == Word::npos) {
            out.add_term(w, c);
        } else {
            NCPoly repl = NCPoly::monomial(w.substr(0, pos), RatQ(1)) *
                          rules_.at(w.substr(pos, len)) *
                          NCPoly::monomial(w.substr(pos + len), RatQ(1));
            x += repl.scaled(c);
        }
    }
    return out;
}

// ---- membership ----------------------------------------------------------

MembershipChecker::MembershipChecker(const Presentation& p, int D)
    : p_(&p), bound_(D), rs_(p) {}

std::optional<NCPoly> MembershipChecker::remainder(const NCPoly& elem) {
    NCPoly nf = rs_.normal_form(elem);
    if (nf.is_zero()) return std::nullopt;
    if (nf.degree() > bound_) return nf;  // the span cannot see past the bound
    if (!span_) span_.emplace(*p_, bound_);
    NCPoly r = span_->reduce(std::move(nf));
    if (r.is_zero()) return std::nullopt;
    return r;
}

CheckReport ideal_membership(const NCPoly& elem, const Presentation& p, int D) {
    Stopwatch sw;
    std::string params = present_params(p, D);
    if (elem.degree() > D)
        throw std::invalid_argument("ideal_membership: element degree exceeds the bound");
    MembershipChecker mc(p, D);
    auto rem = mc.remainder(elem);
    CheckReport rep =
        !rem ? make_pass("ideal_membership", params, "reduced to zero")
             : make_inconclusive("ideal_membership", params, D,
                                 "remainder leading word " +
                                     p.gens.word_str(rem->leading().first));
    rep.elapsed_ms = sw.ms();
    return rep;
}

long long filtered_dimension(const Presentation& p, int n) {
    if (n < 0) throw std::invalid_argument("filtered_dimension: negative degree");
    return words_up_to(int(p.gens.size()), n) - ideal_span(p, n).rank();
}

std::vector<long long> filtered_dimensions(const Presentation& p, int D) {
    DegreeSpan s(p, 0);
    std::vector<long long> out;
    for (int n = 0; n <= D; ++n) {
        s.extend(n);
        out.push_back(words_up_to(int(p.gens.size()), n) - s.rank());
    }
    return out;
}

long long standard_monomial_count(int g, int n) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), unsigned(n + g), unsigned(g));
    return b.get_si();
}

// ---- pbw -----------------------------------------------------------------

CheckReport pbw_check(const Presentation& p, int D) {
    Stopwatch sw;
    if (!p.inverses.empty())
        throw std::invalid_argument(
            "pbw_check: localized presentations are unsupported (inverses collapse the "
            "filtration)");
    std::string params = present_params(p, D);
    int g = int(p.gens.size());
    RewriteSystem rs(p);
    CheckReport rep = make_pass("pbw", params);
    if (!rs.orientable()) {
        rep = make_fail("pbw", params, rs.failure_witness());
        rep.elapsed_ms = sw.ms();
        return rep;
    }
    (void)words_up_to(g, D);
    // (a) spanning. Fast path: deg-lex rewriting lands every word on standard
    // monomials. Loop relations cannot be oriented that way (some echelon
    // pivots are themselves standard words), so when rewriting stalls we fall
    // back to an exact rank certificate per degree: the standard monomials
    // together with the relation span must fill the whole word space.
    long long checked = 0;
    std::string stall;
    for (int len = 1; len <= D && stall.empty(); ++len)
        for_each_word(g, len, [&](const Word& w) {
            if (!stall.empty()) return;
            NCPoly nf = rs.normal_form(NCPoly::monomial(w, RatQ(1)));
            ++checked;
            for (const auto& [u, c] : nf.terms())
                if (!word_is_standard(u)) {
                    stall = "word " + p.gens.word_str(w) +
                            " rewrites onto the non-standard monomial " + p.gens.word_str(u);
                    return;
                }
        });
    std::string spanning =
        stall.empty() ? "spanning by rewriting (" + std::to_string(rs.rule_count()) +
                            " rules, " + std::to_string(checked) + " words)"
                      : "spanning by rank certificate";
    // (b) independence per degree, plus the spanning fallback where needed
    DegreeSpan span(p, 0);
    std::string ds;
    for (int n = 0; n <= D && rep.passed(); ++n) {
        span.extend(n);
        long long dim = words_up_to(g, n) - span.rank();
        long long expect = standard_monomial_count(g, n);
        if (!ds.empty()) ds += ",";
        ds += std::to_string(dim);
        if (dim != expect) {
            rep = make_fail("pbw", params,
                            "filtered dimension " + std::to_string(dim) + " at n=" +
                                std::to_string(n) + " differs from the " +
                                std::to_string(expect) + " standard monomials");
            break;
        }
        if (!stall.empty()) {
            std::map<Word, NCPoly, DegLex> combined = span.rows();
            for (int len = 0; len <= n; ++len)
                for_each_standard_word(g, len, [&](const Word& w) {
                    echelon_insert(combined, NCPoly::monomial(w, RatQ(1)));
                });
            if ((long long)combined.size() != words_up_to(g, n)) {
                rep = make_fail("pbw", params,
                                "standard monomials plus the relation span leave degree " +
                                    std::to_string(n) + " short (" + stall + ")");
                break;
            }
        }
    }
    if (rep.passed()) rep.witness = spanning + "; filtered dims " + ds;
    rep.elapsed_ms = sw.ms();
    return rep;
}

// ---- R-matrix axioms ------------------------------------------------------

CheckReport qybe_check(int n) {
    Stopwatch sw;
    CheckReport rep = qybe_holds(n)
                          ? make_pass("qybe", "N=" + std::to_string(n), "exact zero")
                          : make_fail("qybe", "N=" + std::to_string(n),
                                      "braid relation residual is nonzero");
    rep.elapsed_ms = sw.ms();
    return rep;
}

CheckReport hecke_check(int n) {
    Stopwatch sw;
    CheckReport rep = hecke_holds(n)
                          ? make_pass("hecke", "N=" + std::to_string(n), "exact zero")
                          : make_fail("hecke", "N=" + std::to_string(n),
                                      "quadratic relation residual is nonzero");
    rep.elapsed_ms = sw.ms();
    return rep;
}

// ---- identity suites -------------------------------------------------------

namespace {

// Componentwise membership with the suite failure rule: a surviving
// remainder is a fail only when the bound already exceeds the component's
// degree by 2; otherwise the verdict stays inconclusive.
struct Suite {
    MembershipChecker mc;
    CheckReport rep;
    long long components = 0;

    Suite(const char* name, std::string params, const Presentation& p, int D)
        : mc(p, D), rep(make_pass(name, std::move(params))) {}

    void component(const std::string& label, const NCPoly& elem) {
        if (rep.status == CheckStatus::Fail) return;
        ++components;
        if (elem.is_zero()) return;
        auto rem = mc.remainder(elem);
        if (!rem) return;
        if (mc.bound() >= elem.degree() + 2)
            rep = make_fail(rep.check_name, rep.parameters,
                            label + ": nonzero remainder at D=" + std::to_string(mc.bound()));
        else if (rep.passed())
            rep = make_inconclusive(rep.check_name, rep.parameters, mc.bound(),
                                    label + " not settled");
    }

    void matrix(const std::string& label, const Mat<NCPoly>& diff) {
        for (int i = 0; i < diff.rows; ++i)
            for (int j = 0; j < diff.cols; ++j)
                component(label + " [" + std::to_string(i) + "," + std::to_string(j) + "]",
                          diff.at(i, j));
    }

    CheckReport finish(Stopwatch& sw) {
        if (rep.passed()) rep.witness = "components=" + std::to_string(components);
        rep.elapsed_ms = sw.ms();
        return rep;
    }
};

}  // namespace

CheckReport reflection_check(const MomentMatrix& m, const Presentation& p, int D) {
    Stopwatch sw;
    int n = m.m.rows;
    if (n != m.m.cols) throw std::invalid_argument("reflection_check: matrix must be square");
    if (n >= 2)
        for (const NCPoly& e : m.m.a)
            if (e.degree() > 2)
                throw std::invalid_argument("reflection_check: entries must have degree <= 2");
    Mat<RatQ> r = r_matrix(n), r21 = r21_of(r, n);
    Mat<NCPoly> lhs = eval_legs({Leg2{&m.m}, Flat{&r21}, Leg1{&m.m}, Flat{&r}}, n, n);
    Mat<NCPoly> rhs = eval_legs({Flat{&r21}, Leg1{&m.m}, Flat{&r}, Leg2{&m.m}}, n, n);
    Suite s("reflection",
            present_params(p, D) + "; vertex=" + p.quiver.vertices[size_t(m.vertex)].id, p, D);
    s.matrix("component", lhs - rhs);
    return s.finish(sw);
}

CheckReport reflection_check_bar(const MomentMatrix& m, const Presentation& p, int D) {
    Stopwatch sw;
    int n = m.m.rows;
    if (n != m.m.cols)
        throw std::invalid_argument("reflection_check_bar: matrix must be square");
    if (n >= 2)
        for (const NCPoly& e : m.m.a)
            if (e.degree() > 2)
                throw std::invalid_argument("reflection_check_bar: entries must have degree <= 2");
    Mat<RatQ> rinv = r_matrix_inv(n), r21inv = r21_of(rinv, n);
    Mat<NCPoly> lhs = eval_legs({Leg2{&m.m}, Flat{&rinv}, Leg1{&m.m}, Flat{&r21inv}}, n, n);
    Mat<NCPoly> rhs = eval_legs({Flat{&rinv}, Leg1{&m.m}, Flat{&r21inv}, Leg2{&m.m}}, n, n);
    Suite s("reflection_bar",
            present_params(p, D) + "; vertex=" + p.quiver.vertices[size_t(m.vertex)].id, p, D);
    s.matrix("component", lhs - rhs);
    return s.finish(sw);
}

CheckReport moment_condition_check(int edge, const Presentation& p, int D) {
    Stopwatch sw;
    const Edge& ed = p.quiver.edges.at(size_t(edge));
    if (ed.src == ed.tgt)
        throw std::invalid_argument("moment_condition_check: loop edges are unsupported");
    int da = p.quiver.vertices[size_t(ed.src)].dim;
    int db = p.quiver.vertices[size_t(ed.tgt)].dim;
    if (da > 2 || db > 2)
        throw std::invalid_argument("moment_condition_check: dimensions above 2 are unsupported");
    Mat<NCPoly> a = gen_matrix(p, edge, false);
    Mat<NCPoly> d = gen_matrix(p, edge, true);
    Mat<NCPoly> m = edge_moment_beta(p, edge).m;
    Mat<RatQ> r = r_matrix(db), r21 = r21_of(r, db);
    Suite s("moment_condition", present_params(p, D) + "; edge=" + ed.id, p, D);
    // coordinate side: A2 R21 M1 R12 = M1 A2
    s.matrix("coordinate side",
             eval_legs({Leg2{&a}, Flat{&r21}, Leg1{&m}, Flat{&r}}, db, db) -
                 eval_legs({Leg1{&m}, Leg2{&a}}, db, db));
    // derivative side: R21 M1 R12 D2 = D2 M1 (the g-element exchange rule in
    // moment-matrix form; reduces to g d = q^{-2} d g at d = 1)
    s.matrix("derivative side",
             eval_legs({Flat{&r21}, Leg1{&m}, Flat{&r}, Leg2{&d}}, db, da) -
                 eval_legs({Leg2{&d}, Leg1{&m}}, db, da));
    if (da == 1 && db == 1) {
        const NCPoly& g = m.at(0, 0);
        const NCPoly& a0 = a.at(0, 0);
        const NCPoly& d0 = d.at(0, 0);
        s.component("g a - q^2 a g", g * a0 - (a0 * g).scaled(RatQ::q_power(2)));
        s.component("g d - q^{-2} d g", g * d0 - (d0 * g).scaled(RatQ::q_power(-2)));
    }
    return s.finish(sw);
}

CheckReport manyrelns_check(int edge, const Presentation& p, int D) {
    Stopwatch sw;
    const Edge& ed = p.quiver.edges.at(size_t(edge));
    if (ed.src == ed.tgt)
        throw std::invalid_argument("manyrelns_check: loop edges are unsupported");
    int da = p.quiver.vertices[size_t(ed.src)].dim;
    int db = p.quiver.vertices[size_t(ed.tgt)].dim;
    if (da > 2 || db > 2)
        throw std::invalid_argument("manyrelns_check: dimensions above 2 are unsupported");
    Mat<NCPoly> a = gen_matrix(p, edge, false);
    Mat<NCPoly> d = gen_matrix(p, edge, true);
    Mat<NCPoly> ga = edge_moment_beta(p, edge).m;        // I + (q-q^{-1}) D A
    Mat<NCPoly> gb = edge_moment_alpha_bar(p, edge).m;   // I + (q-q^{-1}) A D
    Mat<RatQ> rb = r_matrix(db), rb21 = r21_of(rb, db);
    Mat<RatQ> rbinv = r_matrix_inv(db), rb21inv = r21_of(rbinv, db);
    Mat<RatQ> ra = r_matrix(da), ra21 = r21_of(ra, da);
    Mat<RatQ> rainv = r_matrix_inv(da), ra21inv = r21_of(rainv, da);
    Suite s("manyrelns", present_params(p, D) + "; edge=" + ed.id, p, D);
    s.matrix("item (1)", ga * d - d * gb);
    s.matrix("item (2)", gb * a - a * ga);
    s.matrix("item (3)", eval_legs({Leg1{&ga}, Flat{&rb}, Leg2{&d}}, db, da) -
                             eval_legs({Flat{&rb21inv}, Leg2{&d}, Leg1{&ga}}, db, da));
    s.matrix("item (4)", eval_legs({Leg1{&gb}, Flat{&ra21inv}, Leg2{&a}}, da, db) -
                             eval_legs({Flat{&ra}, Leg2{&a}, Leg1{&gb}}, da, db));
    s.matrix("item (5)", eval_legs({Leg1{&gb}, Leg2{&d}, Flat{&ra21}}, da, da) -
                             eval_legs({Leg2{&d}, Flat{&rainv}, Leg1{&gb}}, da, da));
    s.matrix("item (6)", eval_legs({Leg1{&ga}, Leg2{&a}, Flat{&rbinv}}, db, db) -
                             eval_legs({Leg2{&a}, Flat{&rb21}, Leg1{&ga}}, db, db));
    s.matrix("item (7)", eval_legs({Leg1{&gb}, Leg2{&ga}}, da, db) -
                             eval_legs({Leg2{&ga}, Leg1{&gb}}, da, db));
    return s.finish(sw);
}

// ---- Fourier ----------------------------------------------------------------

FourierData fourier_data(const Quiver& q, int edge, FourierVariant variant) {
    const Edge& ed = q.edges.at(size_t(edge));
    bool loop = ed.src == ed.tgt;
    if ((variant == FourierVariant::Loop) != loop)
        throw std::invalid_argument("fourier_data: variant does not match the edge");
    if (q.vertices[size_t(ed.src)].dim != 1 || q.vertices[size_t(ed.tgt)].dim != 1)
        throw std::invalid_argument("fourier_data: requires dimension 1 at the edge");
    std::vector<InverseSpec> specs =
        loop ? std::vector<InverseSpec>{{GenKind::AInv, edge}, {GenKind::DInv, edge}}
             : std::vector<InverseSpec>{{GenKind::GaInv, edge}, {GenKind::GbInv, edge}};
    FourierData f{adjoin_inverses(dq_presentation(q), specs), {}};
    const GenTable& g = f.p.gens;
    auto code = [&](GenKind k) { return std::uint8_t(g.code_of({k, edge, 1, 1})); };
    auto mono1 = [&](GenKind k) {
        return NCPoly::monomial(Word(1, char(code(k))), RatQ(1));
    };
    if (!loop) {
        // a -> d, d -> -a g_a^{-1}; the image of g_a is then invertible with
        // inverse q^{-2} (1 + (q-q^{-1}) d a), which is where the inverse
        // generators land.
        NCPoly ga_img = NCPoly(1) + (mono1(GenKind::D) * mono1(GenKind::A)).scaled(qdiff());
        f.images[code(GenKind::A)] = mono1(GenKind::D);
        f.images[code(GenKind::D)] = -(mono1(GenKind::A) * mono1(GenKind::GaInv));
        f.images[code(GenKind::GaInv)] = ga_img.scaled(RatQ::q_power(-2));
        f.images[code(GenKind::GbInv)] = ga_img;
    } else {
        // a -> d, d -> d a^{-1} d^{-1}, and the forced images of the inverses
        f.images[code(GenKind::A)] = mono1(GenKind::D);
        f.images[code(GenKind::D)] =
            mono1(GenKind::D) * mono1(GenKind::AInv) * mono1(GenKind::DInv);
        f.images[code(GenKind::AInv)] = mono1(GenKind::DInv);
        f.images[code(GenKind::DInv)] =
            mono1(GenKind::D) * mono1(GenKind::A) * mono1(GenKind::DInv);
    }
    return f;
}

NCPoly fourier_apply(const FourierData& f, const NCPoly& x) {
    NCPoly out;
    for (const auto& [w, c] : x.terms()) {
        NCPoly prod(1);
        for (char ch : w) {
            auto it = f.images.find(std::uint8_t(ch));
            prod = it != f.images.end() ? prod * it->second
                                        : prod * NCPoly::monomial(Word(1, ch), RatQ(1));
        }
        out += prod.scaled(c);
    }
    return out;
}

CheckReport fourier_check(const Quiver& q, int edge, FourierVariant variant) {
    Stopwatch sw;
    const Edge& ed = q.edges.at(size_t(edge));
    std::string params = "edge=" + ed.id + "; variant=" +
                         (variant == FourierVariant::Loop ? "loop" : "nonloop");
    if (q.vertices[size_t(ed.src)].dim != 1 || q.vertices[size_t(ed.tgt)].dim != 1)
        return make_unsupported("fourier", params, "requires d=1");
    FourierData f = fourier_data(q, edge, variant);
    const int D = 6;  // unit-relation images reach degree 5
    Suite s("fourier", params + "; D=" + std::to_string(D), f.p, D);
    int idx = 0;
    for (const Relation& r : f.p.relations) {
        s.component("image of relation " + std::to_string(idx), fourier_apply(f, r.poly));
        ++idx;
    }
    return s.finish(sw);
}

// ---- equivariance -----------------------------------------------------------

namespace {

// Generator action of the vertex quantum group in its vector representation:
// vector factors transform by rho(l^{+-i}_j), dual factors by the antipode
// images, and both at once on a loop via the coproduct.
struct VertexAction {
    const Presentation& p;
    int v = -1;
    bool plus = true;
    int n = 1;
    Mat<RatQ> R, Rinv;

    VertexAction(const Presentation& pp, int vv, bool pl)
        : p(pp), v(vv), plus(pl), n(pp.quiver.vertices[size_t(vv)].dim),
          R(r_matrix(n)), Rinv(r_matrix_inv(n)) {}

    RatQ rho(int i, int j, int al, int be) const {
        return plus ? R.at((al - 1) * n + (i - 1), (be - 1) * n + (j - 1))
                    : Rinv.at((i - 1) * n + (al - 1), (j - 1) * n + (be - 1));
    }
    RatQ rhoS(int i, int j, int ga, int be) const {
        return plus ? Rinv.at((ga - 1) * n + (i - 1), (be - 1) * n + (j - 1))
                    : R.at((i - 1) * n + (ga - 1), (j - 1) * n + (be - 1));
    }

    NCPoly act_gen(int i, int j, std::uint8_t code) const {
        GenId g = p.gens.gen(code);
        const Edge& ed = p.quiver.edges[size_t(g.edge)];
        int dual_v = g.kind == GenKind::A ? ed.src : ed.tgt;
        int vec_v = g.kind == GenKind::A ? ed.tgt : ed.src;
        bool dual = dual_v == v, vec = vec_v == v;
        auto letter = [&](int up, int lo) {
            return Word(1, char(p.gens.code_of({g.kind, g.edge, up, lo})));
        };
        NCPoly out;
        if (!dual && !vec) {
            if (i == j) out.add_term(Word(1, char(code)), RatQ(1));
        } else if (vec && !dual) {
            for (int al = 1; al <= n; ++al) out.add_term(letter(g.up, al), rho(i, j, al, g.lo));
        } else if (dual && !vec) {
            for (int b = 1; b <= n; ++b) out.add_term(letter(b, g.lo), rhoS(i, j, g.up, b));
        } else {
            for (int k = 1; k <= n; ++k)
                for (int b = 1; b <= n; ++b)
                    for (int al = 1; al <= n; ++al)
                        out.add_term(letter(b, al), rhoS(i, k, g.up, b) * rho(k, j, al, g.lo));
        }
        return out;
    }

    NCPoly act_word(int i, int j, const Word& w) const {
        if (w.empty()) return i == j ? NCPoly(1) : NCPoly();
        Word rest = w.substr(1);
        NCPoly out;
        for (int k = 1; k <= n; ++k) {
            NCPoly head = act_gen(i, k, std::uint8_t(w[0]));
            if (head.is_zero()) continue;
            NCPoly tail = act_word(k, j, rest);
            if (tail.is_zero()) continue;
            out += head * tail;
        }
        return out;
    }

    NCPoly act_poly(int i, int j, const NCPoly& x) const {
        NCPoly out;
        for (const auto& [w, c] : x.terms()) out += act_word(i, j, w).scaled(c);
        return out;
    }
};

}  // namespace

CheckReport equivariance_check(const Presentation& p, int D) {
    Stopwatch sw;
    std::string params = present_params(p, D);
    if (D < 2) throw std::invalid_argument("equivariance_check: D must be at least 2");
    if (!p.inverses.empty())
        return make_unsupported("equivariance", params, "localized presentations");
    for (const auto& r : p.relations)
        if (r.poly.degree() > D) {
            CheckReport rep = make_inconclusive("equivariance", params, D,
                                                "a relation exceeds the bound");
            rep.elapsed_ms = sw.ms();
            return rep;
        }
    std::map<Word, NCPoly, DegLex> rows;
    for (const auto& r : p.relations) echelon_insert(rows, r.poly);
    CheckReport rep = make_pass("equivariance", params);
    long long actions = 0;
    for (size_t v = 0; v < p.quiver.vertices.size() && rep.passed(); ++v)
        for (int sign = 0; sign < 2 && rep.passed(); ++sign) {
            VertexAction act(p, int(v), sign == 0);
            for (int i = 1; i <= act.n && rep.passed(); ++i)
                for (int j = 1; j <= act.n && rep.passed(); ++j)
                    for (size_t ridx = 0; ridx < p.relations.size(); ++ridx) {
                        NCPoly img = act.act_poly(i, j, p.relations[ridx].poly);
                        ++actions;
                        if (!echelon_reduce(rows, std::move(img)).is_zero()) {
                            rep = make_fail(
                                "equivariance", params,
                                "vertex " + p.quiver.vertices[v].id + ", l^" +
                                    (sign == 0 ? "+" : "-") + "[" + std::to_string(i) + "," +
                                    std::to_string(j) + "] moves relation " +
                                    std::to_string(ridx) + " out of the span");
                            break;
                        }
                    }
        }
    if (rep.passed()) rep.witness = "actions=" + std::to_string(actions);
    rep.elapsed_ms = sw.ms();
    return rep;
}

// ---- numeric cross-check ----------------------------------------------------

namespace {

using NumPoly = std::map<Word, mpq_class, DegLex>;

int numeric_rank(const std::vector<NumPoly>& rels, int g, int D) {
    std::map<Word, NumPoly, DegLex> rows;
    auto insert = [&](NumPoly x) {
        while (!x.empty()) {
            auto lead = std::prev(x.end());
            Word w = lead->first;
            mpq_class c = lead->second;
            auto it = rows.find(w);
            if (it == rows.end()) {
                NumPoly monic;
                for (const auto& [ww, cc] : x) monic[ww] = cc / c;
                rows.emplace(std::move(w), std::move(monic));
                return;
            }
            for (const auto& [ww, cc] : it->second) {
                auto [jt, fresh] = x.emplace(ww, 0);
                jt->second -= c * cc;
                if (jt->second == 0) x.erase(jt);
            }
        }
    };
    for (const NumPoly& r : rels) {
        int dr = int(r.rbegin()->first.size());
        if (dr > D) continue;
        int k = D - dr;
        for (int i = 0; i <= k; ++i)
            for_each_word(g, i, [&](const Word& x) {
                for (int j = 0; i + j <= k; ++j)
                    for_each_word(g, j, [&](const Word& y) {
                        NumPoly m;
                        for (const auto& [w, c] : r) m.emplace(x + w + y, c);
                        insert(std::move(m));
                    });
            });
    }
    return int(rows.size());
}

}  // namespace

RankCrossCheck rank_cross_check(const Presentation& p, int D, std::uint64_t seed) {
    RankCrossCheck out;
    out.seed = seed;
    out.exact_rank = ideal_span(p, D).rank();
    int g = int(p.gens.size());
    (void)words_up_to(g, D);
    std::vector<NCPoly> rels = relation_polys(p);
    std::mt19937_64 rng(seed);
    int attempts = 0;
    while (out.points.size() < 3 && attempts < 200) {
        ++attempts;
        mpq_class q0(long(rng() % 29) + 2, long(rng() % 7) + 1);
        q0.canonicalize();
        if ((rng() & 1) != 0) q0 = -q0;
        if (q0 == 1 || q0 == -1) continue;
        bool ok = true;
        std::vector<NumPoly> nrels;
        for (const NCPoly& r : rels) {
            NumPoly nr;
            for (const auto& [w, c] : r.terms()) {
                auto val = c.eval(q0);
                if (!val) {
                    ok = false;
                    break;
                }
                if (*val != 0) nr.emplace(w, *val);
            }
            if (!ok) break;
            if (!nr.empty()) nrels.push_back(std::move(nr));
        }
        if (!ok) continue;  // a coefficient denominator vanishes here
        out.points.push_back(q0.get_str());
        out.numeric_ranks.push_back(numeric_rank(nrels, g, D));
    }
    out.agreed = out.points.size() == 3;
    for (int r : out.numeric_ranks)
        if (r != out.exact_rank) out.agreed = false;
    return out;
}

CheckReport rank_agreement_check(const Presentation& p, int D, std::uint64_t seed) {
    Stopwatch sw;
    RankCrossCheck c = rank_cross_check(p, D, seed);
    std::string params =
        present_params(p, D) + "; seed=" + std::to_string(seed) + "; points=";
    for (size_t i = 0; i < c.points.size(); ++i)
        params += (i ? "," : "") + c.points[i];
    CheckReport rep;
    if (c.agreed) {
        rep = make_pass("rank_agreement", params,
                        "exact rank " + std::to_string(c.exact_rank) + " at 3 points");
    } else {
        std::string w = "exact rank " + std::to_string(c.exact_rank) + ", numeric";
        for (int r : c.numeric_ranks) w += " " + std::to_string(r);
        rep = make_fail("rank_agreement", params, w);
    }
    rep.elapsed_ms = sw.ms();
    return rep;
}

}  // namespace qmqv
