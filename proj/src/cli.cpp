#include "qmqv/cli.hpp"

#include "qmqv/degen.hpp"
#include "qmqv/moment.hpp"
#include "qmqv/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qmqv {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kTool = "qmqv 0.1.0";

// ---- serialization -------------------------------------------------------

ojson laurent_json(const LaurentQ& p) {
    ojson a = ojson::array();
    for (const auto& [k, c] : p.terms()) a.push_back(ojson::array({k, c.get_str()}));
    return a;
}

ojson coeff_json(const RatQ& c) {
    return ojson{{"num", laurent_json(c.num())}, {"den", laurent_json(c.den())}};
}

const char* kind_name(GenKind k) {
    switch (k) {
        case GenKind::A: return "a";
        case GenKind::D: return "d";
        case GenKind::AInv: return "a_inv";
        case GenKind::DInv: return "d_inv";
        case GenKind::GaInv: return "ga_inv";
        case GenKind::GbInv: return "gb_inv";
    }
    return "?";
}

ojson poly_json(const NCPoly& p, const GenTable& gens, const Quiver& q) {
    ojson a = ojson::array();
    for (const auto& [w, c] : p.terms()) {
        ojson word = ojson::array();
        for (char ch : w) {
            GenId g = gens.gen(uint8_t(ch));
            word.push_back(ojson{{"edge", q.edges[size_t(g.edge)].id},
                                 {"kind", kind_name(g.kind)},
                                 {"up", g.up},
                                 {"lo", g.lo}});
        }
        a.push_back(ojson{{"coeff", coeff_json(c)}, {"word", std::move(word)}});
    }
    return a;
}

ojson quiver_json(const Quiver& q) {
    ojson vs = ojson::array(), es = ojson::array();
    for (const auto& v : q.vertices) vs.push_back(ojson{{"id", v.id}, {"dim", v.dim}});
    for (const auto& e : q.edges)
        es.push_back(ojson{{"id", e.id},
                           {"src", q.vertices[size_t(e.src)].id},
                           {"tgt", q.vertices[size_t(e.tgt)].id}});
    return ojson{{"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

CheckStatus aggregate(const std::vector<CheckReport>& checks) {
    CheckStatus worst = CheckStatus::Pass;
    for (const auto& c : checks) {
        if (c.status == CheckStatus::Fail) return CheckStatus::Fail;
        if (c.status == CheckStatus::InconclusiveAtBound)
            worst = CheckStatus::InconclusiveAtBound;
    }
    return worst;
}

int exit_code(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return 0;
        case CheckStatus::Fail: return 1;
        case CheckStatus::InconclusiveAtBound: return 2;
    }
    return 3;
}

ojson check_json(const CheckReport& c, bool det) {
    ojson j{{"name", c.check_name},
            {"params", c.parameters},
            {"status", status_name(c.status)},
            {"witness", c.witness}};
    if (!det) j["elapsed_ms"] = c.elapsed_ms;
    return j;
}

std::string check_line(const CheckReport& c, bool det) {
    std::string s = "[" + std::string(status_name(c.status)) + "] " + c.check_name;
    if (!c.parameters.empty()) s += "  " + c.parameters;
    if (!c.witness.empty()) s += "  | " + c.witness;
    if (!det) s += "  (" + std::to_string(c.elapsed_ms) + " ms)";
    return s;
}

void print_json(const ojson& j) { std::printf("%s\n", j.dump(2).c_str()); }

// ---- shared option state --------------------------------------------------

struct Opts {
    std::string file;
    std::string format;  // overrides the per-command default when set
    bool json = false;
    bool deterministic = false;
    std::string algebra = "dq";
    std::string suite = "all";
    int max_degree = -1;  // unset
    int bound = 6;
    int order = 2;
    std::optional<std::uint64_t> seed;

    bool json_out(bool command_default) const {
        if (!format.empty()) return format == "json";
        return json || command_default;
    }
    int degree_or(int dflt) const { return max_degree < 0 ? dflt : max_degree; }
};

Presentation make_presentation(const Quiver& q, const std::string& algebra) {
    return algebra == "oq" ? oq_presentation(q) : dq_presentation(q);
}

ojson report_head(const char* command, const Quiver& q) {
    return ojson{{"tool", kTool}, {"schema", 1}, {"command", command},
                 {"quiver", quiver_json(q)}};
}

// ---- relations ------------------------------------------------------------

const char* origin_name(RelOrigin o) {
    switch (o) {
        case RelOrigin::SameEdgeAA: return "aa";
        case RelOrigin::SameEdgeDD: return "dd";
        case RelOrigin::SameEdgeCross: return "cross";
        case RelOrigin::CrossPair: return "cross_pair";
        case RelOrigin::UnitRel: return "unit";
    }
    return "?";
}

// monic row-echelon form keyed by leading word
void echelon_add(std::map<Word, NCPoly, DegLex>& rows, NCPoly x) {
    while (!x.is_zero()) {
        const auto& [lw, lc] = x.leading();
        auto it = rows.find(lw);
        if (it == rows.end()) {
            NCPoly r = x.scaled(lc.inv());
            rows.emplace(r.leading().first, std::move(r));
            return;
        }
        x -= it->second.scaled(lc);
    }
}

int cmd_relations(const Quiver& q, const Opts& o) {
    Presentation p = make_presentation(q, o.algebra);
    struct Bucket {
        RelOrigin origin;
        int edge, edge2;
        std::map<Word, NCPoly, DegLex> rows;
    };
    std::vector<Bucket> buckets;
    for (const Relation& r : p.relations) {
        auto it = std::find_if(buckets.begin(), buckets.end(), [&](const Bucket& b) {
            return b.origin == r.origin && b.edge == r.edge && b.edge2 == r.edge2;
        });
        if (it == buckets.end()) {
            buckets.push_back({r.origin, r.edge, r.edge2, {}});
            it = std::prev(buckets.end());
        }
        echelon_add(it->rows, r.poly);
    }
    long total = 0;
    for (const auto& b : buckets) total += long(b.rows.size());

    if (o.json_out(true)) {
        ojson j = report_head("relations", q);
        j["config"] = ojson{{"algebra", o.algebra}, {"deterministic", o.deterministic}};
        ojson bs = ojson::array();
        for (const auto& b : buckets) {
            ojson bj{{"kind", origin_name(b.origin)},
                     {"edge", q.edges[size_t(b.edge)].id}};
            if (b.edge2 >= 0) bj["edge2"] = q.edges[size_t(b.edge2)].id;
            bj["count"] = b.rows.size();
            ojson rel = ojson::array();
            for (const auto& [lw, poly] : b.rows) rel.push_back(poly_json(poly, p.gens, q));
            bj["relations"] = std::move(rel);
            bs.push_back(std::move(bj));
        }
        j["buckets"] = std::move(bs);
        j["total"] = total;
        print_json(j);
    } else {
        std::printf("%s  relations  algebra=%s\n", kTool, o.algebra.c_str());
        for (const auto& b : buckets) {
            std::printf("== %s edge=%s", origin_name(b.origin),
                        q.edges[size_t(b.edge)].id.c_str());
            if (b.edge2 >= 0) std::printf(" edge2=%s", q.edges[size_t(b.edge2)].id.c_str());
            std::printf(" (%zu)\n", b.rows.size());
            for (const auto& [lw, poly] : b.rows)
                std::printf("  %s\n", render(poly, p.gens).c_str());
        }
        std::printf("total: %ld\n", total);
    }
    return 0;
}

// ---- verify ----------------------------------------------------------------

std::vector<CheckReport> run_verify_suites(const Quiver& q, const Opts& o) {
    std::vector<CheckReport> checks;
    auto timed = [&](auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        CheckReport r = fn();
        r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
        checks.push_back(std::move(r));
    };
    auto guarded = [&](const char* name, auto&& fn) {
        try {
            timed(fn);
        } catch (const VerifyError& e) {
            checks.push_back({name, "", CheckStatus::InconclusiveAtBound,
                              std::string("guard: ") + e.what(), 0});
        }
    };
    bool all = o.suite == "all";
    auto on = [&](const char* s) { return all || o.suite == s; };

    std::set<int> dims;
    for (const auto& v : q.vertices)
        if (v.dim >= 1) dims.insert(v.dim);

    if (on("qybe"))
        for (int n : dims) timed([&] { return qybe_check(n); });
    if (on("hecke"))
        for (int n : dims) timed([&] { return hecke_check(n); });

    std::optional<Presentation> dq;
    auto the_dq = [&]() -> const Presentation& {
        if (!dq) dq.emplace(dq_presentation(q));
        return *dq;
    };

    if (on("pbw"))
        guarded("pbw", [&] {
            return pbw_check(make_presentation(q, o.algebra), o.degree_or(3));
        });
    if (on("reflection"))
        for (size_t e = 0; e < q.edges.size(); ++e) {
            if (q.edge_is_loop(int(e))) continue;  // no matrix identity for loops
            guarded("reflection", [&] {
                return reflection_check(edge_moment_beta(the_dq(), int(e)), the_dq(),
                                        o.degree_or(4));
            });
            guarded("reflection_bar", [&] {
                return reflection_check_bar(edge_moment_alpha_bar(the_dq(), int(e)),
                                            the_dq(), o.degree_or(4));
            });
        }
    if (on("moment"))
        for (size_t e = 0; e < q.edges.size(); ++e) {
            if (q.edge_is_loop(int(e))) continue;
            guarded("moment_condition",
                    [&] { return moment_condition_check(int(e), the_dq(), o.degree_or(4)); });
        }
    if (on("manyrelns"))
        for (size_t e = 0; e < q.edges.size(); ++e) {
            if (q.edge_is_loop(int(e))) continue;
            guarded("manyrelns", [&] { return manyrelns_check(int(e), the_dq()); });
        }
    if (on("fourier"))
        for (size_t e = 0; e < q.edges.size(); ++e)
            guarded("fourier", [&] {
                return fourier_check(q, int(e),
                                     q.edge_is_loop(int(e)) ? FourierVariant::Loop
                                                            : FourierVariant::NonLoop);
            });
    if (on("equivariance"))
        guarded("equivariance", [&] {
            return equivariance_check(make_presentation(q, o.algebra), o.degree_or(2));
        });
    if (o.seed)
        guarded("rank_agreement", [&] {
            return rank_agreement_check(make_presentation(q, o.algebra), o.degree_or(3),
                                        *o.seed);
        });
    return checks;
}

int cmd_verify(const Quiver& q, const Opts& o) {
    std::vector<CheckReport> checks = run_verify_suites(q, o);
    CheckStatus agg = aggregate(checks);
    if (o.json_out(false)) {
        ojson j = report_head("verify", q);
        ojson cfg{{"suite", o.suite},
                  {"algebra", o.algebra},
                  {"deterministic", o.deterministic}};
        if (o.max_degree >= 0) cfg["max_degree"] = o.max_degree;
        if (o.seed) cfg["seed"] = *o.seed;
        j["config"] = std::move(cfg);
        ojson cs = ojson::array();
        for (const auto& c : checks) cs.push_back(check_json(c, o.deterministic));
        j["checks"] = std::move(cs);
        j["aggregate"] = status_name(agg);
        print_json(j);
    } else {
        std::printf("%s  verify  suite=%s\n", kTool, o.suite.c_str());
        for (const auto& c : checks) std::printf("%s\n", check_line(c, o.deterministic).c_str());
        std::printf("aggregate: %s\n", status_name(agg));
    }
    return exit_code(agg);
}

// ---- flatness ---------------------------------------------------------------

std::string dimvec_str(const DimVec& d) {
    std::string s = "(";
    for (size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s + ")";
}

std::string decomposition_str(const Decomposition& dec) {
    std::string s;
    for (size_t i = 0; i < dec.parts.size(); ++i) {
        if (i) s += "+";
        s += dimvec_str(dec.parts[i]);
    }
    return s;
}

std::string decomposition_list(const std::vector<Decomposition>& ds) {
    std::string s;
    for (size_t i = 0; i < ds.size(); ++i) {
        if (i) s += ", ";
        s += decomposition_str(ds[i]);
    }
    return s;
}

int cmd_flatness(const Quiver& q, const Opts& o) {
    FlatnessReport fr = flatness_report(q, q.dims(), o.bound);
    std::string params = "d=" + dimvec_str(fr.d) + "; p(d)=" + std::to_string(fr.p_of_d) +
                         "; bound=" + std::to_string(o.bound);
    std::vector<CheckReport> checks;
    if (!fr.exhaustive) {
        checks.push_back({"flatness_condition", params, CheckStatus::InconclusiveAtBound,
                          "dimension vector exceeds the decomposition bound", 0});
        checks.push_back({"flatness_strict", params, CheckStatus::InconclusiveAtBound,
                          "dimension vector exceeds the decomposition bound", 0});
    } else {
        checks.push_back(fr.condition_holds
                             ? make_pass("flatness_condition", params,
                                         "no decomposition exceeds p(d)")
                             : make_fail("flatness_condition", params,
                                         "p-sum above p(d): " +
                                             decomposition_list(fr.violations)));
        std::vector<Decomposition> at_or_above = fr.equalities;
        at_or_above.insert(at_or_above.end(), fr.violations.begin(), fr.violations.end());
        checks.push_back(fr.strict
                             ? make_pass("flatness_strict", params,
                                         "every nontrivial decomposition stays below p(d)")
                             : make_fail("flatness_strict", params,
                                         "p-sum at or above p(d): " +
                                             decomposition_list(at_or_above)));
    }
    CheckStatus agg = aggregate(checks);
    if (o.json_out(false)) {
        ojson j = report_head("flatness", q);
        j["config"] = ojson{{"bound", o.bound}, {"deterministic", o.deterministic}};
        j["d"] = fr.d;
        j["p_of_d"] = fr.p_of_d;
        j["d_is_root"] = fr.d_is_root;
        j["exhaustive"] = fr.exhaustive;
        j["condition_holds"] = fr.condition_holds;
        j["strict"] = fr.strict;
        auto decs = [&](const std::vector<Decomposition>& ds) {
            ojson a = ojson::array();
            for (const auto& d : ds)
                a.push_back(ojson{{"parts", d.parts}, {"p_sum", d.p_sum}});
            return a;
        };
        j["equalities"] = decs(fr.equalities);
        j["violations"] = decs(fr.violations);
        ojson cs = ojson::array();
        for (const auto& c : checks) cs.push_back(check_json(c, o.deterministic));
        j["checks"] = std::move(cs);
        j["aggregate"] = status_name(agg);
        print_json(j);
    } else {
        std::printf("%s  flatness\n", kTool);
        std::printf("d = %s\n", dimvec_str(fr.d).c_str());
        std::printf("p(d) = %d\n", fr.p_of_d);
        std::printf("d is a positive root: %s\n", fr.d_is_root ? "yes" : "no");
        std::printf("decompositions exhaustive: %s\n", fr.exhaustive ? "yes" : "no");
        if (!fr.equalities.empty())
            std::printf("equalities: %s\n", decomposition_list(fr.equalities).c_str());
        if (!fr.violations.empty())
            std::printf("violations: %s\n", decomposition_list(fr.violations).c_str());
        for (const auto& c : checks) std::printf("%s\n", check_line(c, o.deterministic).c_str());
        std::printf("aggregate: %s\n", status_name(agg));
    }
    return exit_code(agg);
}

// ---- hilbert ----------------------------------------------------------------

int cmd_hilbert(const Quiver& q, const Opts& o) {
    Presentation p = make_presentation(q, o.algebra);
    int D = o.degree_or(3);
    std::vector<long long> filt = filtered_dimensions(p, D);
    int g = int(p.gens.size());
    bool all_match = true;
    struct Row {
        int n;
        long long graded, filtered, cgraded, cfiltered;
        bool ok;
    };
    std::vector<Row> rows;
    for (int n = 0; n <= D; ++n) {
        long long cf = standard_monomial_count(g, n);
        long long cg = n ? cf - standard_monomial_count(g, n - 1) : 1;
        long long fn = filt[size_t(n)];
        long long gn = n ? fn - filt[size_t(n - 1)] : fn;
        bool ok = fn == cf;
        all_match = all_match && ok;
        rows.push_back({n, gn, fn, cg, cf, ok});
    }
    if (o.json_out(false)) {
        ojson j = report_head("hilbert", q);
        j["config"] = ojson{{"algebra", o.algebra},
                            {"max_degree", D},
                            {"deterministic", o.deterministic}};
        ojson rs = ojson::array();
        for (const auto& r : rows)
            rs.push_back(ojson{{"degree", r.n},
                               {"graded", r.graded},
                               {"filtered", r.filtered},
                               {"classical_graded", r.cgraded},
                               {"classical_filtered", r.cfiltered},
                               {"match", r.ok}});
        j["rows"] = std::move(rs);
        j["all_match"] = all_match;
        j["aggregate"] = all_match ? "pass" : "fail";
        print_json(j);
    } else {
        std::printf("%s  hilbert  algebra=%s  D=%d\n", kTool, o.algebra.c_str(), D);
        std::printf("%6s %8s %9s %9s %10s %6s\n", "degree", "graded", "filtered",
                    "cl.grad", "cl.filt", "match");
        for (const auto& r : rows)
            std::printf("%6d %8lld %9lld %9lld %10lld %6s\n", r.n, r.graded, r.filtered,
                        r.cgraded, r.cfiltered, r.ok ? "yes" : "NO");
        std::printf("aggregate: %s\n", all_match ? "pass" : "fail");
    }
    return all_match ? 0 : 1;
}

// ---- moment -----------------------------------------------------------------

int cmd_moment(const Quiver& q, const Opts& o) {
    Presentation p = dq_presentation(q);
    std::vector<InverseSpec> specs = vertex_moment_inverse_specs(q);
    if (!specs.empty()) p = adjoin_inverses(p, specs);
    CheckStatus agg = CheckStatus::Pass;
    struct VertexOut {
        int v;
        std::optional<MomentMatrix> m;
        std::string unsupported;
    };
    std::vector<VertexOut> outs;
    for (size_t v = 0; v < q.vertices.size(); ++v) {
        try {
            outs.push_back({int(v), vertex_moment(p, int(v)), ""});
        } catch (const std::runtime_error& e) {
            outs.push_back({int(v), std::nullopt, e.what()});
            agg = CheckStatus::InconclusiveAtBound;
        }
    }
    if (o.json_out(true)) {
        ojson j = report_head("moment", q);
        j["config"] = ojson{{"deterministic", o.deterministic}};
        ojson vs = ojson::array();
        for (const auto& out : outs) {
            const Vertex& vx = q.vertices[size_t(out.v)];
            ojson vj{{"vertex", vx.id}, {"dim", vx.dim}};
            if (out.m) {
                ojson m = ojson::array();
                for (int i = 0; i < out.m->m.rows; ++i) {
                    ojson row = ojson::array();
                    for (int jj = 0; jj < out.m->m.cols; ++jj)
                        row.push_back(poly_json(out.m->m.at(i, jj), p.gens, q));
                    m.push_back(std::move(row));
                }
                vj["matrix"] = std::move(m);
            } else {
                vj["unsupported"] = out.unsupported;
            }
            vs.push_back(std::move(vj));
        }
        j["vertices"] = std::move(vs);
        j["aggregate"] = status_name(agg);
        print_json(j);
    } else {
        std::printf("%s  moment\n", kTool);
        for (const auto& out : outs) {
            const Vertex& vx = q.vertices[size_t(out.v)];
            if (!out.m) {
                std::printf("vertex %s: unsupported: %s\n", vx.id.c_str(),
                            out.unsupported.c_str());
                continue;
            }
            std::printf("vertex %s (%dx%d):\n", vx.id.c_str(), vx.dim, vx.dim);
            for (int i = 0; i < out.m->m.rows; ++i)
                for (int jj = 0; jj < out.m->m.cols; ++jj)
                    std::printf("  mu[%d,%d] = %s\n", i, jj,
                                render(out.m->m.at(i, jj), p.gens).c_str());
        }
        std::printf("aggregate: %s\n", status_name(agg));
    }
    return exit_code(agg);
}

// ---- degenerate -------------------------------------------------------------

int cmd_degenerate(const Quiver& q, const Opts& o) {
    std::vector<CheckReport> checks;
    auto t0 = std::chrono::steady_clock::now();
    checks.push_back(classical_limit_check(dq_presentation(q)));
    checks.push_back(hbar_moment_check(q, o.order));
    checks.back().elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count();
    CheckStatus agg = aggregate(checks);

    struct Entry {
        int i, j;
        std::string h2, classical;
    };
    struct VertexOut {
        int v;
        std::vector<Entry> entries;
        std::string unsupported;
    };
    std::vector<VertexOut> outs;
    for (size_t v = 0; v < q.vertices.size(); ++v) {
        if (q.loops_at(int(v)) > 0) {
            outs.push_back(
                {int(v), {}, "loop edges have no stated quasi-classical scaling"});
            continue;
        }
        HbarVertexExpansion ex = hbar_vertex_expansion(q, int(v), o.order);
        ClassicalMomentExpr cls = classical_moment_expr(q, int(v));
        VertexOut out{int(v), {}, ""};
        for (int i = 0; i < ex.dim; ++i)
            for (int j = 0; j < ex.dim; ++j)
                out.entries.push_back(
                    {i, j, classical_str(ex.entries[size_t(i)][size_t(j)].coeff(2)),
                     classical_str(cls.entries[size_t(i)][size_t(j)])});
        outs.push_back(std::move(out));
    }

    if (o.json_out(false)) {
        ojson j = report_head("degenerate", q);
        j["config"] = ojson{{"order", o.order}, {"deterministic", o.deterministic}};
        ojson cs = ojson::array();
        for (const auto& c : checks) cs.push_back(check_json(c, o.deterministic));
        j["checks"] = std::move(cs);
        ojson vs = ojson::array();
        for (const auto& out : outs) {
            const Vertex& vx = q.vertices[size_t(out.v)];
            ojson vj{{"vertex", vx.id}, {"dim", vx.dim}};
            if (!out.unsupported.empty()) {
                vj["unsupported"] = out.unsupported;
            } else {
                ojson es = ojson::array();
                for (const auto& en : out.entries)
                    es.push_back(ojson{{"i", en.i},
                                       {"j", en.j},
                                       {"h2", en.h2},
                                       {"classical", en.classical}});
                vj["entries"] = std::move(es);
            }
            vs.push_back(std::move(vj));
        }
        j["vertices"] = std::move(vs);
        j["aggregate"] = status_name(agg);
        print_json(j);
    } else {
        std::printf("%s  degenerate  order=%d\n", kTool, o.order);
        for (const auto& c : checks) std::printf("%s\n", check_line(c, o.deterministic).c_str());
        for (const auto& out : outs) {
            const Vertex& vx = q.vertices[size_t(out.v)];
            if (!out.unsupported.empty()) {
                std::printf("vertex %s: unsupported: %s\n", vx.id.c_str(),
                            out.unsupported.c_str());
                continue;
            }
            std::printf("vertex %s:\n", vx.id.c_str());
            for (const auto& en : out.entries) {
                std::printf("  [%d,%d] h^2       = %s\n", en.i, en.j, en.h2.c_str());
                std::printf("        classical = %s\n", en.classical.c_str());
            }
        }
        std::printf("aggregate: %s\n", status_name(agg));
    }
    return exit_code(agg);
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"exact symbolic workbench for q-deformed quiver algebras"};
    app.require_subcommand(1);
    Opts o;

    auto add_common = [&](CLI::App* c, bool with_algebra) {
        c->add_option("quiver", o.file, "quiver JSON file")->required();
        c->add_flag("--json", o.json, "emit JSON");
        c->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"json", "text"}));
        c->add_flag("--deterministic", o.deterministic,
                    "byte-stable output (no wall-clock fields)");
        if (with_algebra)
            c->add_option("--algebra", o.algebra, "which algebra to present")
                ->check(CLI::IsMember({"oq", "dq"}));
    };

    CLI::App* rel = app.add_subcommand("relations", "emit the defining relations");
    add_common(rel, true);

    CLI::App* ver = app.add_subcommand("verify", "run verification suites");
    add_common(ver, true);
    ver->add_option("--suite", o.suite, "suite to run")
        ->check(CLI::IsMember({"qybe", "hecke", "pbw", "reflection", "moment", "manyrelns",
                               "fourier", "equivariance", "all"}));
    ver->add_option("--max-degree", o.max_degree, "degree bound override");
    ver->add_option("--seed", o.seed, "append a randomized rank cross-check");

    CLI::App* fla = app.add_subcommand("flatness", "classical moment-map flatness report");
    add_common(fla, false);
    fla->add_option("--bound", o.bound, "decomposition search bound");

    CLI::App* hil = app.add_subcommand("hilbert", "filtered dimensions vs classical counts");
    add_common(hil, true);
    hil->add_option("--max-degree", o.max_degree, "top degree");

    CLI::App* mom = app.add_subcommand("moment", "emit the vertex moment matrices");
    add_common(mom, false);

    CLI::App* deg = app.add_subcommand("degenerate", "quasi-classical expansion per vertex");
    add_common(deg, false);
    deg->add_option("--order", o.order, "series order (2 or 3)")->check(CLI::Range(2, 3));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        Quiver q = Quiver::from_json_file(o.file);
        if (rel->parsed()) return cmd_relations(q, o);
        if (ver->parsed()) return cmd_verify(q, o);
        if (fla->parsed()) return cmd_flatness(q, o);
        if (hil->parsed()) return cmd_hilbert(q, o);
        if (mom->parsed()) return cmd_moment(q, o);
        if (deg->parsed()) return cmd_degenerate(q, o);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 3;
}

}  // namespace qmqv
