#include "qmqv/degen.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace qmqv {

namespace {

std::string dims_params(const Quiver& q) {
    std::string s = "dims=(";
    bool first = true;
    for (const auto& v : q.vertices) {
        if (!first) s += ",";
        first = false;
        s += v.id + ":" + std::to_string(v.dim);
    }
    s += ")";
    return s;
}

void require_vertex(const Quiver& q, int v, const char* who) {
    if (v < 0 || size_t(v) >= q.vertices.size())
        throw std::invalid_argument(std::string(who) + ": vertex index out of range");
    if (q.loops_at(v) > 0)
        throw std::invalid_argument(std::string(who) +
                                    ": loop edges have no stated quasi-classical scaling");
}

using HMat = std::vector<std::vector<HbarSeries>>;

HMat hmat_id(int n, const HbarSeries& zero, const HbarSeries& one) {
    HMat m(size_t(n), std::vector<HbarSeries>(size_t(n), zero));
    for (int i = 0; i < n; ++i) m[size_t(i)][size_t(i)] = one;
    return m;
}

HMat hmat_mul(const HMat& x, const HMat& y, const HbarSeries& zero) {
    size_t n = x.size();
    HMat z(n, std::vector<HbarSeries>(n, zero));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) z[i][j] = z[i][j] + x[i][k] * y[k][j];
    return z;
}

}  // namespace

ClassicalMomentExpr classical_moment_expr(const Quiver& q, int v) {
    require_vertex(q, v, "classical_moment_expr");
    GenTable gens = base_gen_table(q);
    const int n = q.vertices[size_t(v)].dim;
    ClassicalMomentExpr out{q.vertices[size_t(v)].id, n, {}};
    out.entries.assign(size_t(n), std::vector<LambdaPoly>(size_t(n)));
    auto var = [&](GenKind k, int e, int up, int lo) {
        return LambdaPoly::var(gens.letter_str(uint8_t(gens.code_of({k, e, up, lo}))));
    };
    for (size_t e = 0; e < q.edges.size(); ++e) {
        const Edge& ed = q.edges[e];
        if (ed.tgt == v) {
            int m = q.vertices[size_t(ed.src)].dim;
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    for (int k = 1; k <= m; ++k)
                        out.entries[size_t(i - 1)][size_t(j - 1)] +=
                            var(GenKind::D, int(e), i, k) * var(GenKind::A, int(e), k, j);
        }
        if (ed.src == v) {
            int m = q.vertices[size_t(ed.tgt)].dim;
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    for (int k = 1; k <= m; ++k)
                        out.entries[size_t(i - 1)][size_t(j - 1)] -=
                            var(GenKind::A, int(e), i, k) * var(GenKind::D, int(e), k, j);
        }
    }
    return out;
}

HbarVertexExpansion hbar_vertex_expansion(const Quiver& q, int v, int order,
                                          const HbarSeries* t_override) {
    require_vertex(q, v, "hbar_vertex_expansion");
    if (order < 0) throw std::invalid_argument("hbar_vertex_expansion: negative order");
    const int ord = order + 1;
    GenTable gens = base_gen_table(q);
    const int n = q.vertices[size_t(v)].dim;
    const HbarSeries zero(ord), one(mpq_class(1), ord);
    HbarSeries t = t_override ? t_override->truncated(ord) : HbarSeries::h_power(1, ord);
    HbarSeries s = t * hbar_substitute(LaurentQ::q_power(1) - LaurentQ::q_power(-1),
                                       order);
    auto var = [&](GenKind k, int e, int up, int lo) {
        return HbarSeries::lambda(
            gens.letter_str(uint8_t(gens.code_of({k, e, up, lo}))), ord);
    };
    HMat mu = hmat_id(n, zero, one);
    for (size_t e = 0; e < q.edges.size(); ++e) {
        const Edge& ed = q.edges[e];
        if (ed.tgt == v) {
            int m = q.vertices[size_t(ed.src)].dim;
            HMat f = hmat_id(n, zero, one);
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    for (int k = 1; k <= m; ++k)
                        f[size_t(i - 1)][size_t(j - 1)] =
                            f[size_t(i - 1)][size_t(j - 1)] +
                            s * var(GenKind::D, int(e), i, k) * var(GenKind::A, int(e), k, j);
            mu = hmat_mul(mu, f, zero);
        }
        if (ed.src == v) {
            int m = q.vertices[size_t(ed.tgt)].dim;
            HMat x(size_t(n), std::vector<HbarSeries>(size_t(n), zero));
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    for (int k = 1; k <= m; ++k)
                        x[size_t(i - 1)][size_t(j - 1)] =
                            x[size_t(i - 1)][size_t(j - 1)] +
                            s * var(GenKind::A, int(e), i, k) * var(GenKind::D, int(e), k, j);
            // Neumann series for (I + x)^{-1}; x^m enters at h^{2m}
            HMat f = hmat_id(n, zero, one);
            HMat pw = x;
            for (int m2 = 1; 2 * m2 < ord; ++m2) {
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        f[size_t(i)][size_t(j)] =
                            (m2 % 2) ? f[size_t(i)][size_t(j)] - pw[size_t(i)][size_t(j)]
                                     : f[size_t(i)][size_t(j)] + pw[size_t(i)][size_t(j)];
                if (2 * (m2 + 1) < ord) pw = hmat_mul(pw, x, zero);
            }
            mu = hmat_mul(mu, f, zero);
        }
    }
    HbarSeries xi = HbarSeries::exp_h2_lambda(q.vertices[size_t(v)].id, ord);
    HbarVertexExpansion out{q.vertices[size_t(v)].id, n, {}};
    out.entries.assign(size_t(n), std::vector<HbarSeries>(size_t(n), zero));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.entries[size_t(i)][size_t(j)] =
                (i == j) ? mu[size_t(i)][size_t(j)] - xi : mu[size_t(i)][size_t(j)];
    return out;
}

CheckReport classical_limit_check(const Presentation& p) {
    const std::string name = "classical_limit";
    std::string params = dims_params(p.quiver);
    long checked = 0;
    for (size_t ri = 0; ri < p.relations.size(); ++ri) {
        const Relation& r = p.relations[ri];
        if (r.origin == RelOrigin::UnitRel) continue;  // keeps its constant by design
        std::string where = "relation " + std::to_string(ri);
        std::map<Word, mpq_class> spec;
        bool pole = false;
        for (const auto& [w, c] : r.poly.terms()) {
            auto val = c.eval(1);
            if (!val) {
                pole = true;
                break;
            }
            if (*val != 0) spec.emplace(w, *val);
        }
        if (pole) return make_fail(name, params, where + " has a coefficient pole at q=1");
        mpq_class gamma = 0;
        if (auto cit = spec.find(Word{}); cit != spec.end()) {
            gamma = cit->second;
            spec.erase(cit);
        }
        ++checked;
        if (spec.empty()) {
            if (gamma != 0)
                return make_fail(name, params, where + " specializes to a nonzero constant");
            continue;
        }
        if (spec.size() != 2)
            return make_fail(name, params, where + " does not specialize to a commutator");
        auto it = spec.begin();
        Word w1 = it->first;
        mpq_class c1 = it->second;
        ++it;
        Word rev(it->first.rbegin(), it->first.rend());
        if (w1 != rev || c1 != -it->second)
            return make_fail(name, params, where + " does not specialize to a commutator");
        mpq_class expected = 0;
        if (r.origin == RelOrigin::SameEdgeCross && !r.loop_cross) {
            // Weyl constant: -c when the derivative and coordinate indices
            // pair into deltas, with c the coefficient of the d-first word
            bool d_first = p.gens.gen(uint8_t(w1[0])).kind == GenKind::D;
            const Word& wd = d_first ? w1 : it->first;
            mpq_class cd = d_first ? c1 : it->second;
            GenId dg = p.gens.gen(uint8_t(wd[0]));
            GenId ag = p.gens.gen(uint8_t(wd[1]));
            if (dg.up == ag.lo && ag.up == dg.lo) expected = -cd;
        }
        if (gamma != expected)
            return make_fail(name, params, where + " carries the wrong constant at q=1");
    }
    return make_pass(name, params, "relations=" + std::to_string(checked));
}

CheckReport hbar_moment_check(const Quiver& q, int order) {
    const std::string name = "hbar_moment";
    std::string params = dims_params(q) + "; order=" + std::to_string(order);
    if (order < 2 || order > 3)
        throw std::invalid_argument("hbar_moment_check: order must be 2 or 3");
    for (size_t e = 0; e < q.edges.size(); ++e)
        if (q.edge_is_loop(int(e)))
            return {name, params, CheckStatus::InconclusiveAtBound,
                    "unsupported: loop edges have no stated quasi-classical scaling", 0};
    long components = 0;
    const LambdaPoly two(mpq_class(2));
    for (size_t v = 0; v < q.vertices.size(); ++v) {
        HbarVertexExpansion ex = hbar_vertex_expansion(q, int(v), order);
        ClassicalMomentExpr cls = classical_moment_expr(q, int(v));
        LambdaPoly lam = LambdaPoly::var(q.vertices[v].id);
        for (int i = 0; i < ex.dim; ++i)
            for (int j = 0; j < ex.dim; ++j) {
                const HbarSeries& s = ex.entries[size_t(i)][size_t(j)];
                std::string where = "vertex " + ex.vertex + ", entry [" +
                                    std::to_string(i) + "," + std::to_string(j) + "]";
                if (!s.coeff(0).is_zero() || !s.coeff(1).is_zero())
                    return make_fail(name, params, where + ": nonzero coefficient below h^2");
                LambdaPoly want = two * cls.entries[size_t(i)][size_t(j)];
                if (i == j) want -= lam;
                if (s.coeff(2) != want)
                    return make_fail(name, params,
                                     where +
                                         ": h^2 coefficient differs from the classical "
                                         "moment expression");
                for (int k = 3; k <= order; ++k)
                    if (!s.coeff(k).is_zero())
                        return make_fail(name, params,
                                         where + ": nonzero h^" + std::to_string(k) +
                                             " coefficient");
                ++components;
            }
    }
    return make_pass(name, params, "components=" + std::to_string(components));
}

std::string classical_str(const LambdaPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        mpq_class a = c;
        if (first) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        std::string vars;
        for (const auto& [name, k] : m) {
            if (!vars.empty()) vars += "*";
            vars += (name.find('[') == std::string::npos) ? "lambda_" + name : name;
            if (k > 1) vars += "^" + std::to_string(k);
        }
        if (vars.empty())
            out += a.get_str();
        else if (a == 1)
            out += vars;
        else
            out += a.get_str() + "*" + vars;
    }
    return out;
}

}  // namespace qmqv
