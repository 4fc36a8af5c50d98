#include "qmqv/quiver.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qmqv {

using nlohmann::json;

int Quiver::vertex_index(const std::string& id) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id) return int(i);
    return -1;
}

std::vector<int> Quiver::dims() const {
    std::vector<int> d;
    d.reserve(vertices.size());
    for (const auto& v : vertices) d.push_back(v.dim);
    return d;
}

int Quiver::loops_at(int v) const {
    int n = 0;
    for (const auto& e : edges)
        if (e.src == v && e.tgt == v) ++n;
    return n;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
    throw QuiverError(where + ": " + msg);
}

int require_positive_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    long long v = j.get<long long>();
    if (v <= 0 || v > 1000000) fail(where, "must be a positive integer (got " + j.dump() + ")");
    return int(v);
}

std::string require_string(const json& j, const std::string& where) {
    if (!j.is_string() || j.get<std::string>().empty()) fail(where, "expected a nonempty string");
    return j.get<std::string>();
}

const json& require_key(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing \"") + key + "\"");
    return *it;
}

}  // namespace

Quiver Quiver::from_json_text(const std::string& text, const std::string& where) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(where, std::string("invalid JSON: ") + e.what());
    }
    Quiver q;
    const json& jv = require_key(j, "vertices", where);
    if (!jv.is_array() || jv.empty()) fail(where + ".vertices", "expected a nonempty array");
    for (size_t i = 0; i < jv.size(); ++i) {
        std::string loc = where + ".vertices[" + std::to_string(i) + "]";
        Vertex v;
        v.id = require_string(require_key(jv[i], "id", loc), loc + ".id");
        v.dim = require_positive_int(require_key(jv[i], "dim", loc), loc + ".dim");
        if (q.vertex_index(v.id) >= 0) fail(loc, "duplicate vertex id \"" + v.id + "\"");
        q.vertices.push_back(std::move(v));
    }
    const json& je = require_key(j, "edges", where);
    if (!je.is_array()) fail(where + ".edges", "expected an array");
    for (size_t i = 0; i < je.size(); ++i) {
        std::string loc = where + ".edges[" + std::to_string(i) + "]";
        Edge e;
        e.id = require_string(require_key(je[i], "id", loc), loc + ".id");
        for (const auto& prev : q.edges)
            if (prev.id == e.id) fail(loc, "duplicate edge id \"" + e.id + "\"");
        std::string src = require_string(require_key(je[i], "src", loc), loc + ".src");
        std::string tgt = require_string(require_key(je[i], "tgt", loc), loc + ".tgt");
        e.src = q.vertex_index(src);
        e.tgt = q.vertex_index(tgt);
        if (e.src < 0) fail(loc + ".src", "unknown vertex \"" + src + "\"");
        if (e.tgt < 0) fail(loc + ".tgt", "unknown vertex \"" + tgt + "\"");
        q.edges.push_back(std::move(e));
    }
    return q;
}

Quiver Quiver::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw QuiverError(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), path);
}

std::vector<DoubledEdge> doubled_edges(const Quiver& q) {
    std::vector<DoubledEdge> out;
    out.reserve(2 * q.edges.size());
    for (size_t e = 0; e < q.edges.size(); ++e)
        out.push_back({int(e), false, q.edges[e].src, q.edges[e].tgt});
    for (size_t e = 0; e < q.edges.size(); ++e)
        out.push_back({int(e), true, q.edges[e].tgt, q.edges[e].src});
    return out;
}

int p_value(const Quiver& q, const DimVec& d) {
    if (d.size() != q.vertices.size()) throw std::invalid_argument("dimension vector length");
    int p = 1;
    for (const auto& e : q.edges) p += d[size_t(e.src)] * d[size_t(e.tgt)];
    for (int dv : d) p -= dv * dv;
    return p;
}

std::vector<std::vector<int>> cartan_matrix(const Quiver& q) {
    size_t n = q.vertices.size();
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (size_t v = 0; v < n; ++v) c[v][v] = 2;
    for (const auto& e : q.edges) {
        if (e.src == e.tgt) {
            c[size_t(e.src)][size_t(e.src)] -= 2;
        } else {
            c[size_t(e.src)][size_t(e.tgt)] -= 1;
            c[size_t(e.tgt)][size_t(e.src)] -= 1;
        }
    }
    return c;
}

namespace {

bool support_connected(const Quiver& q, const DimVec& d) {
    size_t n = q.vertices.size();
    int start = -1;
    for (size_t v = 0; v < n; ++v)
        if (d[v] > 0) {
            start = int(v);
            break;
        }
    if (start < 0) return false;
    std::vector<bool> seen(n, false);
    std::vector<int> stack = {start};
    seen[size_t(start)] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& e : q.edges) {
            int u = -1;
            if (e.src == v) u = e.tgt;
            else if (e.tgt == v) u = e.src;
            if (u >= 0 && d[size_t(u)] > 0 && !seen[size_t(u)]) {
                seen[size_t(u)] = true;
                stack.push_back(u);
            }
        }
    }
    for (size_t v = 0; v < n; ++v)
        if (d[v] > 0 && !seen[v]) return false;
    return true;
}

}  // namespace

bool is_positive_root(const Quiver& q, const DimVec& d0) {
    size_t n = q.vertices.size();
    if (d0.size() != n) throw std::invalid_argument("dimension vector length");
    DimVec d = d0;
    bool nonzero = false;
    for (int x : d) {
        if (x < 0) return false;
        nonzero = nonzero || x != 0;
    }
    if (!nonzero) return false;

    auto c = cartan_matrix(q);
    std::vector<bool> has_loop(n, false);
    for (const auto& e : q.edges)
        if (e.src == e.tgt) has_loop[size_t(e.src)] = true;

    while (true) {
        // a unit vector at a loop-free vertex is a simple root
        int unit_at = -1, total = 0;
        for (size_t v = 0; v < n; ++v) {
            total += d[v];
            if (d[v] > 0) unit_at = int(v);
        }
        if (total == 1 && !has_loop[size_t(unit_at)]) return true;

        int pick = -1, pairing = 0;
        for (size_t v = 0; v < n && pick < 0; ++v) {
            if (has_loop[v]) continue;
            int p = 0;
            for (size_t u = 0; u < n; ++u) p += c[v][u] * d[u];
            if (p > 0) {
                pick = int(v);
                pairing = p;
            }
        }
        if (pick < 0) {
            // fundamental region: pairings are nonpositive everywhere
            return support_connected(q, d);
        }
        d[size_t(pick)] -= pairing;
        if (d[size_t(pick)] < 0) return false;
    }
}

namespace {

void enumerate_decompositions(const std::vector<DimVec>& roots, size_t from, DimVec& rem,
                              std::vector<DimVec>& parts, std::vector<Decomposition>& out,
                              const Quiver& q, long& budget) {
    bool done = std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; });
    if (done) {
        if (parts.size() >= 2) {
            Decomposition dec;
            dec.parts = parts;
            for (const auto& r : parts) dec.p_sum += p_value(q, r);
            out.push_back(std::move(dec));
        }
        return;
    }
    if (--budget <= 0) throw std::runtime_error("decomposition enumeration budget exhausted");
    for (size_t i = from; i < roots.size(); ++i) {
        const DimVec& r = roots[i];
        bool fits = true;
        for (size_t v = 0; v < rem.size(); ++v)
            if (r[v] > rem[v]) {
                fits = false;
                break;
            }
        if (!fits) continue;
        for (size_t v = 0; v < rem.size(); ++v) rem[v] -= r[v];
        parts.push_back(r);
        enumerate_decompositions(roots, i, rem, parts, out, q, budget);
        parts.pop_back();
        for (size_t v = 0; v < rem.size(); ++v) rem[v] += r[v];
    }
}

}  // namespace

FlatnessReport flatness_report(const Quiver& q, const DimVec& d, int component_bound) {
    FlatnessReport rep;
    rep.d = d;
    rep.p_of_d = p_value(q, d);
    rep.d_is_root = is_positive_root(q, d);
    rep.component_bound = component_bound;
    for (int x : d)
        if (x > component_bound) {
            rep.exhaustive = false;
            return rep;
        }

    // all nonzero vectors below d, filtered to positive roots
    std::vector<DimVec> roots;
    DimVec r(d.size(), 0);
    while (true) {
        size_t v = 0;
        while (v < d.size() && r[v] == d[v]) {
            r[v] = 0;
            ++v;
        }
        if (v == d.size()) break;
        ++r[v];
        if (is_positive_root(q, r)) roots.push_back(r);
    }

    std::vector<Decomposition> decomps;
    DimVec rem = d;
    std::vector<DimVec> parts;
    long budget = 2000000;
    try {
        enumerate_decompositions(roots, 0, rem, parts, decomps, q, budget);
    } catch (const std::runtime_error&) {
        rep.exhaustive = false;
        return rep;
    }

    for (auto& dec : decomps) {
        if (dec.p_sum > rep.p_of_d) {
            rep.violations.push_back(dec);
            rep.condition_holds = false;
            rep.strict = false;
        } else if (dec.p_sum == rep.p_of_d) {
            rep.equalities.push_back(dec);
            rep.strict = false;
        }
    }
    return rep;
}

}  // namespace qmqv
