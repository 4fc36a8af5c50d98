#pragma once
// Quivers with dimension vectors, their doubles, and the root-theoretic
// combinatorics used by the flatness checks.

#include <stdexcept>
#include <string>
#include <vector>

namespace qmqv {

struct QuiverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Vertex {
    std::string id;
    int dim = 0;
};

struct Edge {
    std::string id;
    int src = -1;  // vertex index
    int tgt = -1;
};

struct Quiver {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    int vertex_index(const std::string& id) const;  // -1 when absent
    std::vector<int> dims() const;
    bool edge_is_loop(int e) const { return edges[size_t(e)].src == edges[size_t(e)].tgt; }
    int loops_at(int v) const;

    static Quiver from_json_text(const std::string& text, const std::string& where = "quiver");
    static Quiver from_json_file(const std::string& path);
};

// Every edge acquires a reversed partner; originals first, then partners
// in the same base order.
struct DoubledEdge {
    int base;      // index into Quiver::edges
    bool adjoint;  // true for the reversed copy
    int src, tgt;
};

std::vector<DoubledEdge> doubled_edges(const Quiver& q);

using DimVec = std::vector<int>;

int p_value(const Quiver& q, const DimVec& d);
std::vector<std::vector<int>> cartan_matrix(const Quiver& q);
bool is_positive_root(const Quiver& q, const DimVec& d);

struct Decomposition {
    std::vector<DimVec> parts;  // each a positive root, nonincreasing order
    int p_sum = 0;
};

struct FlatnessReport {
    DimVec d;
    int p_of_d = 0;
    bool d_is_root = false;
    int component_bound = 0;
    bool exhaustive = true;       // false when d exceeds the bound; nothing decided
    bool condition_holds = true;  // no decomposition with p_sum > p(d)
    bool strict = true;           // every nontrivial decomposition has p_sum < p(d)
    std::vector<Decomposition> equalities;
    std::vector<Decomposition> violations;
};

FlatnessReport flatness_report(const Quiver& q, const DimVec& d, int component_bound = 6);

}  // namespace qmqv
