#pragma once
// Quantum moment maps: per-edge matrices, vertex-level products over the
// incident edges, characters of the reflection-equation algebra, and the
// moment ideal they generate.

#include <map>
#include <string>
#include <vector>

#include "qmqv/relations.hpp"
#include "qmqv/report.hpp"

namespace qmqv {

// Image of the reflection-equation generators l^i_j at one vertex:
// entry (i-1, j-1) is the image of l^{i}_{j}.
struct MomentMatrix {
    int vertex = -1;
    Mat<NCPoly> m;
};

// One nonzero scalar per vertex; vertices not listed default to 1.
struct CharacterSpec {
    std::map<std::string, RatQ> values;

    RatQ at(const std::string& id) const;  // throws on an explicit zero
};

// Target-side edge map at v = tgt(e): M = I + t(q - q^{-1}) D A.
MomentMatrix edge_moment_beta(const Presentation& p, int e, const RatQ& t = RatQ(1));

// Source-side companion at v = src(e): Mbar = I + t(q - q^{-1}) A D.
// The moment map itself is the inverse of Mbar; it is materialized only
// where an inverse generator exists (1x1 edges).
MomentMatrix edge_moment_alpha_bar(const Presentation& p, int e, const RatQ& t = RatQ(1));

// Loop edge map at d = 1 over a localized presentation: the single entry
// is d a^{-1} d^{-1} a.  Larger loop dimensions have no entrywise inverse
// formula and are refused.
MomentMatrix edge_moment_loop(const Presentation& p, int e);

// Ordered product of the per-edge maps over all edges incident to v, in
// global edge order.  Source-side factors need t = 1 and a GbInv generator
// (or t = 0, which degenerates every factor to the identity).
MomentMatrix vertex_moment(const Presentation& p, int v, const RatQ& t = RatQ(1));

// The inverse generators vertex_moment needs on this quiver, in adjoinable
// (increasing) order: AInv/DInv per 1x1 loop, GbInv per 1x1 non-loop edge.
std::vector<InverseSpec> vertex_moment_inverse_specs(const Quiver& q);

// Per vertex, the d_v^2 elements mu_v(l^i_j) - xi_v delta^i_j, in vertex
// order, row-major.
std::vector<NCPoly> moment_ideal_generators(const Presentation& p, const CharacterSpec& ch,
                                            const RatQ& t = RatQ(1));

// Substitutes l^i_j -> rho delta^i_j (rho a formal scalar) into both index
// contractions of the reflection equation and compares them exactly.
CheckReport character_check(int N);

}  // namespace qmqv
