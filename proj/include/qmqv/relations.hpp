#pragma once

#include "qmqv/freealg.hpp"
#include "qmqv/quiver.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace qmqv {

// A directed edge of the doubled quiver: the base edge itself, or its
// reversed adjoint.  src/tgt are already oriented accordingly.
struct VirtualEdge {
    int edge = -1;
    bool adjoint = false;
    int src = -1;
    int tgt = -1;

    bool operator==(const VirtualEdge&) const = default;
};

// Total order on the doubled edge set, produced by a depth-first walk of the
// underlying undirected graph: an edge is emitted when first crossed, its
// adjoint when the walk retreats back over it.  Loops and cycle-closing
// edges emit base and adjoint back to back.  Roots are taken in vertex
// order, neighbours in edge order, so the result is deterministic.
//
// This is the ordering under which the distinct-edge cross relations of all
// multi-edge algebras here take their standard displayed form; contiguous
// edges nest while edges meeting head-to-head stay sequential.
std::vector<VirtualEdge> bracket_order(const Quiver& q);

enum class RelOrigin : std::uint8_t {
    SameEdgeAA,    // coordinate generators of one edge among themselves
    SameEdgeDD,    // derivative generators of one edge among themselves
    SameEdgeCross, // coordinate vs derivative generators of one edge
    CrossPair,     // generators of two distinct edges
    UnitRel,       // x * x^{-1} - 1 for an adjoined inverse
};

struct Relation {
    NCPoly poly;
    RelOrigin origin = RelOrigin::CrossPair;
    int edge = -1;  // owning edge, or first edge of a cross pair
    int edge2 = -1; // second edge of a cross pair
    bool loop_cross = false; // same-edge cross sits on a loop
};

// A generator of the free algebra together with its inverse relations.
struct InversePair {
    std::uint8_t inv_code = 0;
    NCPoly target; // target * inv - 1 and inv * target - 1 are relations
};

struct Presentation {
    Quiver quiver;
    GenTable gens;
    std::vector<Relation> relations;
    bool has_adjoints = false;
    std::vector<InversePair> inverses;
};

// Coordinate algebra of the quiver: one matrix of generators per edge.
Presentation oq_presentation(const Quiver& q);

// Differential-operator algebra: coordinate plus derivative generators.
Presentation dq_presentation(const Quiver& q);

// ---- two-leg tensor calculus -------------------------------------------
//
// Relations are stated as products of operators on a pair of tensor legs.
// A factor either acts on one leg by a (generator-valued) matrix, padded by
// an identity on the other leg, or acts on both legs at once by a scalar
// matrix of size (l1*l2) x (l1*l2).  Leg dimensions flow right to left:
// a leg-1 factor of shape r x c requires the current leg-1 dimension to be
// c and changes it to r, and likewise for leg 2.

struct Leg1 {
    const Mat<NCPoly>* m;
};
struct Leg2 {
    const Mat<NCPoly>* m;
};
struct Flat {
    const Mat<RatQ>* m;
};
using LegFactor = std::variant<Leg1, Leg2, Flat>;

Mat<NCPoly> lift_mat(const Mat<RatQ>& m);

// Evaluates the written product of factors on initial (rightmost) leg
// dimensions (leg1_in, leg2_in).  Throws on any shape mismatch.
Mat<NCPoly> eval_legs(const std::vector<LegFactor>& factors, int leg1_in,
                      int leg2_in);

// Matrix of generators attached to a virtual edge: rows are indexed by the
// source dimension, columns by the target dimension; adjoint edges carry
// the derivative generators.
Mat<NCPoly> virtual_edge_matrix(const GenTable& gens, const Quiver& q,
                                const VirtualEdge& ve);

// ---- localization -------------------------------------------------------

struct InverseSpec {
    GenKind kind = GenKind::AInv; // one of AInv, DInv, GaInv, GbInv
    int edge = -1;
};

// Extends the presentation with formal inverses: for each spec, a new
// generator u with relations t*u - 1 and u*t - 1, where t is the element
// being inverted (the single generator for AInv/DInv, the group-like
// 1 + (q - q^{-1}) d a for GaInv, 1 + (q - q^{-1}) a d for GbInv).
// Only 1x1 edges are supported.  Existing generator
// codes are preserved; the new generators sort after all existing ones.
Presentation adjoin_inverses(const Presentation& p,
                             const std::vector<InverseSpec>& specs);

// Leading-coefficient-1 copy, for comparisons up to scalar.
NCPoly monic(const NCPoly& p);

} // namespace qmqv
