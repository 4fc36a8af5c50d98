#pragma once
// Classical and quasi-classical limits: the q=1 specialization of the
// defining relations, and the h-expansion of the vertex maps at q = e^h,
// t = h, against the classical moment expression.

#include "qmqv/coeff.hpp"
#include "qmqv/relations.hpp"
#include "qmqv/report.hpp"

#include <string>
#include <vector>

namespace qmqv {

// Grid of commutative polynomials in the classical generators: entry (i,j)
// sums (d a)^i_j over edges into the vertex and subtracts (a d)^i_j over
// edges out of it.
struct ClassicalMomentExpr {
    std::string vertex;
    int dim = 0;
    std::vector<std::vector<LambdaPoly>> entries;
};

// throws on loops at the vertex
ClassicalMomentExpr classical_moment_expr(const Quiver& q, int v);

// mu_v(l^i_j) - xi_v delta^i_j at q = e^h with t = h and xi_v = e^{h^2 L_v},
// coefficients kept through h^order.  A t_override replaces the h scaling
// of t and must carry at least order+1 coefficients.
struct HbarVertexExpansion {
    std::string vertex;
    int dim = 0;
    std::vector<std::vector<HbarSeries>> entries;
};

HbarVertexExpansion hbar_vertex_expansion(const Quiver& q, int v, int order,
                                          const HbarSeries* t_override = nullptr);

// Every relation specializes at q=1 to a scaled commutator; the constant
// term is the Weyl delta exactly on the same-edge cross relations of a
// non-loop edge.  Unit relations of adjoined inverses are exempt.
CheckReport classical_limit_check(const Presentation& p);

// The h^0 and h^1 coefficients of mu_v - xi_v vanish and the h^2
// coefficient is twice the classical moment expression with lambda_v on the
// diagonal; order 2 or 3 (coefficients past h^2 vanish through h^3).
// Quivers with loop edges are reported unsupported.
CheckReport hbar_moment_check(const Quiver& q, int order = 2);

// Renders a polynomial in classical generators with bare variable names and
// vertex parameters as lambda_<vertex>.
std::string classical_str(const LambdaPoly& p);

}  // namespace qmqv
