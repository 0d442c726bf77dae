#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ossfem/dofmap.hpp"
#include "ossfem/mesh.hpp"
#include "ossfem/quadrature.hpp"
#include "ossfem/sparse.hpp"

namespace ossfem {

/// How the orthogonal projection inside a stabilization term is realized.
/// `implicit_projection` keeps the consistent-mass projection as massless
/// auxiliary unknowns in the pencil (valid for P1 and P2, reproduces the
/// reference results digit for digit). `lumped_algebraic` expands the term
/// with a lumped-mass projection into a field-size matrix; P1 only.
enum class StabRealization { implicit_projection, lumped_algebraic };

/// A derived quantity g(x) (a gradient, divergence, symmetric gradient, or a
/// combination) sampled at the quadrature points of every element as a linear
/// operator on a source dof vector.
struct StabQuantity {
    int source_dofs = 0;                   // length of the vector g acts on
    int components = 1;                    // components of g
    std::vector<double> component_weight;  // L2 weights, e.g. {1,2,1} for sym tensors
};

/// Fills, for one element, the global source dof ids and the coefficient
/// array coeff[(q * components + c) * dofs.size() + local] such that
/// g_c(x_q) = sum_local coeff(...) * x[dofs[local]].
using ElementQuantityFn =
    std::function<void(int elem, std::vector<int>& dofs, std::vector<double>& coeff)>;

/// Element-loop byproducts of one stabilization term. `projection` is the
/// continuous equal-order target space of the projected quantity.
struct StabParts {
    CsrMatrix a0;            // src x src: sum_K alpha_K (g, g')_K
    CsrMatrix cross;         // proj x src: (psi_J, g), unweighted
    CsrMatrix cross_alpha;   // proj x src: sum_K alpha_K (psi_J, g)_K
    CsrMatrix mass;          // proj x proj consistent mass, unweighted
    CsrMatrix mass_alpha;    // proj x proj, alpha-weighted
    std::vector<double> mass_lumped;  // row sums of `mass`
    int proj_dofs = 0;
};

StabParts build_stab_parts(const Mesh& mesh, const StabQuantity& quantity,
                           const ElementQuantityFn& eval, const QuadratureRule& rule,
                           std::span<const double> elem_weights, int projection_order);

/// Orthogonal-subscale stabilization matrix
///   S = sum_K alpha_K (g, g')_K - (P g)^T M_alpha (P g')
/// with the lumped-mass projection P = M_L^{-1} C. Symmetric positive
/// semidefinite; annihilates quantities that lie in the projection space.
/// Valid for P1 projection spaces (the row-sum lumped mass of P2 has zero
/// vertex entries); P2 systems keep the projection implicit instead.
CsrMatrix weighted_orthogonal_stab(const Mesh& mesh, const StabQuantity& quantity,
                                   const ElementQuantityFn& eval, const QuadratureRule& rule,
                                   std::span<const double> elem_weights, int projection_order);

CsrMatrix lumped_orthogonal_stab(const StabParts& parts);

/// Lumped-mass L2 projector onto a continuous P1 space, exposed for the
/// projection invariants (idempotency, lumped orthogonality).
class LumpedProjector {
public:
    LumpedProjector(const Mesh& mesh, int components, int projection_order);

    int proj_dofs() const { return static_cast<int>(lumped_.size()); }
    const std::vector<double>& lumped_mass() const { return lumped_; }

    /// Project element-wise constant samples g[elem*components + c].
    std::vector<double> project_cellwise(const std::vector<double>& cell_values) const;
    /// Consistent pairing (psi_J, g) of the same samples.
    std::vector<double> pair_cellwise(const std::vector<double>& cell_values) const;
    /// Re-project a function already in the space (nodal pairing): identity.
    std::vector<double> project_space_function(const std::vector<double>& dofs) const;

private:
    const Mesh* mesh_;
    DofMap space_;
    int components_;
    int order_;
    std::vector<double> lumped_;
};

}  // namespace ossfem
