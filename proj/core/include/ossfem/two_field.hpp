#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ossfem/dofmap.hpp"
#include "ossfem/eigsolve.hpp"
#include "ossfem/mesh.hpp"
#include "ossfem/sparse.hpp"
#include "ossfem/stabilization.hpp"

namespace ossfem {

/// Viscosity and the two stabilization constants; alpha_1K = c1*h_K^2/mu per
/// element and alpha_2 = c2*mu.
struct TwoFieldParams {
    double mu = 1.0;
    double c1 = 0.25;
    double c2 = 0.1;
};

/// Assembled velocity-pressure pencil. `a` carries the Galerkin operator plus
/// the orthogonal-subscale terms, `m` the velocity mass (zero pressure
/// block); both are reduced (Dirichlet velocity dofs eliminated, one pressure
/// dof pinned to zero). P2 systems with active stabilization keep the
/// projections implicit, so the dof map then carries massless auxiliary
/// projection fields after velocity and pressure.
struct TwoFieldSystem {
    CsrMatrix a;
    CsrMatrix m;
    DofMap dof_map;
    int order = 1;
    TwoFieldParams params;
};

TwoFieldSystem assemble_two_field(const Mesh& mesh, int order, const TwoFieldParams& params,
                                  StabRealization realization = StabRealization::implicit_projection);

struct VelocityPressure {
    std::vector<double> velocity;  // interleaved components, full length
    std::vector<double> pressure;  // full length
};

struct TwoFieldEigs {
    EigenSolution solution;  // vectors over reduced dofs
    std::vector<VelocityPressure> fields;
};

TwoFieldEigs solve_two_field_eigs(const Mesh& mesh, int order, const TwoFieldParams& params, int k,
                                  double tol = 1e-10);

using VectorLoad = std::function<std::array<double, 2>(double x, double y)>;

VelocityPressure solve_two_field_source(const Mesh& mesh, int order, const TwoFieldParams& params,
                                        const VectorLoad& f);

}  // namespace ossfem
