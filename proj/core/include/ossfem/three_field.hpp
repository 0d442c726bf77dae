#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ossfem/dofmap.hpp"
#include "ossfem/eigsolve.hpp"
#include "ossfem/mesh.hpp"
#include "ossfem/sparse.hpp"
#include "ossfem/stabilization.hpp"
#include "ossfem/two_field.hpp"

namespace ossfem {

/// alpha_3 = 2*mu*c3, alpha_4 = 2*mu*c4, alpha_5K = c5*h_K^2/mu.
struct ThreeFieldParams {
    double mu = 1.0;
    double c3 = 1.0;
    double c4 = 0.1;
    double c5 = 0.25;
};

/// Stress-velocity-pressure pencil. Dofs are ordered velocity (2 components),
/// pressure, stress (3 components s11, s12, s22 with the engineering inner
/// product weighting s12 twice); P2 systems append massless auxiliary
/// projection fields. Stress carries no essential boundary conditions.
struct ThreeFieldSystem {
    CsrMatrix a;
    CsrMatrix m;
    DofMap dof_map;
    int order = 1;
    ThreeFieldParams params;
};

ThreeFieldSystem assemble_three_field(const Mesh& mesh, int order, const ThreeFieldParams& params,
                                      StabRealization realization = StabRealization::implicit_projection);

struct VelocityPressureStress {
    std::vector<double> velocity;
    std::vector<double> pressure;
    std::vector<double> stress;  // interleaved s11, s12, s22
};

struct ThreeFieldEigs {
    EigenSolution solution;
    std::vector<VelocityPressureStress> fields;
};

ThreeFieldEigs solve_three_field_eigs(const Mesh& mesh, int order, const ThreeFieldParams& params,
                                      int k, double tol = 1e-10);

VelocityPressureStress solve_three_field_source(const Mesh& mesh, int order,
                                                const ThreeFieldParams& params, const VectorLoad& f);

}  // namespace ossfem
