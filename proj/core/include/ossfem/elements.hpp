#pragma once

#include <array>

#include "ossfem/mesh.hpp"

namespace ossfem {

/// Values and reference-coordinate gradients of all Lagrange basis functions
/// of a P1 (3-node) or P2 (6-node) triangle at one reference point.
/// P2 local node order: vertices 0,1,2 then edge midpoints (0,1),(1,2),(2,0).
struct BasisEval {
    int node_count = 0;
    std::array<double, 6> value{};
    std::array<std::array<double, 2>, 6> grad{};
};

/// order is 1 or 2; (xi,eta) must lie in the reference triangle up to a
/// 1e-12 barycentric slack.
BasisEval reference_basis(int order, double xi, double eta);

inline int nodes_per_element(int order) { return order == 1 ? 3 : 6; }

/// Affine map data of one element: x = x0 + J * (xi,eta).
struct ElementJacobian {
    std::array<std::array<double, 2>, 2> j{};      // column k = edge vector k
    std::array<std::array<double, 2>, 2> inv_t{};  // J^{-T}, pushes gradients forward
    double det = 0.0;                              // = 2 * area > 0
};

ElementJacobian element_jacobian(const Mesh& mesh, int triangle_index);

}  // namespace ossfem
