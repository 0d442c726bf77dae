#pragma once

// Shared element-loop helpers for the Stokes assemblies and the scalar
// oracle problems. Internal to core/src.

#include <array>
#include <vector>

#include "ossfem/dofmap.hpp"
#include "ossfem/elements.hpp"
#include "ossfem/mesh.hpp"
#include "ossfem/quadrature.hpp"
#include "ossfem/sparse.hpp"
#include "ossfem/stabilization.hpp"

namespace ossfem::detail {

/// Reference basis values/gradients at every quadrature point of a rule.
struct BasisCache {
    std::vector<BasisEval> at;
    int node_count = 0;

    BasisCache(int order, const QuadratureRule& rule) {
        node_count = nodes_per_element(order);
        at.reserve(static_cast<size_t>(rule.size()));
        for (int q = 0; q < rule.size(); ++q)
            at.push_back(reference_basis(order, rule.points[q][0], rule.points[q][1]));
    }
};

/// Physical gradients of all local basis functions at all quadrature points:
/// grad[q][node][xy].
inline void physical_gradients(const BasisCache& cache, const ElementJacobian& jac,
                               std::vector<std::array<std::array<double, 2>, 6>>& grad) {
    grad.resize(cache.at.size());
    for (size_t q = 0; q < cache.at.size(); ++q) {
        for (int i = 0; i < cache.node_count; ++i) {
            const auto& g = cache.at[q].grad[i];
            grad[q][i][0] = jac.inv_t[0][0] * g[0] + jac.inv_t[0][1] * g[1];
            grad[q][i][1] = jac.inv_t[1][0] * g[0] + jac.inv_t[1][1] * g[1];
        }
    }
}

/// Physical coordinates of a reference point in an element.
inline std::array<double, 2> map_point(const Mesh& mesh, int e, double xi, double eta) {
    const auto& t = mesh.triangles[e];
    const Point2& a = mesh.vertices[t.v[0]];
    const Point2& b = mesh.vertices[t.v[1]];
    const Point2& c = mesh.vertices[t.v[2]];
    return {a.x + (b.x - a.x) * xi + (c.x - a.x) * eta, a.y + (b.y - a.y) * xi + (c.y - a.y) * eta};
}

/// Drops triplets touching eliminated dofs and renumbers to reduced indices.
inline void append_reduced(const DofMap& dm, int row, int col, double v, std::vector<Triplet>& out) {
    const int r = dm.full_to_reduced(row);
    if (r < 0) return;
    const int c = dm.full_to_reduced(col);
    if (c < 0) return;
    out.push_back({r, c, v});
}

/// Merges a full-numbering CSR block into a reduced triplet stream.
inline void append_reduced(const DofMap& dm, const CsrMatrix& block, std::vector<Triplet>& out) {
    for (int r = 0; r < block.rows; ++r)
        for (int k = block.row_ptr[r]; k < block.row_ptr[r + 1]; ++k)
            append_reduced(dm, r, block.col_idx[k], block.values[k], out);
}

/// grad of a scalar field (2 components) as a stabilization quantity.
ElementQuantityFn make_gradient_quantity(const Mesh& mesh, const DofMap& dm, int field,
                                         const QuadratureRule& rule, int order);
/// div of a vector field (1 component).
ElementQuantityFn make_divergence_quantity(const Mesh& mesh, const DofMap& dm, int field,
                                           const QuadratureRule& rule, int order);

/// Adds one orthogonal-subscale term in the configured realization.
void append_stab_term(const Mesh& mesh, const DofMap& dm, const StabQuantity& quantity,
                      const ElementQuantityFn& eval, const QuadratureRule& rule,
                      std::span<const double> weights, int order, StabRealization realization,
                      const char* aux_field_name, std::vector<Triplet>& out);

/// Places the implicit-projection blocks of one stabilization term into the
/// reduced system: source rows gain a0 and -cross_alpha^T against the
/// auxiliary field, auxiliary rows gain the consistent projection mass and
/// -cross against the source dofs.
inline void append_implicit_stab(const DofMap& dm, const StabParts& parts, int aux_field,
                                 std::vector<Triplet>& out) {
    append_reduced(dm, parts.a0, out);
    const int aux_off = dm.field_offset(aux_field);
    for (int j = 0; j < parts.cross_alpha.rows; ++j)
        for (int k = parts.cross_alpha.row_ptr[j]; k < parts.cross_alpha.row_ptr[j + 1]; ++k)
            append_reduced(dm, parts.cross_alpha.col_idx[k], aux_off + j, -parts.cross_alpha.values[k],
                           out);
    for (int j = 0; j < parts.cross.rows; ++j)
        for (int k = parts.cross.row_ptr[j]; k < parts.cross.row_ptr[j + 1]; ++k)
            append_reduced(dm, aux_off + j, parts.cross.col_idx[k], -parts.cross.values[k], out);
    for (int j = 0; j < parts.mass.rows; ++j)
        for (int k = parts.mass.row_ptr[j]; k < parts.mass.row_ptr[j + 1]; ++k)
            append_reduced(dm, aux_off + j, aux_off + parts.mass.col_idx[k], parts.mass.values[k], out);
}

}  // namespace ossfem::detail
