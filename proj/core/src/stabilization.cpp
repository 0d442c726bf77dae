#include "ossfem/stabilization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ossfem/elements.hpp"

namespace ossfem {

StabParts build_stab_parts(const Mesh& mesh, const StabQuantity& quantity,
                           const ElementQuantityFn& eval, const QuadratureRule& rule,
                           std::span<const double> elem_weights, int projection_order) {
    if (elem_weights.size() != static_cast<size_t>(mesh.triangle_count()))
        throw std::invalid_argument("build_stab_parts: one weight per element required");
    if (quantity.component_weight.size() != static_cast<size_t>(quantity.components))
        throw std::invalid_argument("build_stab_parts: component_weight size mismatch");

    DofMap space = build_dof_map(mesh, {FieldSpec{"proj", quantity.components, projection_order}});
    const int comps = quantity.components;
    const int proj_nodes = nodes_per_element(projection_order);
    const int proj_dofs = space.total_dofs();

    // Projection basis values at the quadrature points.
    std::vector<std::array<double, 6>> psi(static_cast<size_t>(rule.size()));
    for (int q = 0; q < rule.size(); ++q)
        psi[q] = reference_basis(projection_order, rule.points[q][0], rule.points[q][1]).value;

    std::vector<Triplet> t_a0, t_cross, t_cross_a, t_mass, t_mass_a;
    std::vector<int> dofs;
    std::vector<double> coeff;
    std::vector<double> loc_a0, loc_cross;
    std::vector<double> loc_mass(static_cast<size_t>(proj_nodes) * proj_nodes);

    for (int e = 0; e < mesh.triangle_count(); ++e) {
        const double det = element_jacobian(mesh, e).det;
        const double alpha = elem_weights[e];
        eval(e, dofs, coeff);
        const int nloc = static_cast<int>(dofs.size());

        loc_a0.assign(static_cast<size_t>(nloc) * nloc, 0.0);
        loc_cross.assign(static_cast<size_t>(comps) * proj_nodes * nloc, 0.0);
        std::fill(loc_mass.begin(), loc_mass.end(), 0.0);

        for (int q = 0; q < rule.size(); ++q) {
            const double w = rule.weights[q] * det;
            for (int c = 0; c < comps; ++c) {
                const double wc = w * quantity.component_weight[c];
                const double* gq = &coeff[static_cast<size_t>(q * comps + c) * nloc];
                for (int l1 = 0; l1 < nloc; ++l1) {
                    if (gq[l1] == 0.0) continue;
                    const double a = wc * gq[l1];
                    double* row = &loc_a0[static_cast<size_t>(l1) * nloc];
                    for (int l2 = 0; l2 < nloc; ++l2) row[l2] += a * gq[l2];
                }
                for (int m = 0; m < proj_nodes; ++m) {
                    const double pv = wc * psi[q][m];
                    double* row = &loc_cross[(static_cast<size_t>(c) * proj_nodes + m) * nloc];
                    for (int l = 0; l < nloc; ++l) row[l] += pv * gq[l];
                }
            }
            for (int m = 0; m < proj_nodes; ++m)
                for (int m2 = 0; m2 < proj_nodes; ++m2)
                    loc_mass[static_cast<size_t>(m) * proj_nodes + m2] += w * psi[q][m] * psi[q][m2];
        }

        for (int l1 = 0; l1 < nloc; ++l1)
            for (int l2 = 0; l2 < nloc; ++l2) {
                const double v = loc_a0[static_cast<size_t>(l1) * nloc + l2];
                if (v != 0.0) t_a0.push_back({dofs[l1], dofs[l2], alpha * v});
            }
        for (int c = 0; c < comps; ++c) {
            for (int m = 0; m < proj_nodes; ++m) {
                const int row = space.global_dof(0, e, m, c);
                for (int l = 0; l < nloc; ++l) {
                    const double v = loc_cross[(static_cast<size_t>(c) * proj_nodes + m) * nloc + l];
                    if (v == 0.0) continue;
                    t_cross.push_back({row, dofs[l], v});
                    t_cross_a.push_back({row, dofs[l], alpha * v});
                }
                for (int m2 = 0; m2 < proj_nodes; ++m2) {
                    const int col = space.global_dof(0, e, m2, c);
                    const double v =
                        quantity.component_weight[c] * loc_mass[static_cast<size_t>(m) * proj_nodes + m2];
                    t_mass.push_back({row, col, v});
                    t_mass_a.push_back({row, col, alpha * v});
                }
            }
        }
    }

    StabParts parts;
    parts.proj_dofs = proj_dofs;
    parts.a0 = assemble_csr(quantity.source_dofs, quantity.source_dofs, std::move(t_a0));
    parts.cross = assemble_csr(proj_dofs, quantity.source_dofs, std::move(t_cross));
    parts.cross_alpha = assemble_csr(proj_dofs, quantity.source_dofs, std::move(t_cross_a));
    parts.mass = assemble_csr(proj_dofs, proj_dofs, std::move(t_mass));
    parts.mass_alpha = assemble_csr(proj_dofs, proj_dofs, std::move(t_mass_a));

    parts.mass_lumped.assign(static_cast<size_t>(proj_dofs), 0.0);
    for (int r = 0; r < parts.mass.rows; ++r)
        for (int k = parts.mass.row_ptr[r]; k < parts.mass.row_ptr[r + 1]; ++k)
            parts.mass_lumped[r] += parts.mass.values[k];
    return parts;
}

CsrMatrix lumped_orthogonal_stab(const StabParts& parts) {
    std::vector<double> inv_lumped(parts.mass_lumped.size());
    for (size_t i = 0; i < inv_lumped.size(); ++i) {
        if (!(parts.mass_lumped[i] > 0.0))
            throw std::invalid_argument("lumped_orthogonal_stab: lumped projection mass not positive");
        inv_lumped[i] = 1.0 / parts.mass_lumped[i];
    }
    const CsrMatrix t = scale_rows(parts.cross, inv_lumped);
    const CsrMatrix s2 = multiply(transpose(t), multiply(parts.mass_alpha, t));
    CsrMatrix s = add(parts.a0, s2, 1.0, -1.0);
    // the triple product is symmetric only up to rounding
    s = add(s, transpose(s), 0.5, 0.5);
    return s;
}

CsrMatrix weighted_orthogonal_stab(const Mesh& mesh, const StabQuantity& quantity,
                                   const ElementQuantityFn& eval, const QuadratureRule& rule,
                                   std::span<const double> elem_weights, int projection_order) {
    for (double w : elem_weights)
        if (w < 0.0) throw std::invalid_argument("weighted_orthogonal_stab: weights must be >= 0");
    const bool all_zero =
        std::all_of(elem_weights.begin(), elem_weights.end(), [](double w) { return w == 0.0; });
    if (all_zero) return CsrMatrix::zero(quantity.source_dofs, quantity.source_dofs);
    if (projection_order != 1)
        throw std::invalid_argument(
            "weighted_orthogonal_stab: lumped projection requires a P1 projection space");
    return lumped_orthogonal_stab(
        build_stab_parts(mesh, quantity, eval, rule, elem_weights, projection_order));
}

LumpedProjector::LumpedProjector(const Mesh& mesh, int components, int projection_order)
    : mesh_(&mesh), components_(components), order_(projection_order) {
    if (projection_order != 1)
        throw std::invalid_argument("LumpedProjector: only P1 projection spaces are lumpable");
    space_ = build_dof_map(mesh, {FieldSpec{"proj", components, projection_order}});
    lumped_.assign(static_cast<size_t>(space_.total_dofs()), 0.0);
    for (int e = 0; e < mesh.triangle_count(); ++e) {
        const double det = element_jacobian(mesh, e).det;
        for (int m = 0; m < 3; ++m)
            for (int c = 0; c < components; ++c)
                lumped_[space_.global_dof(0, e, m, c)] += det / 6.0;  // area/3 per vertex
    }
}

std::vector<double> LumpedProjector::pair_cellwise(const std::vector<double>& cell_values) const {
    if (cell_values.size() != static_cast<size_t>(mesh_->triangle_count() * components_))
        throw std::invalid_argument("LumpedProjector: cell_values size mismatch");
    std::vector<double> rhs(lumped_.size(), 0.0);
    for (int e = 0; e < mesh_->triangle_count(); ++e) {
        const double det = element_jacobian(*mesh_, e).det;
        for (int m = 0; m < 3; ++m)
            for (int c = 0; c < components_; ++c)
                rhs[space_.global_dof(0, e, m, c)] += det / 6.0 * cell_values[e * components_ + c];
    }
    return rhs;
}

std::vector<double> LumpedProjector::project_cellwise(const std::vector<double>& cell_values) const {
    std::vector<double> y = pair_cellwise(cell_values);
    for (size_t i = 0; i < y.size(); ++i) y[i] /= lumped_[i];
    return y;
}

std::vector<double> LumpedProjector::project_space_function(const std::vector<double>& dofs) const {
    if (dofs.size() != lumped_.size())
        throw std::invalid_argument("LumpedProjector: dof vector size mismatch");
    // Nodal pairing of a function already in the space, then the lumped
    // solve; exercises the same accumulation path as project_cellwise.
    std::vector<double> rhs(lumped_.size(), 0.0);
    for (int e = 0; e < mesh_->triangle_count(); ++e) {
        const double det = element_jacobian(*mesh_, e).det;
        for (int m = 0; m < 3; ++m)
            for (int c = 0; c < components_; ++c) {
                const int j = space_.global_dof(0, e, m, c);
                rhs[j] += det / 6.0 * dofs[j];
            }
    }
    for (size_t i = 0; i < rhs.size(); ++i) rhs[i] /= lumped_[i];
    return rhs;
}

}  // namespace ossfem
