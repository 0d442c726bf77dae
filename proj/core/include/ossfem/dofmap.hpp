#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ossfem/mesh.hpp"

namespace ossfem {

/// One unknown field over the mesh: `components` scalar components of
/// continuous P`order` interpolation. `dirichlet` eliminates all dofs on
/// boundary nodes; `pin_first` eliminates the scalar dof at the vertex with
/// the lowest (y, x) coordinate (used to fix the pressure constant).
struct FieldSpec {
    std::string name;
    int components = 1;
    int order = 1;
    bool dirichlet = false;
    bool pin_first = false;
};

/// Global numbering for a list of fields. Scalar nodes are shared per order
/// (P1: vertices; P2: vertices then edges keyed by sorted vertex pairs),
/// components interleave within a field, fields are laid out back to back.
/// Constrained dofs (Dirichlet + pin) are removed from the reduced numbering.
class DofMap {
public:
    const std::vector<FieldSpec>& fields() const { return fields_; }
    int field_count() const { return static_cast<int>(fields_.size()); }
    int field_offset(int f) const { return field_offset_[f]; }
    int field_dofs(int f) const { return field_offset_[f + 1] - field_offset_[f]; }
    int total_dofs() const { return field_offset_.back(); }

    int scalar_count(int order) const;
    /// Scalar node index of a local node within a triangle (order-dependent).
    int scalar_node(int order, int tri, int local_node) const;
    bool scalar_node_on_boundary(int order, int scalar) const;

    int global_dof(int field, int tri, int local_node, int comp) const {
        const auto& fs = fields_[field];
        return field_offset_[field] + scalar_node(fs.order, tri, local_node) * fs.components + comp;
    }
    int global_dof_of_scalar(int field, int scalar, int comp) const {
        return field_offset_[field] + scalar * fields_[field].components + comp;
    }

    const std::vector<int>& dirichlet_dofs() const { return dirichlet_dofs_; }
    int pinned_pressure_dof() const { return pinned_dof_; }

    int reduced_dofs() const { return static_cast<int>(reduced_to_full_.size()); }
    int full_to_reduced(int full) const { return full_to_reduced_[full]; }
    const std::vector<int>& reduced_to_full() const { return reduced_to_full_; }

    /// Scatter a reduced vector into a full one, zeros at constrained dofs.
    std::vector<double> expand(const std::vector<double>& reduced) const;
    /// Slice one field out of a full vector.
    std::vector<double> field_slice(const std::vector<double>& full, int field) const;
    int field_index(const std::string& name) const;

    friend DofMap build_dof_map(const Mesh& mesh, std::vector<FieldSpec> fields);

private:
    std::vector<FieldSpec> fields_;
    std::vector<int> field_offset_;
    int vertex_count_ = 0;
    int edge_count_ = 0;
    std::vector<std::array<std::int32_t, 3>> tri_edges_;  // edge ids per triangle
    std::vector<std::array<std::int32_t, 3>> tri_verts_;
    std::vector<char> vertex_boundary_;
    std::vector<char> edge_boundary_;
    std::vector<int> dirichlet_dofs_;
    int pinned_dof_ = -1;
    std::vector<int> full_to_reduced_;
    std::vector<int> reduced_to_full_;
};

DofMap build_dof_map(const Mesh& mesh, std::vector<FieldSpec> fields);

}  // namespace ossfem
