#pragma once

#include <iosfwd>
#include <string>

#include "ossfem/fields_io.hpp"
#include "ossfem/mesh.hpp"

namespace ossfem {

/// Legacy ASCII VTK unstructured-grid export of nodal fields over a mesh.
/// Velocity goes out as VECTORS (z = 0), pressure as SCALARS, stress
/// components as three SCALARS arrays when present. P2 fields are exported
/// on a once-refined (4-way split) mesh so midside values are preserved.
void write_vtk(const Mesh& mesh, const FieldsFile& fields, std::ostream& out);
void write_vtk(const Mesh& mesh, const FieldsFile& fields, const std::string& path);

}  // namespace ossfem
