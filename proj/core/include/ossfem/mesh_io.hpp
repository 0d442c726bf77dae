#pragma once

#include <iosfwd>
#include <string>

#include "ossfem/mesh.hpp"

namespace ossfem {

/// Plain-text mesh document: schema_version, domain_tag, vertex/triangle/
/// boundary arrays, 0-based indices. Doubles are written as shortest
/// round-trip decimals, so save -> load is bit-exact.
void save_mesh(const Mesh& mesh, std::ostream& out);
void save_mesh(const Mesh& mesh, const std::string& path);

Mesh load_mesh(std::istream& in);
Mesh load_mesh(const std::string& path);

/// Shortest decimal that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace ossfem
