#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ossfem {

struct FieldData {
    std::string name;
    int components = 1;
    std::vector<double> values;  // interleaved components per scalar node
};

/// One solved mode's nodal fields, as written by the solve subcommand and
/// consumed by the VTK exporter. Node numbering matches the mesh: vertices
/// first, then (for P2) edge nodes keyed by sorted vertex pairs.
struct FieldsFile {
    int order = 1;
    int mode = 1;
    double lambda = 0.0;
    std::vector<FieldData> fields;
};

void save_fields(const FieldsFile& f, std::ostream& out);
void save_fields(const FieldsFile& f, const std::string& path);
FieldsFile load_fields(std::istream& in);
FieldsFile load_fields(const std::string& path);

}  // namespace ossfem
