#include "ossfem/vtk.hpp"

#include <array>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "ossfem/dofmap.hpp"
#include "ossfem/mesh_io.hpp"

namespace ossfem {

namespace {

struct ExportGrid {
    std::vector<Point2> points;
    std::vector<std::array<int, 3>> cells;
};

// P1: the mesh itself. P2: vertices plus edge midpoints with each triangle
// split into four, so point i carries scalar node i's value.
ExportGrid export_grid(const Mesh& mesh, int order) {
    ExportGrid g;
    if (order == 1) {
        g.points = mesh.vertices;
        for (const auto& t : mesh.triangles) g.cells.push_back({t.v[0], t.v[1], t.v[2]});
        return g;
    }
    const DofMap dm = build_dof_map(mesh, {FieldSpec{"s", 1, 2}});
    g.points.resize(static_cast<size_t>(dm.scalar_count(2)));
    for (int v = 0; v < mesh.vertex_count(); ++v) g.points[v] = mesh.vertices[v];
    for (int e = 0; e < mesh.triangle_count(); ++e) {
        const auto& tv = mesh.triangles[e].v;
        int n[6];
        for (int l = 0; l < 6; ++l) n[l] = dm.scalar_node(2, e, l);
        for (int l = 0; l < 3; ++l) {
            const Point2& a = mesh.vertices[tv[l]];
            const Point2& b = mesh.vertices[tv[(l + 1) % 3]];
            g.points[n[3 + l]] = {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
        }
        g.cells.push_back({n[0], n[3], n[5]});
        g.cells.push_back({n[1], n[4], n[3]});
        g.cells.push_back({n[2], n[5], n[4]});
        g.cells.push_back({n[3], n[4], n[5]});
    }
    return g;
}

}  // namespace

void write_vtk(const Mesh& mesh, const FieldsFile& fields, std::ostream& out) {
    const ExportGrid grid = export_grid(mesh, fields.order);
    const size_t npoints = grid.points.size();
    for (const auto& fd : fields.fields) {
        if (fd.values.size() != npoints * fd.components)
            throw std::invalid_argument("write_vtk: field '" + fd.name + "' size inconsistent with mesh");
    }

    out << "# vtk DataFile Version 3.0\n";
    out << "mode " << fields.mode << " lambda " << format_double(fields.lambda) << "\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << npoints << " double\n";
    for (const auto& p : grid.points)
        out << format_double(p.x) << " " << format_double(p.y) << " 0\n";
    out << "CELLS " << grid.cells.size() << " " << grid.cells.size() * 4 << "\n";
    for (const auto& c : grid.cells) out << "3 " << c[0] << " " << c[1] << " " << c[2] << "\n";
    out << "CELL_TYPES " << grid.cells.size() << "\n";
    for (size_t i = 0; i < grid.cells.size(); ++i) out << "5\n";

    out << "POINT_DATA " << npoints << "\n";
    for (const auto& fd : fields.fields) {
        if (fd.name == "velocity" && fd.components == 2) {
            out << "VECTORS velocity double\n";
            for (size_t i = 0; i < npoints; ++i)
                out << format_double(fd.values[2 * i]) << " " << format_double(fd.values[2 * i + 1])
                    << " 0\n";
        } else if (fd.components == 1) {
            out << "SCALARS " << fd.name << " double 1\n";
            out << "LOOKUP_TABLE default\n";
            for (size_t i = 0; i < npoints; ++i) out << format_double(fd.values[i]) << "\n";
        } else if (fd.name == "stress" && fd.components == 3) {
            static const char* comp_name[3] = {"stress_11", "stress_12", "stress_22"};
            for (int c = 0; c < 3; ++c) {
                out << "SCALARS " << comp_name[c] << " double 1\n";
                out << "LOOKUP_TABLE default\n";
                for (size_t i = 0; i < npoints; ++i)
                    out << format_double(fd.values[3 * i + c]) << "\n";
            }
        } else {
            throw std::invalid_argument("write_vtk: unsupported field '" + fd.name + "'");
        }
    }
}

void write_vtk(const Mesh& mesh, const FieldsFile& fields, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    write_vtk(mesh, fields, f);
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace ossfem
