#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ossfem {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Counter-clockwise vertex triple into Mesh::vertices.
struct Triangle {
    std::array<std::int32_t, 3> v{};
};

enum class DomainTag { square, lshape, cracked_square };

std::string to_string(DomainTag tag);
DomainTag domain_tag_from_string(const std::string& s);

/// Conforming triangulation. Immutable after construction; across the crack
/// of a cracked-square mesh, geometrically coincident vertices are
/// topologically distinct and both flanks count as boundary.
struct Mesh {
    std::vector<Point2> vertices;
    std::vector<Triangle> triangles;
    std::vector<std::int32_t> boundary_vertices;  // sorted, unique
    double h_max = 0.0;                           // max longest edge over triangles
    DomainTag domain_tag = DomainTag::square;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }
    bool is_boundary_vertex(std::int32_t v) const;
};

/// Structured n-by-n grid on [0,1]^2, every cell split by its lower-left to
/// upper-right diagonal. (n+1)^2 vertices, 2n^2 triangles, h_max = sqrt(2)/n.
Mesh unit_square_mesh(int n);

/// [-1,1]^2 minus the open quadrant (0,1]^2, n divisions per short edge.
/// Three structured blocks, conforming across interfaces; the re-entrant
/// corner sits at the origin.
Mesh l_shaped_mesh(int n);

/// Unit square with a 45-degree crack from the corner (0,0) to the center
/// (0.5,0.5). Crack vertices except the tip are duplicated, one copy per
/// flank; the returned vertex count is within 25% of target_vertices.
Mesh cracked_square_mesh(int target_vertices);

struct MeshStats {
    int vertex_count = 0;
    int triangle_count = 0;
    double h_max = 0.0;
    double min_angle_deg = 0.0;
};

MeshStats mesh_stats(const Mesh& mesh);

double triangle_area(const Mesh& mesh, int t);
double triangle_longest_edge(const Mesh& mesh, int t);

/// Undirected edges as sorted vertex pairs with incident-triangle counts.
/// Crack-flank edges appear once per flank, so they count as boundary.
struct EdgeInfo {
    std::array<std::int32_t, 2> v{};  // v[0] < v[1]
    int triangle_count = 0;
};
std::vector<EdgeInfo> collect_edges(const Mesh& mesh);

}  // namespace ossfem
