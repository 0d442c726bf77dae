#include "ossfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace ossfem {

namespace {

double signed_area2(const Point2& a, const Point2& b, const Point2& c) {
    return (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
}

double dist(const Point2& a, const Point2& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

// Computes boundary_vertices and h_max, and validates orientation/indices.
void finalize(Mesh& mesh) {
    const auto nv = static_cast<std::int32_t>(mesh.vertices.size());
    for (const auto& t : mesh.triangles) {
        for (auto v : t.v) {
            if (v < 0 || v >= nv) throw std::invalid_argument("mesh: vertex index out of range");
        }
        if (t.v[0] == t.v[1] || t.v[1] == t.v[2] || t.v[0] == t.v[2])
            throw std::invalid_argument("mesh: degenerate triangle (repeated vertex)");
        const double a2 = signed_area2(mesh.vertices[t.v[0]], mesh.vertices[t.v[1]], mesh.vertices[t.v[2]]);
        if (!(a2 > 0.0)) throw std::invalid_argument("mesh: triangle not counter-clockwise");
    }

    mesh.h_max = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t)
        mesh.h_max = std::max(mesh.h_max, triangle_longest_edge(mesh, t));

    mesh.boundary_vertices.clear();
    for (const auto& e : collect_edges(mesh)) {
        if (e.triangle_count == 1) {
            mesh.boundary_vertices.push_back(e.v[0]);
            mesh.boundary_vertices.push_back(e.v[1]);
        }
    }
    std::sort(mesh.boundary_vertices.begin(), mesh.boundary_vertices.end());
    mesh.boundary_vertices.erase(
        std::unique(mesh.boundary_vertices.begin(), mesh.boundary_vertices.end()),
        mesh.boundary_vertices.end());
}

}  // namespace

std::string to_string(DomainTag tag) {
    switch (tag) {
        case DomainTag::square: return "square";
        case DomainTag::lshape: return "lshape";
        case DomainTag::cracked_square: return "cracked";
    }
    throw std::invalid_argument("unknown domain tag");
}

DomainTag domain_tag_from_string(const std::string& s) {
    if (s == "square") return DomainTag::square;
    if (s == "lshape") return DomainTag::lshape;
    if (s == "cracked") return DomainTag::cracked_square;
    throw std::invalid_argument("unknown domain tag: " + s);
}

bool Mesh::is_boundary_vertex(std::int32_t v) const {
    return std::binary_search(boundary_vertices.begin(), boundary_vertices.end(), v);
}

std::vector<EdgeInfo> collect_edges(const Mesh& mesh) {
    std::map<std::array<std::int32_t, 2>, int> counts;
    for (const auto& t : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            std::int32_t a = t.v[k], b = t.v[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            ++counts[{a, b}];
        }
    }
    std::vector<EdgeInfo> edges;
    edges.reserve(counts.size());
    for (const auto& [key, c] : counts) edges.push_back({key, c});
    return edges;
}

double triangle_area(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    return 0.5 * signed_area2(mesh.vertices[tri.v[0]], mesh.vertices[tri.v[1]], mesh.vertices[tri.v[2]]);
}

double triangle_longest_edge(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    const Point2& a = mesh.vertices[tri.v[0]];
    const Point2& b = mesh.vertices[tri.v[1]];
    const Point2& c = mesh.vertices[tri.v[2]];
    return std::max({dist(a, b), dist(b, c), dist(c, a)});
}

Mesh unit_square_mesh(int n) {
    if (n < 1) throw std::invalid_argument("unit_square_mesh: n must be >= 1");
    Mesh mesh;
    mesh.domain_tag = DomainTag::square;
    mesh.vertices.reserve(static_cast<size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            mesh.vertices.push_back({double(i) / n, double(j) / n});

    auto vid = [n](int i, int j) { return std::int32_t(j * (n + 1) + i); };
    mesh.triangles.reserve(static_cast<size_t>(2) * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const auto v00 = vid(i, j), v10 = vid(i + 1, j);
            const auto v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            mesh.triangles.push_back({{v00, v10, v11}});
            mesh.triangles.push_back({{v00, v11, v01}});
        }
    }
    finalize(mesh);
    return mesh;
}

Mesh l_shaped_mesh(int n) {
    if (n < 1) throw std::invalid_argument("l_shaped_mesh: n must be >= 1");
    Mesh mesh;
    mesh.domain_tag = DomainTag::lshape;

    // Lattice over [-1,1]^2 with step 1/n; points strictly inside the removed
    // quadrant (x>0 and y>0) are skipped.
    const int m = 2 * n;
    std::vector<std::int32_t> lattice(static_cast<size_t>(m + 1) * (m + 1), -1);
    auto lid = [m](int i, int j) { return j * (m + 1) + i; };
    for (int j = 0; j <= m; ++j) {
        for (int i = 0; i <= m; ++i) {
            if (i > n && j > n) continue;
            lattice[lid(i, j)] = static_cast<std::int32_t>(mesh.vertices.size());
            mesh.vertices.push_back({-1.0 + double(i) / n, -1.0 + double(j) / n});
        }
    }

    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            if (i >= n && j >= n) continue;  // cell inside the removed quadrant
            const auto v00 = lattice[lid(i, j)], v10 = lattice[lid(i + 1, j)];
            const auto v01 = lattice[lid(i, j + 1)], v11 = lattice[lid(i + 1, j + 1)];
            mesh.triangles.push_back({{v00, v10, v11}});
            mesh.triangles.push_back({{v00, v11, v01}});
        }
    }
    finalize(mesh);
    return mesh;
}

Mesh cracked_square_mesh(int target_vertices) {
    if (target_vertices < 20)
        throw std::invalid_argument("cracked_square_mesh: target_vertices must be >= 20");

    // Even m keeps the crack endpoints and the tip on grid vertices: the
    // crack runs along y = x from (0,0) to (m/2)/m = 1/2. Vertex count is
    // (m+1)^2 plus m/2 duplicated crack vertices (mouth + strictly inside).
    auto count_for = [](int m) { return (m + 1) * (m + 1) + m / 2; };
    int best_m = -1;
    long best_dev = std::numeric_limits<long>::max();
    for (int m = 4; count_for(m) <= target_vertices * 2 + 8; m += 2) {
        const long dev = std::labs(long(count_for(m)) - long(target_vertices));
        if (dev < best_dev) {
            best_dev = dev;
            best_m = m;
        }
    }
    if (best_m < 0 || double(best_dev) > 0.25 * double(target_vertices))
        throw std::invalid_argument("cracked_square_mesh: target_vertices too small to resolve the crack");

    const int m = best_m;
    Mesh mesh = unit_square_mesh(m);
    mesh.domain_tag = DomainTag::cracked_square;

    // Duplicate crack vertices (i/m, i/m) for i = 0 .. m/2-1; the tip at
    // i = m/2 stays shared. Triangles whose centroid lies above y = x are
    // rewired to the duplicates.
    auto vid = [m](int i, int j) { return std::int32_t(j * (m + 1) + i); };
    std::vector<std::int32_t> dup(static_cast<size_t>(m / 2), -1);
    for (int i = 0; i < m / 2; ++i) {
        dup[i] = static_cast<std::int32_t>(mesh.vertices.size());
        mesh.vertices.push_back(mesh.vertices[vid(i, i)]);
    }
    for (auto& tri : mesh.triangles) {
        double cx = 0.0, cy = 0.0;
        for (auto v : tri.v) {
            cx += mesh.vertices[v].x;
            cy += mesh.vertices[v].y;
        }
        if (cy <= cx) continue;  // at or below the crack line: keep originals
        for (auto& v : tri.v) {
            for (int i = 0; i < m / 2; ++i) {
                if (v == vid(i, i)) {
                    v = dup[i];
                    break;
                }
            }
        }
    }
    finalize(mesh);
    return mesh;
}

MeshStats mesh_stats(const Mesh& mesh) {
    MeshStats s;
    s.vertex_count = mesh.vertex_count();
    s.triangle_count = mesh.triangle_count();
    s.h_max = mesh.h_max;
    double min_angle = std::numeric_limits<double>::max();
    for (const auto& tri : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            const Point2& a = mesh.vertices[tri.v[k]];
            const Point2& b = mesh.vertices[tri.v[(k + 1) % 3]];
            const Point2& c = mesh.vertices[tri.v[(k + 2) % 3]];
            const double ux = b.x - a.x, uy = b.y - a.y;
            const double wx = c.x - a.x, wy = c.y - a.y;
            const double cosa = (ux * wx + uy * wy) / (std::hypot(ux, uy) * std::hypot(wx, wy));
            min_angle = std::min(min_angle, std::acos(std::clamp(cosa, -1.0, 1.0)));
        }
    }
    s.min_angle_deg = min_angle * 180.0 / std::numbers::pi;
    return s;
}

}  // namespace ossfem
