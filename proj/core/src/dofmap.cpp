#include "ossfem/dofmap.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ossfem {

namespace {

// Geometric nested dissection over scalar nodes: recursive median splits
// with the one-sided vertex separator ordered last. Keeps direct
// factorizations of the assembled systems at 2D-mesh fill levels, which
// generic orderings miss badly on the multi-field pencils.
struct NestedDissection {
    const std::vector<std::array<double, 2>>& xy;
    const std::vector<std::vector<std::int32_t>>& adj;
    std::vector<char> in_set;
    std::vector<char> side;
    std::vector<std::int32_t> order;

    void run(std::vector<std::int32_t>& nodes) {
        if (nodes.size() <= 24) {
            order.insert(order.end(), nodes.begin(), nodes.end());
            return;
        }
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (auto v : nodes) {
            xmin = std::min(xmin, xy[v][0]);
            xmax = std::max(xmax, xy[v][0]);
            ymin = std::min(ymin, xy[v][1]);
            ymax = std::max(ymax, xy[v][1]);
        }
        const int axis = (xmax - xmin >= ymax - ymin) ? 0 : 1;
        std::vector<std::int32_t> tmp = nodes;
        std::nth_element(tmp.begin(), tmp.begin() + tmp.size() / 2, tmp.end(),
                         [&](auto a, auto b) { return xy[a][axis] < xy[b][axis]; });
        const double cut = xy[tmp[tmp.size() / 2]][axis];

        for (auto v : nodes) {
            in_set[v] = 1;
            side[v] = xy[v][axis] < cut ? 1 : 2;
        }
        std::vector<std::int32_t> left, right, sep;
        for (auto v : nodes) {
            if (side[v] != 2) continue;
            for (auto w : adj[v]) {
                if (in_set[w] && side[w] == 1) {
                    side[v] = 3;
                    sep.push_back(v);
                    break;
                }
            }
        }
        for (auto v : nodes) {
            if (side[v] == 1) left.push_back(v);
            else if (side[v] == 2) right.push_back(v);
        }
        for (auto v : nodes) in_set[v] = 0;
        if (left.empty() || right.empty()) {
            order.insert(order.end(), nodes.begin(), nodes.end());
            return;
        }
        run(left);
        run(right);
        order.insert(order.end(), sep.begin(), sep.end());
    }
};

}  // namespace

int DofMap::scalar_count(int order) const {
    if (order == 1) return vertex_count_;
    if (order == 2) return vertex_count_ + edge_count_;
    throw std::invalid_argument("DofMap: order must be 1 or 2");
}

int DofMap::scalar_node(int order, int tri, int local_node) const {
    if (order == 1) return tri_verts_[tri][local_node];
    if (local_node < 3) return tri_verts_[tri][local_node];
    return vertex_count_ + tri_edges_[tri][local_node - 3];
}

bool DofMap::scalar_node_on_boundary(int order, int scalar) const {
    (void)order;
    if (scalar < vertex_count_) return vertex_boundary_[scalar] != 0;
    return edge_boundary_[scalar - vertex_count_] != 0;
}

std::vector<double> DofMap::expand(const std::vector<double>& reduced) const {
    if (reduced.size() != reduced_to_full_.size())
        throw std::invalid_argument("DofMap::expand: size mismatch");
    std::vector<double> full(static_cast<size_t>(total_dofs()), 0.0);
    for (size_t r = 0; r < reduced.size(); ++r) full[reduced_to_full_[r]] = reduced[r];
    return full;
}

std::vector<double> DofMap::field_slice(const std::vector<double>& full, int field) const {
    if (full.size() != static_cast<size_t>(total_dofs()))
        throw std::invalid_argument("DofMap::field_slice: size mismatch");
    const int off = field_offset_[field];
    const int n = field_dofs(field);
    return std::vector<double>(full.begin() + off, full.begin() + off + n);
}

int DofMap::field_index(const std::string& name) const {
    for (int f = 0; f < field_count(); ++f)
        if (fields_[f].name == name) return f;
    throw std::invalid_argument("DofMap: no field named " + name);
}

DofMap build_dof_map(const Mesh& mesh, std::vector<FieldSpec> fields) {
    for (const auto& fs : fields) {
        if (fs.components < 1) throw std::invalid_argument("build_dof_map: components must be >= 1");
        if (fs.order != 1 && fs.order != 2) throw std::invalid_argument("build_dof_map: order must be 1 or 2");
    }

    DofMap dm;
    dm.fields_ = std::move(fields);
    dm.vertex_count_ = mesh.vertex_count();

    dm.tri_verts_.resize(mesh.triangles.size());
    for (size_t t = 0; t < mesh.triangles.size(); ++t) dm.tri_verts_[t] = mesh.triangles[t].v;

    // Edges keyed by sorted vertex pair; ids follow lexicographic key order
    // so the numbering is independent of triangle order.
    std::map<std::array<std::int32_t, 2>, std::int32_t> edge_count_by_key;
    for (const auto& t : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            std::int32_t a = t.v[k], b = t.v[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            ++edge_count_by_key[{a, b}];
        }
    }
    std::map<std::array<std::int32_t, 2>, std::int32_t> edge_id;
    dm.edge_boundary_.reserve(edge_count_by_key.size());
    for (const auto& [key, cnt] : edge_count_by_key) {
        edge_id[key] = static_cast<std::int32_t>(edge_id.size());
        dm.edge_boundary_.push_back(cnt == 1 ? 1 : 0);
    }
    dm.edge_count_ = static_cast<int>(edge_id.size());

    dm.tri_edges_.resize(mesh.triangles.size());
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& v = mesh.triangles[t].v;
        for (int k = 0; k < 3; ++k) {
            std::int32_t a = v[k], b = v[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            dm.tri_edges_[t][k] = edge_id.at({a, b});
        }
    }

    dm.vertex_boundary_.assign(dm.vertex_count_, 0);
    for (auto v : mesh.boundary_vertices) dm.vertex_boundary_[v] = 1;

    dm.field_offset_.assign(dm.fields_.size() + 1, 0);
    for (size_t f = 0; f < dm.fields_.size(); ++f) {
        const auto& fs = dm.fields_[f];
        dm.field_offset_[f + 1] = dm.field_offset_[f] + dm.scalar_count(fs.order) * fs.components;
    }

    // Constraints: Dirichlet boundary dofs and the pinned scalar dof at the
    // lowest-(y, x) vertex (lowest index on coordinate ties).
    std::vector<char> eliminated(static_cast<size_t>(dm.total_dofs()), 0);
    for (size_t f = 0; f < dm.fields_.size(); ++f) {
        const auto& fs = dm.fields_[f];
        if (fs.dirichlet) {
            const int ns = dm.scalar_count(fs.order);
            for (int s = 0; s < ns; ++s) {
                if (!dm.scalar_node_on_boundary(fs.order, s)) continue;
                for (int c = 0; c < fs.components; ++c) {
                    const int dof = dm.global_dof_of_scalar(static_cast<int>(f), s, c);
                    eliminated[dof] = 1;
                    dm.dirichlet_dofs_.push_back(dof);
                }
            }
        }
        if (fs.pin_first) {
            int best = 0;
            for (int v = 1; v < dm.vertex_count_; ++v) {
                const Point2& p = mesh.vertices[v];
                const Point2& q = mesh.vertices[best];
                if (p.y < q.y || (p.y == q.y && p.x < q.x)) best = v;
            }
            const int dof = dm.global_dof_of_scalar(static_cast<int>(f), best, 0);
            if (dm.pinned_dof_ >= 0) throw std::invalid_argument("build_dof_map: more than one pinned field");
            dm.pinned_dof_ = dof;
            eliminated[dof] = 1;
        }
    }
    std::sort(dm.dirichlet_dofs_.begin(), dm.dirichlet_dofs_.end());

    // Reduced numbering follows a geometric nested-dissection order of the
    // scalar nodes, all fields of a node consecutive.
    int max_order = 1;
    for (const auto& fs : dm.fields_) max_order = std::max(max_order, fs.order);
    const int ns = dm.scalar_count(max_order);
    std::vector<std::array<double, 2>> xy(static_cast<size_t>(ns));
    std::vector<std::vector<std::int32_t>> adj(static_cast<size_t>(ns));
    const int npe = max_order == 1 ? 3 : 6;
    for (int e = 0; e < static_cast<int>(mesh.triangles.size()); ++e) {
        std::array<int, 6> nodes{};
        for (int l = 0; l < npe; ++l) nodes[l] = dm.scalar_node(max_order, e, l);
        const auto& tv = mesh.triangles[e].v;
        for (int l = 0; l < 3; ++l) xy[nodes[l]] = {mesh.vertices[tv[l]].x, mesh.vertices[tv[l]].y};
        for (int l = 0; l < 3 && npe == 6; ++l) {
            const Point2& a = mesh.vertices[tv[l]];
            const Point2& b = mesh.vertices[tv[(l + 1) % 3]];
            xy[nodes[3 + l]] = {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
        }
        for (int i = 0; i < npe; ++i)
            for (int j = 0; j < npe; ++j)
                if (i != j) adj[nodes[i]].push_back(static_cast<std::int32_t>(nodes[j]));
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    NestedDissection nd{xy, adj, std::vector<char>(static_cast<size_t>(ns), 0),
                        std::vector<char>(static_cast<size_t>(ns), 0), {}};
    std::vector<std::int32_t> all(static_cast<size_t>(ns));
    std::iota(all.begin(), all.end(), 0);
    nd.run(all);

    dm.full_to_reduced_.assign(static_cast<size_t>(dm.total_dofs()), -1);
    for (auto node : nd.order) {
        for (int f = 0; f < dm.field_count(); ++f) {
            const auto& fs = dm.fields_[f];
            if (node >= dm.scalar_count(fs.order)) continue;
            for (int c = 0; c < fs.components; ++c) {
                const int dof = dm.global_dof_of_scalar(f, node, c);
                if (eliminated[dof]) continue;
                dm.full_to_reduced_[dof] = static_cast<int>(dm.reduced_to_full_.size());
                dm.reduced_to_full_.push_back(dof);
            }
        }
    }
    return dm;
}

}  // namespace ossfem
