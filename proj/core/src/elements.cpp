#include "ossfem/elements.hpp"

#include <stdexcept>

namespace ossfem {

BasisEval reference_basis(int order, double xi, double eta) {
    if (order != 1 && order != 2) throw std::invalid_argument("reference_basis: order must be 1 or 2");
    const double l1 = 1.0 - xi - eta, l2 = xi, l3 = eta;
    constexpr double slack = 1e-12;
    if (l1 < -slack || l2 < -slack || l3 < -slack)
        throw std::invalid_argument("reference_basis: point outside reference triangle");

    BasisEval b;
    if (order == 1) {
        b.node_count = 3;
        b.value = {l1, l2, l3};
        b.grad[0] = {-1.0, -1.0};
        b.grad[1] = {1.0, 0.0};
        b.grad[2] = {0.0, 1.0};
        return b;
    }

    b.node_count = 6;
    b.value[0] = l1 * (2.0 * l1 - 1.0);
    b.value[1] = l2 * (2.0 * l2 - 1.0);
    b.value[2] = l3 * (2.0 * l3 - 1.0);
    b.value[3] = 4.0 * l1 * l2;
    b.value[4] = 4.0 * l2 * l3;
    b.value[5] = 4.0 * l3 * l1;
    // d/dxi, d/deta with dl1 = (-1,-1), dl2 = (1,0), dl3 = (0,1)
    b.grad[0] = {-(4.0 * l1 - 1.0), -(4.0 * l1 - 1.0)};
    b.grad[1] = {4.0 * l2 - 1.0, 0.0};
    b.grad[2] = {0.0, 4.0 * l3 - 1.0};
    b.grad[3] = {4.0 * (l1 - l2), -4.0 * l2};
    b.grad[4] = {4.0 * l3, 4.0 * l2};
    b.grad[5] = {-4.0 * l3, 4.0 * (l1 - l3)};
    return b;
}

ElementJacobian element_jacobian(const Mesh& mesh, int triangle_index) {
    if (triangle_index < 0 || triangle_index >= mesh.triangle_count())
        throw std::invalid_argument("element_jacobian: triangle index out of range");
    const auto& t = mesh.triangles[triangle_index];
    const Point2& a = mesh.vertices[t.v[0]];
    const Point2& b = mesh.vertices[t.v[1]];
    const Point2& c = mesh.vertices[t.v[2]];

    ElementJacobian e;
    e.j[0][0] = b.x - a.x;
    e.j[1][0] = b.y - a.y;
    e.j[0][1] = c.x - a.x;
    e.j[1][1] = c.y - a.y;
    e.det = e.j[0][0] * e.j[1][1] - e.j[0][1] * e.j[1][0];
    if (!(e.det > 0.0)) throw std::runtime_error("element_jacobian: degenerate or mirrored triangle");
    // J^{-T} = (1/det) [[j11, -j10], [-j01, j00]]
    e.inv_t[0][0] = e.j[1][1] / e.det;
    e.inv_t[0][1] = -e.j[1][0] / e.det;
    e.inv_t[1][0] = -e.j[0][1] / e.det;
    e.inv_t[1][1] = e.j[0][0] / e.det;
    return e;
}

}  // namespace ossfem
