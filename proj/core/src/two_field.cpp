#include "ossfem/two_field.hpp"

#include <memory>
#include <stdexcept>

#include "assembly_util.hpp"
#include "ossfem/linear_solve.hpp"
#include "ossfem/quadrature.hpp"

namespace ossfem {

using detail::BasisCache;

namespace {

/// per-element alpha_1K = c1 * h_K^2 / mu
std::vector<double> pressure_grad_weights(const Mesh& mesh, const TwoFieldParams& p) {
    std::vector<double> w(static_cast<size_t>(mesh.triangle_count()));
    for (int e = 0; e < mesh.triangle_count(); ++e) {
        const double h = triangle_longest_edge(mesh, e);
        w[e] = p.c1 * h * h / p.mu;
    }
    return w;
}

}  // namespace

namespace detail {

ElementQuantityFn make_gradient_quantity(const Mesh& mesh, const DofMap& dm, int field,
                                         const QuadratureRule& rule, int order) {
    auto cache = std::make_shared<BasisCache>(order, rule);
    return [&mesh, &dm, field, cache, nq = rule.size()](int e, std::vector<int>& dofs,
                                                        std::vector<double>& coeff) {
        const int nn = cache->node_count;
        std::vector<std::array<std::array<double, 2>, 6>> grad;
        physical_gradients(*cache, element_jacobian(mesh, e), grad);
        dofs.resize(static_cast<size_t>(nn));
        for (int l = 0; l < nn; ++l) dofs[l] = dm.global_dof(field, e, l, 0);
        coeff.assign(static_cast<size_t>(nq) * 2 * nn, 0.0);
        for (int q = 0; q < nq; ++q)
            for (int c = 0; c < 2; ++c)
                for (int l = 0; l < nn; ++l)
                    coeff[static_cast<size_t>(q * 2 + c) * nn + l] = grad[q][l][c];
    };
}

ElementQuantityFn make_divergence_quantity(const Mesh& mesh, const DofMap& dm, int field,
                                           const QuadratureRule& rule, int order) {
    auto cache = std::make_shared<BasisCache>(order, rule);
    return [&mesh, &dm, field, cache, nq = rule.size()](int e, std::vector<int>& dofs,
                                                        std::vector<double>& coeff) {
        const int nn = cache->node_count;
        std::vector<std::array<std::array<double, 2>, 6>> grad;
        physical_gradients(*cache, element_jacobian(mesh, e), grad);
        dofs.resize(static_cast<size_t>(2) * nn);
        for (int l = 0; l < nn; ++l)
            for (int c = 0; c < 2; ++c) dofs[l * 2 + c] = dm.global_dof(field, e, l, c);
        coeff.assign(static_cast<size_t>(nq) * 2 * nn, 0.0);
        for (int q = 0; q < nq; ++q)
            for (int l = 0; l < nn; ++l)
                for (int c = 0; c < 2; ++c)
                    coeff[static_cast<size_t>(q) * 2 * nn + l * 2 + c] = grad[q][l][c];
    };
}

void append_stab_term(const Mesh& mesh, const DofMap& dm, const StabQuantity& quantity,
                      const ElementQuantityFn& eval, const QuadratureRule& rule,
                      std::span<const double> weights, int order, StabRealization realization,
                      const char* aux_field_name, std::vector<Triplet>& out) {
    if (realization == StabRealization::lumped_algebraic) {
        append_reduced(dm, weighted_orthogonal_stab(mesh, quantity, eval, rule, weights, order), out);
        return;
    }
    const StabParts parts = build_stab_parts(mesh, quantity, eval, rule, weights, order);
    append_implicit_stab(dm, parts, dm.field_index(aux_field_name), out);
}

}  // namespace detail

TwoFieldSystem assemble_two_field(const Mesh& mesh, int order, const TwoFieldParams& params,
                                  StabRealization realization) {
    if (order != 1 && order != 2) throw std::invalid_argument("assemble_two_field: order must be 1 or 2");
    if (!(params.mu > 0.0)) throw std::invalid_argument("assemble_two_field: mu must be positive");
    if (params.c1 < 0.0 || params.c2 < 0.0)
        throw std::invalid_argument("assemble_two_field: stabilization constants must be >= 0");
    if (realization == StabRealization::lumped_algebraic && order != 1)
        throw std::invalid_argument("assemble_two_field: lumped realization requires P1");

    const QuadratureRule& rule = quadrature_rule(2 * order);
    const bool p_stab = params.c1 > 0.0;
    const bool d_stab = params.c2 > 0.0;
    const bool implicit = realization == StabRealization::implicit_projection;

    std::vector<FieldSpec> fields = {
        {"velocity", 2, order, /*dirichlet=*/true},
        {"pressure", 1, order, /*dirichlet=*/false, /*pin_first=*/true},
    };
    if (implicit && p_stab) fields.push_back({"pgrad_proj", 2, order});
    if (implicit && d_stab) fields.push_back({"div_proj", 1, order});

    TwoFieldSystem sys;
    sys.order = order;
    sys.params = params;
    sys.dof_map = build_dof_map(mesh, fields);
    const DofMap& dm = sys.dof_map;
    const int vel = 0, prs = 1;

    std::vector<Triplet> ta, tm;
    const BasisCache cache(order, rule);
    const int nn = cache.node_count;
    std::vector<std::array<std::array<double, 2>, 6>> grad;

    for (int e = 0; e < mesh.triangle_count(); ++e) {
        const ElementJacobian jac = element_jacobian(mesh, e);
        detail::physical_gradients(cache, jac, grad);

        double lap[6][6] = {};
        double mass[6][6] = {};
        double bdiv[6][6][2] = {};  // (pressure test i, velocity (j,c))
        for (int q = 0; q < rule.size(); ++q) {
            const double w = rule.weights[q] * jac.det;
            for (int i = 0; i < nn; ++i) {
                for (int j = 0; j < nn; ++j) {
                    lap[i][j] += w * (grad[q][i][0] * grad[q][j][0] + grad[q][i][1] * grad[q][j][1]);
                    mass[i][j] += w * cache.at[q].value[i] * cache.at[q].value[j];
                    for (int c = 0; c < 2; ++c) bdiv[i][j][c] += w * cache.at[q].value[i] * grad[q][j][c];
                }
            }
        }
        for (int i = 0; i < nn; ++i) {
            for (int j = 0; j < nn; ++j) {
                for (int c = 0; c < 2; ++c) {
                    detail::append_reduced(dm, dm.global_dof(vel, e, i, c), dm.global_dof(vel, e, j, c),
                                           params.mu * lap[i][j], ta);
                    detail::append_reduced(dm, dm.global_dof(vel, e, i, c), dm.global_dof(vel, e, j, c),
                                           mass[i][j], tm);
                    // +(q, div u) and -(p, div v)
                    detail::append_reduced(dm, dm.global_dof(prs, e, i, 0), dm.global_dof(vel, e, j, c),
                                           bdiv[i][j][c], ta);
                    detail::append_reduced(dm, dm.global_dof(vel, e, j, c), dm.global_dof(prs, e, i, 0),
                                           -bdiv[i][j][c], ta);
                }
            }
        }
    }

    if (p_stab) {
        const StabQuantity q{dm.total_dofs(), 2, {1.0, 1.0}};
        detail::append_stab_term(mesh, dm, q, detail::make_gradient_quantity(mesh, dm, prs, rule, order),
                                 rule, pressure_grad_weights(mesh, params), order, realization,
                                 "pgrad_proj", ta);
    }
    if (d_stab) {
        const StabQuantity q{dm.total_dofs(), 1, {1.0}};
        const std::vector<double> alpha2(static_cast<size_t>(mesh.triangle_count()),
                                         params.c2 * params.mu);
        detail::append_stab_term(mesh, dm, q, detail::make_divergence_quantity(mesh, dm, vel, rule, order),
                                 rule, alpha2, order, realization, "div_proj", ta);
    }

    const int nred = dm.reduced_dofs();
    sys.a = assemble_csr(nred, nred, std::move(ta));
    sys.m = assemble_csr(nred, nred, std::move(tm));
    return sys;
}

namespace {

VelocityPressure split_two_field(const DofMap& dm, const std::vector<double>& reduced) {
    const std::vector<double> full = dm.expand(reduced);
    return {dm.field_slice(full, 0), dm.field_slice(full, 1)};
}

}  // namespace

TwoFieldEigs solve_two_field_eigs(const Mesh& mesh, int order, const TwoFieldParams& params, int k,
                                  double tol) {
    TwoFieldSystem sys = assemble_two_field(mesh, order, params);
    TwoFieldEigs out;
    for (double sigma : {0.0, 1e-6 * params.mu, 1e-2 * params.mu}) {
        try {
            out.solution = shift_invert_arnoldi(sys.a, sys.m, sigma, k, tol, 12, LuOrdering::natural);
            break;
        } catch (const ShiftRejectedError&) {
            if (sigma == 1e-2 * params.mu) throw;
        }
    }
    out.fields.reserve(out.solution.pairs.size());
    for (const auto& p : out.solution.pairs) out.fields.push_back(split_two_field(sys.dof_map, p.vector));
    return out;
}

VelocityPressure solve_two_field_source(const Mesh& mesh, int order, const TwoFieldParams& params,
                                        const VectorLoad& f) {
    TwoFieldSystem sys = assemble_two_field(mesh, order, params);
    const DofMap& dm = sys.dof_map;

    const QuadratureRule& rule = quadrature_rule(5);
    const BasisCache cache(order, rule);
    std::vector<double> rhs(static_cast<size_t>(dm.reduced_dofs()), 0.0);
    for (int e = 0; e < mesh.triangle_count(); ++e) {
        const double det = element_jacobian(mesh, e).det;
        for (int q = 0; q < rule.size(); ++q) {
            const auto xy = detail::map_point(mesh, e, rule.points[q][0], rule.points[q][1]);
            const auto fv = f(xy[0], xy[1]);
            const double w = rule.weights[q] * det;
            for (int i = 0; i < cache.node_count; ++i) {
                for (int c = 0; c < 2; ++c) {
                    const int r = dm.full_to_reduced(dm.global_dof(0, e, i, c));
                    if (r >= 0) rhs[r] += w * cache.at[q].value[i] * fv[c];
                }
            }
        }
    }

    try {
        const LuFactors lu(sys.a, LuOrdering::natural);
        return split_two_field(dm, lu.solve(rhs));
    } catch (const SingularMatrixError&) {
        throw std::runtime_error("solve_two_field_source: singular operator (assembly bug)");
    }
}

}  // namespace ossfem
