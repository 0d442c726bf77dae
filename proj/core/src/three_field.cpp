#include "ossfem/three_field.hpp"

#include <memory>
#include <stdexcept>

#include "assembly_util.hpp"
#include "ossfem/linear_solve.hpp"
#include "ossfem/quadrature.hpp"

namespace ossfem {

using detail::BasisCache;

namespace {

// Symmetric-gradient row of a velocity dof (local node, component c) in the
// (s11, s12, s22) layout; the 1/2 on s12 pairs with the engineering weight 2.
inline std::array<double, 3> sym_grad_row(const std::array<double, 2>& g, int c) {
    if (c == 0) return {g[0], 0.5 * g[1], 0.0};
    return {0.0, 0.5 * g[0], g[1]};
}

ElementQuantityFn make_sym_gradient_quantity(const Mesh& mesh, const DofMap& dm, int field,
                                             const QuadratureRule& rule, int order) {
    auto cache = std::make_shared<BasisCache>(order, rule);
    return [&mesh, &dm, field, cache, nq = rule.size()](int e, std::vector<int>& dofs,
                                                        std::vector<double>& coeff) {
        const int nn = cache->node_count;
        std::vector<std::array<std::array<double, 2>, 6>> grad;
        detail::physical_gradients(*cache, element_jacobian(mesh, e), grad);
        dofs.resize(static_cast<size_t>(2) * nn);
        for (int l = 0; l < nn; ++l)
            for (int c = 0; c < 2; ++c) dofs[l * 2 + c] = dm.global_dof(field, e, l, c);
        coeff.assign(static_cast<size_t>(nq) * 3 * 2 * nn, 0.0);
        for (int q = 0; q < nq; ++q) {
            for (int l = 0; l < nn; ++l) {
                for (int c = 0; c < 2; ++c) {
                    const auto row = sym_grad_row(grad[q][l], c);
                    for (int s = 0; s < 3; ++s)
                        coeff[(static_cast<size_t>(q) * 3 + s) * 2 * nn + l * 2 + c] = row[s];
                }
            }
        }
    };
}

// g = grad p - div sigma over the concatenated (pressure, stress) dofs; the
// shared projection couples the pressure and stress blocks.
ElementQuantityFn make_momentum_residual_quantity(const Mesh& mesh, const DofMap& dm, int p_field,
                                                  int s_field, const QuadratureRule& rule, int order) {
    auto cache = std::make_shared<BasisCache>(order, rule);
    return [&mesh, &dm, p_field, s_field, cache, nq = rule.size()](int e, std::vector<int>& dofs,
                                                                   std::vector<double>& coeff) {
        const int nn = cache->node_count;
        std::vector<std::array<std::array<double, 2>, 6>> grad;
        detail::physical_gradients(*cache, element_jacobian(mesh, e), grad);
        const int nloc = nn + 3 * nn;  // pressure locals then stress locals
        dofs.resize(static_cast<size_t>(nloc));
        for (int l = 0; l < nn; ++l) dofs[l] = dm.global_dof(p_field, e, l, 0);
        for (int l = 0; l < nn; ++l)
            for (int s = 0; s < 3; ++s) dofs[nn + l * 3 + s] = dm.global_dof(s_field, e, l, s);
        coeff.assign(static_cast<size_t>(nq) * 2 * nloc, 0.0);
        for (int q = 0; q < nq; ++q) {
            double* gx = &coeff[static_cast<size_t>(q * 2 + 0) * nloc];
            double* gy = &coeff[static_cast<size_t>(q * 2 + 1) * nloc];
            for (int l = 0; l < nn; ++l) {
                gx[l] = grad[q][l][0];
                gy[l] = grad[q][l][1];
                // (div sigma)_x = d_x s11 + d_y s12, (div sigma)_y = d_x s12 + d_y s22
                gx[nn + l * 3 + 0] = -grad[q][l][0];
                gx[nn + l * 3 + 1] = -grad[q][l][1];
                gy[nn + l * 3 + 1] = -grad[q][l][0];
                gy[nn + l * 3 + 2] = -grad[q][l][1];
            }
        }
    };
}

/// per-element alpha_5K = c5 * h_K^2 / mu
std::vector<double> residual_weights(const Mesh& mesh, const ThreeFieldParams& p) {
    std::vector<double> w(static_cast<size_t>(mesh.triangle_count()));
    for (int e = 0; e < mesh.triangle_count(); ++e) {
        const double h = triangle_longest_edge(mesh, e);
        w[e] = p.c5 * h * h / p.mu;
    }
    return w;
}

}  // namespace

ThreeFieldSystem assemble_three_field(const Mesh& mesh, int order, const ThreeFieldParams& params,
                                      StabRealization realization) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("assemble_three_field: order must be 1 or 2");
    if (!(params.mu > 0.0)) throw std::invalid_argument("assemble_three_field: mu must be positive");
    if (params.c3 < 0.0 || params.c4 < 0.0 || params.c5 < 0.0)
        throw std::invalid_argument("assemble_three_field: stabilization constants must be >= 0");
    if (realization == StabRealization::lumped_algebraic && order != 1)
        throw std::invalid_argument("assemble_three_field: lumped realization requires P1");

    const QuadratureRule& rule = quadrature_rule(2 * order);
    const bool implicit = realization == StabRealization::implicit_projection;
    const bool s3 = params.c3 > 0.0, s4 = params.c4 > 0.0, s5 = params.c5 > 0.0;

    std::vector<FieldSpec> fields = {
        {"velocity", 2, order, /*dirichlet=*/true},
        {"pressure", 1, order, /*dirichlet=*/false, /*pin_first=*/true},
        {"stress", 3, order},
    };
    if (implicit && s3) fields.push_back({"symgrad_proj", 3, order});
    if (implicit && s4) fields.push_back({"div_proj", 1, order});
    if (implicit && s5) fields.push_back({"residual_proj", 2, order});

    ThreeFieldSystem sys;
    sys.order = order;
    sys.params = params;
    sys.dof_map = build_dof_map(mesh, fields);
    const DofMap& dm = sys.dof_map;
    const int vel = 0, prs = 1, str = 2;
    const double inv2mu = 1.0 / (2.0 * params.mu);

    std::vector<Triplet> ta, tm;
    const BasisCache cache(order, rule);
    const int nn = cache.node_count;
    std::vector<std::array<std::array<double, 2>, 6>> grad;

    for (int e = 0; e < mesh.triangle_count(); ++e) {
        const ElementJacobian jac = element_jacobian(mesh, e);
        detail::physical_gradients(cache, jac, grad);

        double mass[6][6] = {};
        double bdiv[6][6][2] = {};
        double esym[6][6][2][3] = {};  // (vel (i,c), stress (j,s)): (sym grad v, tau)
        for (int q = 0; q < rule.size(); ++q) {
            const double w = rule.weights[q] * jac.det;
            for (int i = 0; i < nn; ++i) {
                for (int j = 0; j < nn; ++j) {
                    mass[i][j] += w * cache.at[q].value[i] * cache.at[q].value[j];
                    for (int c = 0; c < 2; ++c) {
                        bdiv[i][j][c] += w * cache.at[q].value[i] * grad[q][j][c];
                        const auto row = sym_grad_row(grad[q][i], c);
                        // engineering contraction weights (1,2,1)
                        esym[i][j][c][0] += w * row[0] * cache.at[q].value[j];
                        esym[i][j][c][1] += w * 2.0 * row[1] * cache.at[q].value[j];
                        esym[i][j][c][2] += w * row[2] * cache.at[q].value[j];
                    }
                }
            }
        }
        for (int i = 0; i < nn; ++i) {
            for (int j = 0; j < nn; ++j) {
                for (int c = 0; c < 2; ++c) {
                    detail::append_reduced(dm, dm.global_dof(vel, e, i, c), dm.global_dof(vel, e, j, c),
                                           mass[i][j], tm);
                    detail::append_reduced(dm, dm.global_dof(prs, e, i, 0), dm.global_dof(vel, e, j, c),
                                           bdiv[i][j][c], ta);
                    detail::append_reduced(dm, dm.global_dof(vel, e, j, c), dm.global_dof(prs, e, i, 0),
                                           -bdiv[i][j][c], ta);
                    for (int s = 0; s < 3; ++s) {
                        // +(sym grad v, sigma) and -(sym grad u, tau)
                        detail::append_reduced(dm, dm.global_dof(vel, e, i, c), dm.global_dof(str, e, j, s),
                                               esym[i][j][c][s], ta);
                        detail::append_reduced(dm, dm.global_dof(str, e, j, s), dm.global_dof(vel, e, i, c),
                                               -esym[i][j][c][s], ta);
                    }
                }
                // (1/2mu)(sigma, tau), s12 weighted twice
                for (int s = 0; s < 3; ++s) {
                    const double wgt = (s == 1) ? 2.0 : 1.0;
                    detail::append_reduced(dm, dm.global_dof(str, e, i, s), dm.global_dof(str, e, j, s),
                                           inv2mu * wgt * mass[i][j], ta);
                }
            }
        }
    }

    if (s3) {
        const StabQuantity q{dm.total_dofs(), 3, {1.0, 2.0, 1.0}};
        const std::vector<double> alpha3(static_cast<size_t>(mesh.triangle_count()),
                                         2.0 * params.mu * params.c3);
        detail::append_stab_term(mesh, dm, q, make_sym_gradient_quantity(mesh, dm, vel, rule, order),
                                 rule, alpha3, order, realization, "symgrad_proj", ta);
    }
    if (s4) {
        const StabQuantity q{dm.total_dofs(), 1, {1.0}};
        const std::vector<double> alpha4(static_cast<size_t>(mesh.triangle_count()),
                                         2.0 * params.mu * params.c4);
        detail::append_stab_term(mesh, dm, q,
                                 detail::make_divergence_quantity(mesh, dm, vel, rule, order), rule,
                                 alpha4, order, realization, "div_proj", ta);
    }
    if (s5) {
        const StabQuantity q{dm.total_dofs(), 2, {1.0, 1.0}};
        detail::append_stab_term(mesh, dm, q,
                                 make_momentum_residual_quantity(mesh, dm, prs, str, rule, order), rule,
                                 residual_weights(mesh, params), order, realization, "residual_proj", ta);
    }

    const int nred = dm.reduced_dofs();
    sys.a = assemble_csr(nred, nred, std::move(ta));
    sys.m = assemble_csr(nred, nred, std::move(tm));
    return sys;
}

namespace {

VelocityPressureStress split_three_field(const DofMap& dm, const std::vector<double>& reduced) {
    const std::vector<double> full = dm.expand(reduced);
    return {dm.field_slice(full, 0), dm.field_slice(full, 1), dm.field_slice(full, 2)};
}

}  // namespace

ThreeFieldEigs solve_three_field_eigs(const Mesh& mesh, int order, const ThreeFieldParams& params,
                                      int k, double tol) {
    ThreeFieldSystem sys = assemble_three_field(mesh, order, params);
    ThreeFieldEigs out;
    for (double sigma : {0.0, 1e-6 * params.mu, 1e-2 * params.mu}) {
        try {
            out.solution = shift_invert_arnoldi(sys.a, sys.m, sigma, k, tol, 12, LuOrdering::natural);
            break;
        } catch (const ShiftRejectedError&) {
            if (sigma == 1e-2 * params.mu) throw;
        }
    }
    out.fields.reserve(out.solution.pairs.size());
    for (const auto& p : out.solution.pairs)
        out.fields.push_back(split_three_field(sys.dof_map, p.vector));
    return out;
}

VelocityPressureStress solve_three_field_source(const Mesh& mesh, int order,
                                                const ThreeFieldParams& params, const VectorLoad& f) {
    ThreeFieldSystem sys = assemble_three_field(mesh, order, params);
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
        return split_three_field(dm, lu.solve(rhs));
    } catch (const SingularMatrixError&) {
        throw std::runtime_error("solve_three_field_source: singular operator (assembly bug)");
    }
}

}  // namespace ossfem
