#include "ossfem/oracles.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <stdexcept>

#include "assembly_util.hpp"
#include "ossfem/eigsolve.hpp"
#include "ossfem/quadrature.hpp"

namespace ossfem {

double laplacian_oracle(int n, int order) {
    if (n < 4) throw std::invalid_argument("laplacian_oracle: n must be >= 4");
    const Mesh mesh = unit_square_mesh(n);
    const DofMap dm = build_dof_map(mesh, {FieldSpec{"u", 1, order, /*dirichlet=*/true}});
    const QuadratureRule& rule = quadrature_rule(2 * order);
    const detail::BasisCache cache(order, rule);

    std::vector<Triplet> ta, tm;
    std::vector<std::array<std::array<double, 2>, 6>> grad;
    for (int e = 0; e < mesh.triangle_count(); ++e) {
        const ElementJacobian jac = element_jacobian(mesh, e);
        detail::physical_gradients(cache, jac, grad);
        for (int q = 0; q < rule.size(); ++q) {
            const double w = rule.weights[q] * jac.det;
            for (int i = 0; i < cache.node_count; ++i) {
                for (int j = 0; j < cache.node_count; ++j) {
                    detail::append_reduced(dm, dm.global_dof(0, e, i, 0), dm.global_dof(0, e, j, 0),
                                           w * (grad[q][i][0] * grad[q][j][0] + grad[q][i][1] * grad[q][j][1]),
                                           ta);
                    detail::append_reduced(dm, dm.global_dof(0, e, i, 0), dm.global_dof(0, e, j, 0),
                                           w * cache.at[q].value[i] * cache.at[q].value[j], tm);
                }
            }
        }
    }
    const int nred = dm.reduced_dofs();
    const CsrMatrix a = assemble_csr(nred, nred, std::move(ta));
    const CsrMatrix m = assemble_csr(nred, nred, std::move(tm));
    return shift_invert_arnoldi(a, m, 0.0, 1, 1e-10, 12, LuOrdering::natural).pairs.front().lambda;
}

std::vector<double> dense_cross_check(const CsrMatrix& a, const CsrMatrix& m, int k) {
    const int n = a.rows;
    if (a.cols != n || m.rows != n || m.cols != n)
        throw std::invalid_argument("dense_cross_check: square matching pencil required");
    if (n > 600) throw std::invalid_argument("dense_cross_check: dimension capped at 600");
    if (k < 1) throw std::invalid_argument("dense_cross_check: k must be >= 1");

    Eigen::MatrixXd ad = Eigen::MatrixXd::Zero(n, n), md = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r < n; ++r) {
        for (int p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) ad(r, a.col_idx[p]) = a.values[p];
        for (int p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p) md(r, m.col_idx[p]) = m.values[p];
    }
    md = 0.5 * (md + md.transpose().eval());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> mes(md);
    if (mes.info() != Eigen::Success) throw std::runtime_error("dense_cross_check: M decomposition failed");
    const double dmax = mes.eigenvalues().cwiseAbs().maxCoeff();
    if (!(dmax > 0.0)) throw std::invalid_argument("dense_cross_check: M is zero, no finite eigenvalues");

    std::vector<int> range, null;
    for (int i = 0; i < n; ++i) {
        if (mes.eigenvalues()[i] > 1e-12 * dmax)
            range.push_back(i);
        else
            null.push_back(i);
    }
    if (range.empty()) throw std::invalid_argument("dense_cross_check: M has no positive mass");

    Eigen::MatrixXd qr(n, range.size()), qn(n, null.size());
    Eigen::VectorXd dr(range.size());
    for (size_t i = 0; i < range.size(); ++i) {
        qr.col(i) = mes.eigenvectors().col(range[i]);
        dr[i] = mes.eigenvalues()[range[i]];
    }
    for (size_t i = 0; i < null.size(); ++i) qn.col(i) = mes.eigenvectors().col(null[i]);

    // x = Qr xr + Qn xn; the null-block rows give xn = -Ann^{-1} Anr xr, so
    // the finite spectrum is that of the Schur complement against Dr.
    Eigen::MatrixXd schur = qr.transpose() * ad * qr;
    if (!null.empty()) {
        const Eigen::MatrixXd ann = qn.transpose() * ad * qn;
        const Eigen::MatrixXd anr = qn.transpose() * ad * qr;
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(ann);
        schur -= (qr.transpose() * ad * qn) * lu.solve(anr);
    }
    const Eigen::VectorXd dis = dr.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd c = dis.asDiagonal() * schur * dis.asDiagonal();

    Eigen::EigenSolver<Eigen::MatrixXd> es(c);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense_cross_check: eigendecomposition failed");
    std::vector<double> vals;
    for (int i = 0; i < c.rows(); ++i) {
        const auto z = es.eigenvalues()[i];
        if (std::abs(z.imag()) <= 1e-8 * std::max(1.0, std::abs(z.real()))) vals.push_back(z.real());
    }
    std::sort(vals.begin(), vals.end());
    if (static_cast<int>(vals.size()) > k) vals.resize(static_cast<size_t>(k));
    return vals;
}

}  // namespace ossfem
