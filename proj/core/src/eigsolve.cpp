#include "ossfem/eigsolve.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "ossfem/linear_solve.hpp"

namespace ossfem {

namespace {

constexpr std::uint64_t kStartSeed = 0x5EED;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

std::vector<double> random_vector(std::mt19937_64& rng, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    // (rng >> 11) * 2^-53 is uniform in [0,1) and identical on every platform.
    for (auto& x : v) x = 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
    return v;
}

struct Candidate {
    double nu_abs = 0.0;
    double lambda = 0.0;
    double residual = 0.0;
    std::vector<double> vec;   // purified, unit 2-norm
    std::vector<double> mvec;  // M * vec
};

}  // namespace

EigenSolution shift_invert_arnoldi(const CsrMatrix& a, const CsrMatrix& m, double sigma, int k,
                                   double tol, int max_restarts, LuOrdering ordering) {
    const int n = a.rows;
    if (a.rows != a.cols) throw std::invalid_argument("shift_invert_arnoldi: A must be square");
    if (m.rows != n || m.cols != n) throw std::invalid_argument("shift_invert_arnoldi: M size mismatch");
    if (k < 1) throw std::invalid_argument("shift_invert_arnoldi: k must be >= 1");

    LuFactors lu = [&] {
        try {
            return LuFactors(add(a, m, 1.0, -sigma), ordering);
        } catch (const SingularMatrixError&) {
            throw ShiftRejectedError("shift_invert_arnoldi: A - sigma*M is singular at sigma");
        }
    }();

    EigenSolution out;
    out.shift = sigma;

    auto apply_op = [&](const std::vector<double>& x) {
        ++out.op_applications;
        return lu.solve(matvec(m, x));
    };
    auto m_inner = [&](const std::vector<double>& x, const std::vector<double>& my) {
        return dot(x, my);
    };

    const int subspace = std::min(std::max(2 * k + 10, 40), n);
    std::mt19937_64 rng(kStartSeed);

    // Locked pairs: M-orthonormal among themselves, removed from every new
    // Krylov vector so restarts search the remaining spectrum.
    std::vector<std::vector<double>> locked, locked_m;
    std::vector<double> locked_lambda, locked_residual;
    std::vector<std::vector<double>> locked_out;  // pre-orthogonalization copies
    bool complex_seen_last_sweep = false;
    std::vector<double> restart_seed;

    auto deflate = [&](std::vector<double>& w) {
        for (size_t l = 0; l < locked.size(); ++l) {
            const double c = m_inner(w, locked_m[l]);
            axpy(-c, locked[l], w);
        }
    };

    for (int sweep = 0; sweep <= max_restarts && static_cast<int>(locked.size()) < k; ++sweep) {
        out.restarts = sweep;

        // Start vector: purified into the range of the transform, deflated,
        // M-normalized. Retry with fresh random draws on (semi)null starts.
        std::vector<double> v0;
        double beta = 0.0;
        for (int attempt = 0; attempt < 8; ++attempt) {
            v0 = (attempt == 0 && !restart_seed.empty()) ? restart_seed : random_vector(rng, n);
            v0 = apply_op(v0);
            deflate(v0);
            deflate(v0);
            beta = std::sqrt(std::max(0.0, dot(v0, matvec(m, v0))));
            if (beta > 1e-13 * (norm2(v0) + 1e-300)) break;
            beta = 0.0;
        }
        restart_seed.clear();
        if (beta == 0.0) {
            // No M-mass left outside the locked space: the finite spectrum is
            // exhausted.
            break;
        }
        for (auto& x : v0) x /= beta;

        std::vector<std::vector<double>> basis{v0};
        std::vector<std::vector<double>> basis_m{matvec(m, v0)};
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(subspace + 1, subspace);

        int steps = 0;
        for (int j = 0; j < subspace; ++j) {
            std::vector<double> w = apply_op(basis[j]);
            deflate(w);
            // CGS with one full re-orthogonalization pass
            for (int pass = 0; pass < 2; ++pass) {
                deflate(w);
                for (int i = 0; i <= j; ++i) {
                    const double c = m_inner(w, basis_m[i]);
                    h(i, j) += c;
                    axpy(-c, basis[i], w);
                }
            }
            std::vector<double> mw = matvec(m, w);
            const double hnext = std::sqrt(std::max(0.0, dot(w, mw)));
            h(j + 1, j) = hnext;
            steps = j + 1;
            if (hnext <= 1e-12 * std::max(1.0, h.topLeftCorner(j + 1, j + 1).norm())) break;
            for (auto& x : w) x /= hnext;
            for (auto& x : mw) x /= hnext;
            basis.push_back(std::move(w));
            basis_m.push_back(std::move(mw));
        }

        // Ritz extraction from the leading steps x steps block.
        Eigen::MatrixXd hm = h.topLeftCorner(steps, steps);
        Eigen::EigenSolver<Eigen::MatrixXd> es(hm);
        if (es.info() != Eigen::Success) throw ConvergenceError("shift_invert_arnoldi: Hessenberg decomposition failed");

        std::vector<int> order(static_cast<size_t>(steps));
        for (int i = 0; i < steps; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int i, int j) {
            return std::abs(es.eigenvalues()[i]) > std::abs(es.eigenvalues()[j]);
        });

        const double nu_max = steps > 0 ? std::abs(es.eigenvalues()[order[0]]) : 0.0;
        complex_seen_last_sweep = false;
        std::vector<Candidate> fresh;

        for (int idx : order) {
            if (static_cast<int>(locked.size()) + static_cast<int>(fresh.size()) >= k + 3) break;
            const std::complex<double> nu = es.eigenvalues()[idx];
            if (std::abs(nu) <= 1e-12 * (1.0 + nu_max)) continue;  // infinite eigenvalue
            if (std::abs(nu.imag()) > 1e-8 * std::max(1.0, std::abs(nu.real()))) {
                complex_seen_last_sweep = true;
                continue;
            }

            std::vector<double> x(static_cast<size_t>(n), 0.0);
            for (int i = 0; i < steps; ++i) {
                const double yi = es.eigenvectors()(i, idx).real();
                axpy(yi, basis[i], x);
            }
            // One extra transform application purifies components in the
            // nullspace of M and sharpens the pair.
            x = apply_op(x);
            const double xn = norm2(x);
            if (!(xn > 0.0)) continue;
            for (auto& t : x) t /= xn;

            std::vector<double> mx = matvec(m, x);
            const double xmx = dot(x, mx);
            if (!(xmx > 0.0)) continue;
            const double lambda = dot(x, matvec(a, x)) / xmx;

            std::vector<double> ax = matvec(a, x);
            std::vector<double> r = ax;
            axpy(-lambda, mx, r);
            const double residual = norm2(r) / std::max(norm2(ax), 1e-300);

            Candidate cand;
            cand.nu_abs = std::abs(nu);
            cand.lambda = lambda;
            cand.residual = residual;
            cand.vec = std::move(x);
            cand.mvec = std::move(mx);
            fresh.push_back(std::move(cand));
        }

        // Lock a dominance-ordered prefix of converged candidates; stopping
        // at the first unconverged one keeps the final selection equal to
        // the k transform-dominant (nearest-sigma) eigenvalues.
        for (auto& cand : fresh) {
            if (static_cast<int>(locked.size()) >= k) break;
            if (cand.residual > tol) {
                restart_seed = cand.vec;
                break;
            }
            std::vector<double> g = cand.vec;
            for (size_t l = 0; l < locked.size(); ++l) {
                const double c = m_inner(g, locked_m[l]);
                axpy(-c, locked[l], g);
            }
            std::vector<double> mg = matvec(m, g);
            const double gm = std::sqrt(std::max(0.0, dot(g, mg)));
            const double vm = std::sqrt(std::max(0.0, dot(cand.vec, cand.mvec)));
            if (gm <= 1e-8 * vm) continue;  // rediscovered a locked pair
            for (auto& t : g) t /= gm;
            for (auto& t : mg) t /= gm;
            locked.push_back(std::move(g));
            locked_m.push_back(std::move(mg));
            locked_lambda.push_back(cand.lambda);
            locked_residual.push_back(cand.residual);
            locked_out.push_back(std::move(cand.vec));
        }
    }

    if (static_cast<int>(locked.size()) < k) {
        if (complex_seen_last_sweep)
            throw SpectralAnomalyError(
                "shift_invert_arnoldi: persistent complex Ritz values among the requested pairs");
        throw ConvergenceError("shift_invert_arnoldi: not converged within the restart budget");
    }

    // k eigenvalues nearest sigma, sorted ascending; ties by residual.
    std::vector<int> sel(locked.size());
    for (size_t i = 0; i < sel.size(); ++i) sel[i] = static_cast<int>(i);
    std::sort(sel.begin(), sel.end(), [&](int i, int j) {
        const double di = std::abs(locked_lambda[i] - sigma), dj = std::abs(locked_lambda[j] - sigma);
        if (di != dj) return di < dj;
        return locked_residual[i] < locked_residual[j];
    });
    sel.resize(static_cast<size_t>(k));
    std::sort(sel.begin(), sel.end(), [&](int i, int j) {
        if (locked_lambda[i] != locked_lambda[j]) return locked_lambda[i] < locked_lambda[j];
        return locked_residual[i] < locked_residual[j];
    });

    for (int i : sel) {
        EigenPair p;
        p.lambda = locked_lambda[i];
        p.residual = locked_residual[i];
        p.vector = locked_out[i];
        const double nv = norm2(p.vector);
        for (auto& t : p.vector) t /= nv;
        out.pairs.push_back(std::move(p));
    }
    return out;
}

ResidualReport residual_report(const CsrMatrix& a, const CsrMatrix& m, const EigenSolution& solution,
                               double tol) {
    ResidualReport rep;
    for (size_t i = 0; i < solution.pairs.size(); ++i) {
        const auto& p = solution.pairs[i];
        if (p.vector.size() != static_cast<size_t>(a.cols))
            throw std::invalid_argument("residual_report: vector length mismatch");
        std::vector<double> ax = matvec(a, p.vector);
        std::vector<double> r = ax;
        axpy(-p.lambda, matvec(m, p.vector), r);
        const double res = norm2(r) / std::max(norm2(ax), 1e-300);
        rep.residuals.push_back(res);
        if (res > tol) rep.flagged.push_back(static_cast<int>(i));
    }
    return rep;
}

}  // namespace ossfem
