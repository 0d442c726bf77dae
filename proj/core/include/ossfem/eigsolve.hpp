#pragma once

#include <stdexcept>
#include <vector>

#include "ossfem/linear_solve.hpp"
#include "ossfem/sparse.hpp"

namespace ossfem {

/// The shift could not be factorized; retry with a perturbed shift.
struct ShiftRejectedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Requested pairs did not converge within the restart budget.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Complex Ritz values persisted among the requested pairs; for the pencils
/// assembled here the spectrum is real, so this signals an assembly bug.
struct SpectralAnomalyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EigenPair {
    double lambda = 0.0;
    std::vector<double> vector;  // unit 2-norm
    double residual = 0.0;       // ||A x - lambda M x|| / ||A x||
};

struct EigenSolution {
    std::vector<EigenPair> pairs;  // ascending by lambda
    double shift = 0.0;
    int op_applications = 0;  // (A - sigma M)^{-1} M products performed
    int restarts = 0;
};

/// Shift-invert Arnoldi for A x = lambda M x with real spectrum and
/// positive-semidefinite (possibly singular) M. Returns the k finite
/// eigenvalues nearest sigma, each with residual <= tol. Infinite
/// eigenvalues of the singular pencil are removed by the spectral transform
/// nu = 1/(lambda - sigma); Ritz values with |Im| > 1e-8*max(1,|Re|) are
/// rejected. The Krylov basis is kept M-orthonormal with full
/// reorthogonalization; converged pairs are locked and deflated between
/// restart sweeps. Deterministic: the start vector comes from a fixed seed.
EigenSolution shift_invert_arnoldi(const CsrMatrix& a, const CsrMatrix& m, double sigma, int k,
                                   double tol = 1e-10, int max_restarts = 12,
                                   LuOrdering ordering = LuOrdering::automatic);

struct ResidualReport {
    std::vector<double> residuals;
    std::vector<int> flagged;  // indices with residual above tolerance
};

ResidualReport residual_report(const CsrMatrix& a, const CsrMatrix& m, const EigenSolution& solution,
                               double tol = 1e-10);

}  // namespace ossfem
