#include "ossfem/linear_solve.hpp"

#include <umfpack.h>

namespace ossfem {

struct LuFactors::Impl {
    // CSC arrays of the input matrix (kept alive for solves and refinement)
    std::vector<int> ap, ai;
    std::vector<double> ax;
    void* symbolic = nullptr;
    void* numeric = nullptr;
    double control[UMFPACK_CONTROL];

    ~Impl() {
        if (numeric) umfpack_di_free_numeric(&numeric);
        if (symbolic) umfpack_di_free_symbolic(&symbolic);
    }
};

LuFactors::LuFactors(const CsrMatrix& a, LuOrdering ordering)
    : impl_(std::make_unique<Impl>()), n_(a.rows) {
    if (a.rows != a.cols) throw std::invalid_argument("lu_factor: matrix must be square");

    // CSR of A^T is CSC of A
    const CsrMatrix at = transpose(a);
    impl_->ap.assign(at.row_ptr.begin(), at.row_ptr.end());
    impl_->ai.assign(at.col_idx.begin(), at.col_idx.end());
    impl_->ax = at.values;

    umfpack_di_defaults(impl_->control);
    if (ordering == LuOrdering::natural) impl_->control[UMFPACK_ORDERING] = UMFPACK_ORDERING_NONE;

    double info[UMFPACK_INFO];
    int status = umfpack_di_symbolic(n_, n_, impl_->ap.data(), impl_->ai.data(), impl_->ax.data(),
                                     &impl_->symbolic, impl_->control, info);
    if (status != UMFPACK_OK)
        throw SingularMatrixError("lu_factor: symbolic factorization failed");
    status = umfpack_di_numeric(impl_->ap.data(), impl_->ai.data(), impl_->ax.data(), impl_->symbolic,
                                &impl_->numeric, impl_->control, info);
    if (status != UMFPACK_OK)
        throw SingularMatrixError("lu_factor: matrix is structurally or numerically singular");
}

LuFactors::~LuFactors() = default;
LuFactors::LuFactors(LuFactors&&) noexcept = default;
LuFactors& LuFactors::operator=(LuFactors&&) noexcept = default;

std::vector<double> LuFactors::solve(const std::vector<double>& rhs) const {
    if (rhs.size() != static_cast<size_t>(n_)) throw std::invalid_argument("solve: rhs length mismatch");
    std::vector<double> x(static_cast<size_t>(n_));
    double info[UMFPACK_INFO];
    const int status = umfpack_di_solve(UMFPACK_A, impl_->ap.data(), impl_->ai.data(), impl_->ax.data(),
                                        x.data(), rhs.data(), impl_->numeric, impl_->control, info);
    if (status != UMFPACK_OK) throw SingularMatrixError("solve: back-substitution failed");
    return x;
}

}  // namespace ossfem
