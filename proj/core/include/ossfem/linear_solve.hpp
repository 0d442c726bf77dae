#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "ossfem/sparse.hpp"

namespace ossfem {

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Column ordering for the factorization. `automatic` lets the backend pick a
/// fill-reducing ordering; `natural` keeps the caller's numbering, which the
/// assembled systems already arrange in nested-dissection order.
enum class LuOrdering { automatic, natural };

/// Sparse LU factorization of a square matrix with row pivoting, reusable for
/// repeated solves. Backed by UMFPACK.
class LuFactors {
public:
    explicit LuFactors(const CsrMatrix& a, LuOrdering ordering = LuOrdering::automatic);
    ~LuFactors();
    LuFactors(LuFactors&&) noexcept;
    LuFactors& operator=(LuFactors&&) noexcept;
    LuFactors(const LuFactors&) = delete;
    LuFactors& operator=(const LuFactors&) = delete;

    int size() const { return n_; }
    std::vector<double> solve(const std::vector<double>& rhs) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int n_ = 0;
};

inline LuFactors lu_factor(const CsrMatrix& a, LuOrdering ordering = LuOrdering::automatic) {
    return LuFactors(a, ordering);
}

}  // namespace ossfem
