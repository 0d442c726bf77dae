#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ossfem {

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

/// Compressed sparse row matrix. Column indices are sorted and unique within
/// each row; stored values are never NaN.
struct CsrMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> row_ptr;  // size rows+1
    std::vector<int> col_idx;
    std::vector<double> values;

    std::int64_t nnz() const { return static_cast<std::int64_t>(values.size()); }

    static CsrMatrix zero(int rows, int cols);
    static CsrMatrix identity(int n);
    static CsrMatrix diagonal(const std::vector<double>& d);
};

/// Builds a CSR matrix from a triplet stream; duplicate (i,j) entries are
/// summed. The result is bitwise independent of triplet order: duplicates
/// are summed left to right after a canonical (row, col, value-bits) sort.
CsrMatrix assemble_csr(int rows, int cols, std::vector<Triplet> triplets);

std::vector<double> matvec(const CsrMatrix& a, const std::vector<double>& x);

/// y such that y = a^T x without forming the transpose.
std::vector<double> matvec_transpose(const CsrMatrix& a, const std::vector<double>& x);

CsrMatrix transpose(const CsrMatrix& a);
/// alpha*a + beta*b (same dimensions); entries that cancel exactly are kept.
CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b, double alpha = 1.0, double beta = 1.0);
CsrMatrix multiply(const CsrMatrix& a, const CsrMatrix& b);
/// diag(d) * a  — scales row i by d[i].
CsrMatrix scale_rows(const CsrMatrix& a, const std::vector<double>& d);

double value_at(const CsrMatrix& a, int row, int col);

/// Coordinate-format Matrix Market export of an assembled matrix.
void write_matrix_market(const CsrMatrix& a, const std::string& path);

}  // namespace ossfem
