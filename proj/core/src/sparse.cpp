#include "ossfem/sparse.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "ossfem/mesh_io.hpp"

namespace ossfem {

CsrMatrix CsrMatrix::zero(int rows, int cols) {
    CsrMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_ptr.assign(static_cast<size_t>(rows) + 1, 0);
    return m;
}

CsrMatrix CsrMatrix::identity(int n) {
    return diagonal(std::vector<double>(static_cast<size_t>(n), 1.0));
}

CsrMatrix CsrMatrix::diagonal(const std::vector<double>& d) {
    CsrMatrix m;
    m.rows = m.cols = static_cast<int>(d.size());
    m.row_ptr.resize(d.size() + 1);
    m.col_idx.resize(d.size());
    m.values = d;
    for (size_t i = 0; i <= d.size(); ++i) m.row_ptr[i] = static_cast<int>(i);
    for (size_t i = 0; i < d.size(); ++i) m.col_idx[i] = static_cast<int>(i);
    return m;
}

CsrMatrix assemble_csr(int rows, int cols, std::vector<Triplet> triplets) {
    for (const auto& t : triplets) {
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
            throw std::invalid_argument("assemble_csr: index out of range");
        if (std::isnan(t.value)) throw std::invalid_argument("assemble_csr: NaN entry");
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        if (a.row != b.row) return a.row < b.row;
        if (a.col != b.col) return a.col < b.col;
        return std::bit_cast<std::uint64_t>(a.value) < std::bit_cast<std::uint64_t>(b.value);
    });

    CsrMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_ptr.assign(static_cast<size_t>(rows) + 1, 0);
    size_t i = 0;
    while (i < triplets.size()) {
        const int r = triplets[i].row, c = triplets[i].col;
        double sum = 0.0;
        while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c)
            sum += triplets[i++].value;
        m.col_idx.push_back(c);
        m.values.push_back(sum);
        ++m.row_ptr[r + 1];
    }
    for (int r = 0; r < rows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
    return m;
}

std::vector<double> matvec(const CsrMatrix& a, const std::vector<double>& x) {
    if (x.size() != static_cast<size_t>(a.cols)) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<double> y(static_cast<size_t>(a.rows), 0.0);
    for (int r = 0; r < a.rows; ++r) {
        double s = 0.0;
        for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) s += a.values[k] * x[a.col_idx[k]];
        y[r] = s;
    }
    return y;
}

std::vector<double> matvec_transpose(const CsrMatrix& a, const std::vector<double>& x) {
    if (x.size() != static_cast<size_t>(a.rows))
        throw std::invalid_argument("matvec_transpose: dimension mismatch");
    std::vector<double> y(static_cast<size_t>(a.cols), 0.0);
    for (int r = 0; r < a.rows; ++r)
        for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) y[a.col_idx[k]] += a.values[k] * x[r];
    return y;
}

CsrMatrix transpose(const CsrMatrix& a) {
    CsrMatrix t;
    t.rows = a.cols;
    t.cols = a.rows;
    t.row_ptr.assign(static_cast<size_t>(t.rows) + 1, 0);
    t.col_idx.resize(a.values.size());
    t.values.resize(a.values.size());
    for (int k = 0; k < a.nnz(); ++k) ++t.row_ptr[a.col_idx[k] + 1];
    for (int r = 0; r < t.rows; ++r) t.row_ptr[r + 1] += t.row_ptr[r];
    std::vector<int> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
    for (int r = 0; r < a.rows; ++r) {
        for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
            const int pos = next[a.col_idx[k]]++;
            t.col_idx[pos] = r;
            t.values[pos] = a.values[k];
        }
    }
    return t;
}

CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b, double alpha, double beta) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("add: dimension mismatch");
    CsrMatrix m;
    m.rows = a.rows;
    m.cols = a.cols;
    m.row_ptr.assign(static_cast<size_t>(a.rows) + 1, 0);
    for (int r = 0; r < a.rows; ++r) {
        int ia = a.row_ptr[r], ea = a.row_ptr[r + 1];
        int ib = b.row_ptr[r], eb = b.row_ptr[r + 1];
        while (ia < ea || ib < eb) {
            int c;
            double v;
            if (ib >= eb || (ia < ea && a.col_idx[ia] < b.col_idx[ib])) {
                c = a.col_idx[ia];
                v = alpha * a.values[ia++];
            } else if (ia >= ea || b.col_idx[ib] < a.col_idx[ia]) {
                c = b.col_idx[ib];
                v = beta * b.values[ib++];
            } else {
                c = a.col_idx[ia];
                v = alpha * a.values[ia++] + beta * b.values[ib++];
            }
            m.col_idx.push_back(c);
            m.values.push_back(v);
            ++m.row_ptr[r + 1];
        }
    }
    for (int r = 0; r < m.rows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
    return m;
}

CsrMatrix multiply(const CsrMatrix& a, const CsrMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("multiply: dimension mismatch");
    CsrMatrix m;
    m.rows = a.rows;
    m.cols = b.cols;
    m.row_ptr.assign(static_cast<size_t>(a.rows) + 1, 0);

    std::vector<double> acc(static_cast<size_t>(b.cols), 0.0);
    std::vector<int> mark(static_cast<size_t>(b.cols), -1);
    std::vector<int> cols_in_row;
    for (int r = 0; r < a.rows; ++r) {
        cols_in_row.clear();
        for (int ka = a.row_ptr[r]; ka < a.row_ptr[r + 1]; ++ka) {
            const int mid = a.col_idx[ka];
            const double av = a.values[ka];
            for (int kb = b.row_ptr[mid]; kb < b.row_ptr[mid + 1]; ++kb) {
                const int c = b.col_idx[kb];
                if (mark[c] != r) {
                    mark[c] = r;
                    acc[c] = 0.0;
                    cols_in_row.push_back(c);
                }
                acc[c] += av * b.values[kb];
            }
        }
        std::sort(cols_in_row.begin(), cols_in_row.end());
        for (int c : cols_in_row) {
            m.col_idx.push_back(c);
            m.values.push_back(acc[c]);
        }
        m.row_ptr[r + 1] = static_cast<int>(m.col_idx.size());
    }
    return m;
}

CsrMatrix scale_rows(const CsrMatrix& a, const std::vector<double>& d) {
    if (d.size() != static_cast<size_t>(a.rows)) throw std::invalid_argument("scale_rows: dimension mismatch");
    CsrMatrix m = a;
    for (int r = 0; r < a.rows; ++r)
        for (int k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) m.values[k] *= d[r];
    return m;
}

double value_at(const CsrMatrix& a, int row, int col) {
    for (int k = a.row_ptr[row]; k < a.row_ptr[row + 1]; ++k)
        if (a.col_idx[k] == col) return a.values[k];
    return 0.0;
}

void write_matrix_market(const CsrMatrix& a, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << "%%MatrixMarket matrix coordinate real general\n";
    f << a.rows << " " << a.cols << " " << a.nnz() << "\n";
    for (int r = 0; r < a.rows; ++r)
        for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k)
            f << (r + 1) << " " << (a.col_idx[k] + 1) << " " << format_double(a.values[k]) << "\n";
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace ossfem
