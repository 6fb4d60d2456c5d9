#include "mcp/sparse.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace mcp {

SparseMatrix SparseMatrix::identity(std::size_t n) {
    SparseMatrix a(n, n);
    a.row_offsets.resize(n + 1);
    a.col_indices.resize(n);
    a.values.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        a.row_offsets[i] = i;
        a.col_indices[i] = i;
    }
    a.row_offsets[n] = n;
    return a;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<double>>& dense) {
    const std::size_t rows = dense.size();
    const std::size_t cols = rows ? dense[0].size() : 0;
    SparseMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (dense[i].size() != cols) throw std::invalid_argument("ragged dense matrix");
        for (std::size_t j = 0; j < cols; ++j) {
            if (dense[i][j] != 0.0) {
                a.col_indices.push_back(j);
                a.values.push_back(dense[i][j]);
            }
        }
        a.row_offsets[i + 1] = a.col_indices.size();
    }
    return a;
}

SparseMatrix SparseMatrix::from_triplets(
    std::size_t rows, std::size_t cols,
    std::vector<std::tuple<std::size_t, std::size_t, double>> triplets) {
    std::sort(triplets.begin(), triplets.end(),
              [](const auto& a, const auto& b) {
                  return std::tie(std::get<0>(a), std::get<1>(a)) <
                         std::tie(std::get<0>(b), std::get<1>(b));
              });
    SparseMatrix a(rows, cols);
    std::size_t current_row = 0;
    bool have_prev = false;
    std::size_t prev_r = 0, prev_c = 0;
    for (const auto& [r, c, v] : triplets) {
        if (r >= rows || c >= cols) throw std::invalid_argument("triplet out of range");
        if (have_prev && r == prev_r && c == prev_c) {
            a.values.back() += v;
            continue;
        }
        while (current_row < r) {
            a.row_offsets[current_row + 1] = a.col_indices.size();
            ++current_row;
        }
        a.col_indices.push_back(c);
        a.values.push_back(v);
        have_prev = true;
        prev_r = r;
        prev_c = c;
    }
    while (current_row < rows) {
        a.row_offsets[current_row + 1] = a.col_indices.size();
        ++current_row;
    }
    return a;
}

std::vector<std::vector<double>> SparseMatrix::to_dense() const {
    std::vector<std::vector<double>> dense(n_rows, std::vector<double>(n_cols, 0.0));
    for (std::size_t i = 0; i < n_rows; ++i)
        for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
            dense[i][col_indices[k]] += values[k];
    return dense;
}

void SparseMatrix::validate() const {
    if (row_offsets.size() != n_rows + 1) throw std::invalid_argument("bad row_offsets size");
    if (row_offsets.front() != 0 || row_offsets.back() != nnz())
        throw std::invalid_argument("bad row_offsets range");
    if (col_indices.size() != values.size()) throw std::invalid_argument("index/value mismatch");
    for (std::size_t i = 0; i < n_rows; ++i) {
        if (row_offsets[i] > row_offsets[i + 1])
            throw std::invalid_argument("row_offsets not nondecreasing");
        for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
            if (col_indices[k] >= n_cols) throw std::invalid_argument("column out of range");
            if (k > row_offsets[i] && col_indices[k] <= col_indices[k - 1])
                throw std::invalid_argument("columns not strictly increasing in row");
            if (!std::isfinite(values[k])) throw std::invalid_argument("non-finite value");
        }
    }
}

double SparseMatrix::norm1() const {
    std::vector<double> colsum(n_cols, 0.0);
    for (std::size_t k = 0; k < nnz(); ++k) colsum[col_indices[k]] += std::abs(values[k]);
    double m = 0.0;
    for (double s : colsum) m = std::max(m, s);
    return m;
}

double SparseMatrix::norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_rows; ++i) {
        double s = 0.0;
        for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
            s += std::abs(values[k]);
        m = std::max(m, s);
    }
    return m;
}

Vector spmv(const SparseMatrix& a, const Vector& x) {
    if (x.size() != a.n_cols) throw std::invalid_argument("spmv dimension mismatch");
    Vector y(a.n_rows, 0.0);
    for (std::size_t i = 0; i < a.n_rows; ++i) {
        double s = 0.0;
        for (std::size_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
            s += a.values[k] * x[a.col_indices[k]];
        y[i] = s;
    }
    return y;
}

Vector spmv_transpose(const SparseMatrix& a, const Vector& x) {
    if (x.size() != a.n_rows) throw std::invalid_argument("spmv_transpose dimension mismatch");
    Vector y(a.n_cols, 0.0);
    for (std::size_t i = 0; i < a.n_rows; ++i)
        for (std::size_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
            y[a.col_indices[k]] += a.values[k] * x[i];
    return y;
}

namespace {

void check_index_list(const std::vector<std::size_t>& idx, std::size_t limit) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] >= limit) throw std::invalid_argument("submatrix index out of range");
        if (k > 0 && idx[k] <= idx[k - 1])
            throw std::invalid_argument("submatrix indices not strictly increasing");
    }
}

}  // namespace

SparseMatrix extract_submatrix(const SparseMatrix& a,
                               const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& cols) {
    check_index_list(rows, a.n_rows);
    check_index_list(cols, a.n_cols);
    // full-to-reduced column map; SIZE_MAX marks dropped columns
    std::vector<std::size_t> colmap(a.n_cols, static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < cols.size(); ++k) colmap[cols[k]] = k;

    SparseMatrix sub(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::size_t i = rows[r];
        for (std::size_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
            const std::size_t c = colmap[a.col_indices[k]];
            if (c != static_cast<std::size_t>(-1)) {
                sub.col_indices.push_back(c);
                sub.values.push_back(a.values[k]);
            }
        }
        sub.row_offsets[r + 1] = sub.col_indices.size();
    }
    return sub;
}

SparseMatrix add_diagonal(const SparseMatrix& a, const Vector& d) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("add_diagonal: matrix not square");
    if (d.size() != a.n_rows) throw std::invalid_argument("add_diagonal: dimension mismatch");
    SparseMatrix out(a.n_rows, a.n_cols);
    out.col_indices.reserve(a.nnz() + a.n_rows);
    out.values.reserve(a.nnz() + a.n_rows);
    for (std::size_t i = 0; i < a.n_rows; ++i) {
        bool placed = false;
        for (std::size_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
            const std::size_t j = a.col_indices[k];
            if (!placed && j >= i) {
                if (j == i) {
                    out.col_indices.push_back(i);
                    out.values.push_back(a.values[k] + d[i]);
                    placed = true;
                    continue;
                }
                out.col_indices.push_back(i);
                out.values.push_back(d[i]);
                placed = true;
            }
            out.col_indices.push_back(j);
            out.values.push_back(a.values[k]);
        }
        if (!placed) {
            out.col_indices.push_back(i);
            out.values.push_back(d[i]);
        }
        out.row_offsets[i + 1] = out.col_indices.size();
    }
    return out;
}

namespace {

std::string shortest_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

void write_matrix_market(std::ostream& os, const SparseMatrix& a) {
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << a.n_rows << " " << a.n_cols << " " << a.nnz() << "\n";
    for (std::size_t i = 0; i < a.n_rows; ++i)
        for (std::size_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
            os << (i + 1) << " " << (a.col_indices[k] + 1) << " "
               << shortest_double(a.values[k]) << "\n";
}

void write_matrix_market_file(const std::string& path, const SparseMatrix& a) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_matrix_market(os, a);
}

}  // namespace mcp
