#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <tuple>
#include <vector>

#include "mcp/vector_ops.hpp"

namespace mcp {

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within each row and all stored values are finite.
struct SparseMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<std::size_t> row_offsets;  // length n_rows + 1
    std::vector<std::size_t> col_indices;  // length nnz
    std::vector<double> values;            // length nnz

    SparseMatrix() : row_offsets(1, 0) {}
    SparseMatrix(std::size_t rows, std::size_t cols)
        : n_rows(rows), n_cols(cols), row_offsets(rows + 1, 0) {}

    std::size_t nnz() const { return values.size(); }

    static SparseMatrix identity(std::size_t n);
    static SparseMatrix from_dense(const std::vector<std::vector<double>>& dense);
    /// Builds from (row, col, value) triplets; duplicates are summed.
    static SparseMatrix from_triplets(
        std::size_t rows, std::size_t cols,
        std::vector<std::tuple<std::size_t, std::size_t, double>> triplets);

    std::vector<std::vector<double>> to_dense() const;

    /// Checks CSR structural invariants, throws std::invalid_argument on violation.
    void validate() const;

    /// Maximum absolute column sum (induced 1-norm).
    double norm1() const;
    /// Maximum absolute row sum (induced inf-norm).
    double norm_inf() const;
};

Vector spmv(const SparseMatrix& a, const Vector& x);
Vector spmv_transpose(const SparseMatrix& a, const Vector& x);

/// Extracts the |rows| x |cols| submatrix A[rows, cols]. Index lists must be
/// strictly increasing and in range.
SparseMatrix extract_submatrix(const SparseMatrix& a,
                               const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& cols);

/// Returns A + diag(d); the result pattern contains every diagonal position.
SparseMatrix add_diagonal(const SparseMatrix& a, const Vector& d);

/// Writes MatrixMarket coordinate format (1-based indices).
void write_matrix_market(std::ostream& os, const SparseMatrix& a);
void write_matrix_market_file(const std::string& path, const SparseMatrix& a);

}  // namespace mcp
