#pragma once

#include <stdexcept>

#include "mcp/sparse.hpp"
#include "mcp/vector_ops.hpp"

namespace mcp {

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solves Ax = b by dense LU with partial pivoting. Intended as the direct
/// fallback at desk scale; refuses to densify beyond max_dim rows.
/// Throws SingularMatrixError when a pivot falls below 1e-14 * max|A|.
Vector dense_lu_solve(const SparseMatrix& a, const Vector& b,
                      std::size_t max_dim = 20000);

}  // namespace mcp
