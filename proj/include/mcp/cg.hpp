#pragma once

#include <cstddef>

#include "mcp/preconditioner.hpp"
#include "mcp/sparse.hpp"
#include "mcp/vector_ops.hpp"

namespace mcp {

struct LinearSolveStats {
    std::size_t iterations = 0;
    double achieved_relative_residual = 0.0;
    bool breakdown_flag = false;
};

/// Preconditioned conjugate gradient for symmetric A. Returns the iterate with
/// ||b - Ax||_2 <= rtol * ||b||_2, or the best iterate with breakdown_flag set
/// when p'Ap <= 0 is detected or max_iter is reached. max_iter = 0 means the
/// dimension of the system. b = 0 yields x = 0 in zero iterations.
Vector cg_solve(const SparseMatrix& a, const Vector& b, const Preconditioner& m,
                double rtol, std::size_t max_iter, LinearSolveStats& stats);

}  // namespace mcp
