#pragma once

#include "mcp/cg.hpp"
#include "mcp/preconditioner.hpp"
#include "mcp/sparse.hpp"

namespace mcp {

enum class KspType { ConjugateGradient, DenseLU };

const char* to_string(KspType ksp);

struct LinearOptions {
    KspType ksp = KspType::ConjugateGradient;
    PrecondKind pc = PrecondKind::ILU0;
    std::size_t block_count = 4;
    std::size_t cg_max_iter = 0;        // 0 means the system dimension
    std::size_t dense_cap = 20000;      // densification limit for DenseLU
};

/// Solves one reduced system to relative residual rtol. CG failures and
/// singular direct factorizations are reported through stats.breakdown_flag;
/// the returned iterate is then best effort (zero for a failed direct solve).
Vector solve_linear_system(const SparseMatrix& a, const Vector& b,
                           const LinearOptions& opts, double rtol,
                           LinearSolveStats& stats);

}  // namespace mcp
