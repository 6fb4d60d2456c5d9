#pragma once

#include <cstddef>
#include <vector>

#include "mcp/sparse.hpp"
#include "mcp/vector_ops.hpp"

namespace mcp {

enum class PrecondKind { Identity, Jacobi, ILU0, BlockJacobiILU0 };

const char* to_string(PrecondKind kind);

/// Preconditioner for the conjugate gradient solver. apply() is a fixed
/// linear map with apply(0) = 0; the factors are immutable once built.
class Preconditioner {
public:
    static Preconditioner identity(std::size_t n);
    static Preconditioner jacobi(const SparseMatrix& a);
    static Preconditioner ilu0(const SparseMatrix& a);
    static Preconditioner block_jacobi_ilu0(const SparseMatrix& a, std::size_t block_count);
    static Preconditioner build(PrecondKind kind, const SparseMatrix& a,
                                std::size_t block_count = 4);

    Vector apply(const Vector& r) const;

    PrecondKind kind() const { return kind_; }
    /// Number of zero pivots replaced during ILU(0) factorization.
    std::size_t pivot_substitutions() const { return pivot_substitutions_; }

private:
    struct IluFactor {
        SparseMatrix lu;                 // L (unit lower, implicit diag) and U on A's pattern
        std::vector<std::size_t> diag;   // position of the diagonal in each row
        std::size_t row_begin = 0;       // first full-space row covered by this factor
    };

    static IluFactor factor_ilu0(const SparseMatrix& a, std::size_t row_begin,
                                 std::size_t& substitutions);
    static void ilu_solve(const IluFactor& f, const double* r, double* x);

    PrecondKind kind_ = PrecondKind::Identity;
    std::size_t n_ = 0;
    Vector diagonal_;                 // Jacobi
    std::vector<IluFactor> factors_;  // ILU0 (one factor) or block Jacobi (per block)
    std::size_t pivot_substitutions_ = 0;
};

}  // namespace mcp
