#include "mcp/linear_solver.hpp"

#include "mcp/dense_lu.hpp"

namespace mcp {

const char* to_string(KspType ksp) {
    switch (ksp) {
        case KspType::ConjugateGradient: return "cg";
        case KspType::DenseLU: return "lu";
    }
    return "unknown";
}

Vector solve_linear_system(const SparseMatrix& a, const Vector& b,
                           const LinearOptions& opts, double rtol,
                           LinearSolveStats& stats) {
    stats = LinearSolveStats{};
    if (opts.ksp == KspType::DenseLU) {
        try {
            Vector x = dense_lu_solve(a, b, opts.dense_cap);
            if (!all_finite(x)) {
                stats.breakdown_flag = true;
                return Vector(b.size(), 0.0);
            }
            const double bnorm = norm2(b);
            if (bnorm > 0.0) {
                Vector r = spmv(a, x);
                for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
                stats.achieved_relative_residual = norm2(r) / bnorm;
            }
            return x;
        } catch (const SingularMatrixError&) {
            stats.breakdown_flag = true;
            return Vector(b.size(), 0.0);
        }
    }
    Preconditioner m = [&] {
        try {
            return Preconditioner::build(opts.pc, a, opts.block_count);
        } catch (const std::invalid_argument&) {
            // factored preconditioners need a structurally nonzero diagonal;
            // degrade to plain CG when the matrix lacks one
            return Preconditioner::identity(a.n_rows);
        }
    }();
    return cg_solve(a, b, m, rtol, opts.cg_max_iter, stats);
}

}  // namespace mcp
