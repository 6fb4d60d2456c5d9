#include "mcp/cg.hpp"

#include <cmath>
#include <stdexcept>

namespace mcp {

Vector cg_solve(const SparseMatrix& a, const Vector& b, const Preconditioner& m,
                double rtol, std::size_t max_iter, LinearSolveStats& stats) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("cg_solve: matrix not square");
    if (b.size() != a.n_rows) throw std::invalid_argument("cg_solve: dimension mismatch");
    if (!all_finite(b)) throw std::invalid_argument("cg_solve: non-finite right-hand side");

    const std::size_t n = a.n_rows;
    if (max_iter == 0) max_iter = n;
    stats = LinearSolveStats{};

    Vector x(n, 0.0);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) return x;

    Vector r = b;
    Vector z = m.apply(r);
    Vector p = z;
    double rz = dot(r, z);
    double rnorm = bnorm;

    while (stats.iterations < max_iter) {
        if (!(rz > 0.0) || !std::isfinite(rz)) {
            stats.breakdown_flag = true;
            break;
        }
        Vector ap = spmv(a, p);
        const double pap = dot(p, ap);
        if (!(pap > 0.0) || !std::isfinite(pap)) {
            stats.breakdown_flag = true;  // non-SPD signal; keep best iterate
            break;
        }
        const double alpha = rz / pap;
        axpy(alpha, p, x);
        axpy(-alpha, ap, r);
        ++stats.iterations;
        rnorm = norm2(r);
        if (rnorm <= rtol * bnorm) break;
        z = m.apply(r);
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    stats.achieved_relative_residual = rnorm / bnorm;
    if (stats.iterations >= max_iter && stats.achieved_relative_residual > rtol)
        stats.breakdown_flag = true;
    return x;
}

}  // namespace mcp
