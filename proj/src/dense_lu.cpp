#include "mcp/dense_lu.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace mcp {

Vector dense_lu_solve(const SparseMatrix& a, const Vector& b, std::size_t max_dim) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("dense_lu_solve: matrix not square");
    if (b.size() != a.n_rows) throw std::invalid_argument("dense_lu_solve: dimension mismatch");
    const std::size_t n = a.n_rows;
    if (n > max_dim) throw std::invalid_argument("dense_lu_solve: dimension exceeds cap");
    if (n == 0) return {};

    // densify row-major into one flat buffer; row norms feed the row-scaled
    // pivot test (a global scale would misjudge badly equilibrated matrices,
    // e.g. reduced systems with one huge diagonal entry)
    std::vector<double> m(n * n, 0.0);
    std::vector<double> row_scale(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
            m[i * n + a.col_indices[k]] = a.values[k];
            row_scale[i] = std::max(row_scale[i], std::abs(a.values[k]));
        }

    Vector x = b;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(m[perm[k] * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(m[perm[i] * n + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= 1e-14 * row_scale[perm[piv]])
            throw SingularMatrixError("dense_lu_solve: numerically singular matrix");
        std::swap(perm[k], perm[piv]);
        const double pivval = m[perm[k] * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            double* ri = &m[perm[i] * n];
            const double* rk = &m[perm[k] * n];
            const double f = ri[k] / pivval;
            if (f == 0.0) continue;
            ri[k] = f;
            for (std::size_t j = k + 1; j < n; ++j) ri[j] -= f * rk[j];
        }
    }

    // forward substitution on the permuted system
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = x[perm[i]];
        const double* ri = &m[perm[i] * n];
        for (std::size_t j = 0; j < i; ++j) s -= ri[j] * y[j];
        y[i] = s;
    }
    // back substitution
    Vector out(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        const double* ri = &m[perm[ii] * n];
        for (std::size_t j = ii + 1; j < n; ++j) s -= ri[j] * out[j];
        out[ii] = s / ri[ii];
    }
    return out;
}

}  // namespace mcp
