#include "mcp/reformulation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class BoundPattern { LowerOnly, UpperOnly, Free, Both };

BoundPattern pattern(double lo, double hi) {
    const bool lo_finite = lo > -kInf;
    const bool hi_finite = hi < kInf;
    if (lo_finite && hi_finite) return BoundPattern::Both;
    if (lo_finite) return BoundPattern::LowerOnly;
    if (hi_finite) return BoundPattern::UpperOnly;
    return BoundPattern::Free;
}

}  // namespace

double fb(double a, double b) { return a + b - std::hypot(a, b); }

std::pair<double, double> fb_partials(double a, double b) {
    const double norm = std::hypot(a, b);
    if (norm > 0.0) return {1.0 - a / norm, 1.0 - b / norm};
    const double tie = 1.0 - 1.0 / std::sqrt(2.0);
    return {tie, tie};
}

Vector residual_phi(const MCProblem& problem, const Vector& x, const Vector& f) {
    if (x.size() != problem.n || f.size() != problem.n)
        throw std::invalid_argument("residual_phi: dimension mismatch");
    Vector phi(problem.n);
    for (std::size_t i = 0; i < problem.n; ++i) {
        const double lo = problem.lower[i];
        const double hi = problem.upper[i];
        switch (pattern(lo, hi)) {
            case BoundPattern::LowerOnly:
                phi[i] = fb(x[i] - lo, f[i]);
                break;
            case BoundPattern::UpperOnly:
                phi[i] = -fb(hi - x[i], -f[i]);
                break;
            case BoundPattern::Free:
                phi[i] = f[i];
                break;
            case BoundPattern::Both:
                phi[i] = fb(x[i] - lo, -fb(hi - x[i], -f[i]));
                break;
        }
    }
    return phi;
}

double merit(const Vector& phi) { return 0.5 * dot(phi, phi); }

DiagonalPair subdiff_diagonals(const MCProblem& problem, const Vector& x, const Vector& f) {
    if (x.size() != problem.n || f.size() != problem.n)
        throw std::invalid_argument("subdiff_diagonals: dimension mismatch");
    DiagonalPair d{Vector(problem.n), Vector(problem.n)};
    for (std::size_t i = 0; i < problem.n; ++i) {
        const double lo = problem.lower[i];
        const double hi = problem.upper[i];
        switch (pattern(lo, hi)) {
            case BoundPattern::LowerOnly: {
                auto [p, q] = fb_partials(x[i] - lo, f[i]);
                d.d_a[i] = p;
                d.d_b[i] = q;
                break;
            }
            case BoundPattern::UpperOnly: {
                // outer negation and inner argument signs cancel
                auto [p, q] = fb_partials(hi - x[i], -f[i]);
                d.d_a[i] = p;
                d.d_b[i] = q;
                break;
            }
            case BoundPattern::Free:
                d.d_a[i] = 0.0;
                d.d_b[i] = 1.0;
                break;
            case BoundPattern::Both: {
                const double a = x[i] - lo;
                const double bq = hi - x[i];
                auto [r, s] = fb_partials(bq, -f[i]);
                const double c = -fb(bq, -f[i]);
                auto [p, q] = fb_partials(a, c);
                d.d_a[i] = p + q * r;
                d.d_b[i] = q * s;
                break;
            }
        }
    }
    return d;
}

SparseMatrix assemble_subdiff(const SparseMatrix& j, const DiagonalPair& d) {
    if (j.n_rows != j.n_cols || j.n_rows != d.d_a.size() || j.n_rows != d.d_b.size())
        throw std::invalid_argument("assemble_subdiff: dimension mismatch");
    SparseMatrix h = j;
    for (std::size_t i = 0; i < h.n_rows; ++i)
        for (std::size_t k = h.row_offsets[i]; k < h.row_offsets[i + 1]; ++k)
            h.values[k] *= d.d_b[i];
    return add_diagonal(h, d.d_a);
}

Vector merit_gradient(const SparseMatrix& j, const DiagonalPair& d, const Vector& phi) {
    if (phi.size() != d.d_a.size() || phi.size() != j.n_rows)
        throw std::invalid_argument("merit_gradient: dimension mismatch");
    Vector scaled(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) scaled[i] = d.d_b[i] * phi[i];
    Vector g = spmv_transpose(j, scaled);
    for (std::size_t i = 0; i < phi.size(); ++i) g[i] += d.d_a[i] * phi[i];
    return g;
}

ActiveSetRule active_epsilon(const Vector& phi, const SparseMatrix& j,
                             double override_value) {
    if (override_value >= 0.0) {
        if (!(override_value < 1.0))
            throw std::invalid_argument("active_epsilon: override must lie in [0,1)");
        return {override_value, ActiveSetRule::Source::Fixed};
    }
    const double half_sq = merit(phi);
    const double eps = std::min(half_sq, 1e-2) / (1.0 + j.norm1());
    return {eps, ActiveSetRule::Source::Dynamic};
}

IndexPartition partition_by_db(const DiagonalPair& d, const ActiveSetRule& rule) {
    std::vector<bool> is_active(d.d_b.size());
    for (std::size_t i = 0; i < d.d_b.size(); ++i) is_active[i] = d.d_b[i] <= rule.epsilon;
    return IndexPartition::from_active_flags(is_active);
}

}  // namespace mcp
