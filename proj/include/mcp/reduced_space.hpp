#pragma once

#include "mcp/linear_solver.hpp"
#include "mcp/problem.hpp"

namespace mcp {

/// Per-iteration state of the reduced-space method. Iterates stay within the
/// variable bounds at every iteration.
struct ReducedSpaceState {
    Vector x;
    Vector f;
    Vector fomega;
    IndexPartition partition;
    Vector direction;
    bool gradient_fallback = false;
    std::size_t k = 0;
};

/// Projected residual: f_i strictly inside the bounds, min(f_i, 0) at the
/// lower bound, max(f_i, 0) at the upper bound. x must be feasible.
Vector projected_residual(const MCProblem& problem, const Vector& x, const Vector& f);

/// Active set: x at a bound with the residual pushing outward
/// (x = l and f > 0, or x = u and f < 0). Complement is inactive.
IndexPartition partition_reduced(const MCProblem& problem, const Vector& x, const Vector& f);

/// d_A = 0; d_I solves J_II d_I = -f_I to relative residual inner_rtol.
Vector reduced_direction(const ReducedSpaceState& state, const SparseMatrix& j,
                         const LinearOptions& linear, double inner_rtol,
                         LinearSolveStats& stats);

struct ProjectedSearchResult {
    bool accepted = false;
    double step = 0.0;
    Vector x;
    Vector f;
    Vector fomega;
};

/// Tries steps beta^j with beta^j > gamma; accepts the first projected trial
/// point with ||F_Omega|| <= (1 - sigma beta^j) ||F_Omega(x)||. Failure is a
/// normal return.
ProjectedSearchResult projected_search(const MCProblem& problem,
                                       const ReducedSpaceState& state,
                                       const Vector& d, double beta, double sigma,
                                       double gamma);

/// Active-set reduced-space method; x0 is clamped into the bounds.
std::pair<Vector, SolverReport> solve_reduced_space(const MCProblem& problem,
                                                    const Vector& x0,
                                                    const SolverConfig& config,
                                                    const LinearOptions& linear);

}  // namespace mcp
