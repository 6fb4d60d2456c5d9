#pragma once

#include "mcp/linear_solver.hpp"
#include "mcp/problem.hpp"
#include "mcp/reformulation.hpp"

namespace mcp {

/// Per-iteration state of the semismooth method.
struct SemismoothState {
    Vector x;
    Vector f;
    Vector phi;
    double psi = 0.0;
    DiagonalPair diag;
    IndexPartition partition;
    Vector direction;
    Vector grad_psi;
    std::size_t k = 0;
};

/// Computes the active-set semismooth direction: the active block is the
/// closed-form diagonal solve, the inactive block solves the diagonally
/// perturbed reduced system to relative residual inner_rtol.
Vector semismooth_direction(const SemismoothState& state, const SparseMatrix& j,
                            const LinearOptions& linear, double inner_rtol,
                            LinearSolveStats& stats);

/// True iff grad' d <= -rho * ||d||^p; false means d is replaced by the
/// negative merit gradient.
bool descent_test(const Vector& grad_psi, const Vector& d, double rho, double p_exp);

struct ArmijoResult {
    bool accepted = false;
    std::size_t backtracks = 0;  // accepted index i, step = beta^i
    double step = 0.0;
    Vector x;
    Vector f;
    Vector phi;
    double psi = 0.0;
};

/// Backtracking Armijo search on the merit function along d.
ArmijoResult armijo_search(const MCProblem& problem, const SemismoothState& state,
                           const Vector& d, double directional_derivative,
                           double beta, double sigma, std::size_t max_backtracks);

/// Active-set semismooth method. x0 need not be feasible.
std::pair<Vector, SolverReport> solve_semismooth(const MCProblem& problem,
                                                 const Vector& x0,
                                                 const SolverConfig& config,
                                                 const LinearOptions& linear);

}  // namespace mcp
