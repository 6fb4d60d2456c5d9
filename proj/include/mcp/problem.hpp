#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mcp/sparse.hpp"
#include "mcp/vector_ops.hpp"

namespace mcp {

/// A box-constrained complementarity problem: find l <= x <= u with
/// F_i(x) >= 0 where x_i = l_i, F_i(x) <= 0 where x_i = u_i, and
/// F_i(x) = 0 where l_i < x_i < u_i. Infinite bounds use IEEE infinities.
/// Evaluators must be pure functions of x with a fixed Jacobian sparsity
/// pattern.
struct MCProblem {
    std::size_t n = 0;
    Vector lower;
    Vector upper;
    std::function<Vector(const Vector&)> eval_f;
    std::function<SparseMatrix(const Vector&)> eval_jacobian;
    std::string name;

    MCProblem() = default;
    MCProblem(std::size_t dim, Vector lo, Vector hi,
              std::function<Vector(const Vector&)> f,
              std::function<SparseMatrix(const Vector&)> jac,
              std::string problem_name);
};

/// Active set A and inactive set I, both strictly increasing, partitioning
/// {0, ..., n-1}. full_to_reduced maps an inactive full index to its position
/// within the inactive list.
struct IndexPartition {
    std::vector<std::size_t> active;
    std::vector<std::size_t> inactive;
    std::vector<std::size_t> full_to_reduced;  // length n; SIZE_MAX for active indices

    static IndexPartition from_active_flags(const std::vector<bool>& is_active);
};

struct SolverConfig {
    double tol = 1e-8;
    std::size_t max_linear_solves = 100;
    double inner_rtol = 1e-2;
    double rho = 1e-10;
    double p_exp = 2.1;
    double beta = 0.5;
    double sigma = 1e-4;
    double gamma = 1e-12;
    std::size_t max_backtracks = 50;
    double epsilon_override = -1.0;  // < 0 means the dynamic rule is used

    bool has_epsilon_override() const { return epsilon_override >= 0.0; }
    void validate() const;  // throws std::invalid_argument
};

enum class SolveStatus {
    Converged,
    LinearSolveBudgetExhausted,
    LineSearchFailure,
    StationaryOrFailed,
    LinearSolverBreakdown,
    InvalidInput,
};

const char* to_string(SolveStatus status);

struct IterationRecord {
    std::size_t iteration = 0;
    double residual_norm = 0.0;
    double step_size = 0.0;
    std::size_t active_count = 0;
    bool gradient_fallback = false;
};

struct SolverReport {
    SolveStatus status = SolveStatus::InvalidInput;
    std::size_t outer_iterations = 0;
    std::size_t linear_solves = 0;
    std::size_t inner_iterations_total = 0;
    double final_residual = 0.0;
    std::vector<IterationRecord> history;
    double wall_time_seconds = 0.0;
};

/// Componentwise clamp of x0 into [lower, upper]. Used to seed the
/// reduced-space method; the semismooth method takes x0 as given.
/// Throws std::invalid_argument on dimension mismatch or non-finite entries.
Vector validate_start_point(const MCProblem& problem, const Vector& x0);

/// Infinity norm of the mid-function residual
/// r_i = x_i - clamp(x_i - F_i(x), lower_i, upper_i); zero exactly at
/// solutions. x is clamped into the bounds before evaluating F.
/// Returns NaN when F(x) is non-finite.
double complementarity_error(const MCProblem& problem, const Vector& x);

}  // namespace mcp
