#include "mcp/reduced_space.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace mcp {

Vector projected_residual(const MCProblem& problem, const Vector& x, const Vector& f) {
    if (x.size() != problem.n || f.size() != problem.n)
        throw std::invalid_argument("projected_residual: dimension mismatch");
    Vector r(problem.n);
    for (std::size_t i = 0; i < problem.n; ++i) {
        if (x[i] == problem.lower[i])
            r[i] = std::min(f[i], 0.0);
        else if (x[i] == problem.upper[i])
            r[i] = std::max(f[i], 0.0);
        else
            r[i] = f[i];
    }
    return r;
}

IndexPartition partition_reduced(const MCProblem& problem, const Vector& x,
                                 const Vector& f) {
    std::vector<bool> is_active(problem.n);
    for (std::size_t i = 0; i < problem.n; ++i)
        is_active[i] = (x[i] == problem.lower[i] && f[i] > 0.0) ||
                       (x[i] == problem.upper[i] && f[i] < 0.0);
    return IndexPartition::from_active_flags(is_active);
}

Vector reduced_direction(const ReducedSpaceState& state, const SparseMatrix& j,
                         const LinearOptions& linear, double inner_rtol,
                         LinearSolveStats& stats) {
    stats = LinearSolveStats{};
    Vector d(state.x.size(), 0.0);
    const auto& inactive = state.partition.inactive;
    if (inactive.empty()) return d;

    SparseMatrix j_ii = extract_submatrix(j, inactive, inactive);
    Vector rhs(inactive.size());
    for (std::size_t r = 0; r < inactive.size(); ++r) rhs[r] = -state.f[inactive[r]];
    Vector d_inactive = solve_linear_system(j_ii, rhs, linear, inner_rtol, stats);
    for (std::size_t r = 0; r < inactive.size(); ++r) d[inactive[r]] = d_inactive[r];
    return d;
}

ProjectedSearchResult projected_search(const MCProblem& problem,
                                       const ReducedSpaceState& state,
                                       const Vector& d, double beta, double sigma,
                                       double gamma) {
    ProjectedSearchResult result;
    const double fnorm = norm2(state.fomega);
    double step = 1.0;
    for (; step > gamma; step *= beta) {
        Vector xt = state.x;
        axpy(step, d, xt);
        for (std::size_t i = 0; i < xt.size(); ++i)
            xt[i] = clamp_scalar(xt[i], problem.lower[i], problem.upper[i]);
        Vector ft = problem.eval_f(xt);
        if (!all_finite(ft)) continue;
        Vector fot = projected_residual(problem, xt, ft);
        if (norm2(fot) <= (1.0 - sigma * step) * fnorm) {
            result.accepted = true;
            result.step = step;
            result.x = std::move(xt);
            result.f = std::move(ft);
            result.fomega = std::move(fot);
            return result;
        }
    }
    return result;
}

std::pair<Vector, SolverReport> solve_reduced_space(const MCProblem& problem,
                                                    const Vector& x0,
                                                    const SolverConfig& config,
                                                    const LinearOptions& linear) {
    config.validate();
    SolverReport report;
    Vector x;
    try {
        x = validate_start_point(problem, x0);
    } catch (const std::invalid_argument&) {
        report.status = SolveStatus::InvalidInput;
        return {x0, report};
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&t0] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    ReducedSpaceState state;
    state.x = std::move(x);
    state.f = problem.eval_f(state.x);
    if (!all_finite(state.f)) {
        report.status = SolveStatus::LinearSolverBreakdown;
        report.wall_time_seconds = elapsed();
        return {state.x, report};
    }
    state.fomega = projected_residual(problem, state.x, state.f);

    while (true) {
        const double residual = norm2(state.fomega);
        report.final_residual = residual;
        if (residual <= config.tol) {
            report.status = SolveStatus::Converged;
            break;
        }
        if (report.linear_solves >= config.max_linear_solves) {
            report.status = SolveStatus::LinearSolveBudgetExhausted;
            break;
        }

        SparseMatrix j = problem.eval_jacobian(state.x);
        state.partition = partition_reduced(problem, state.x, state.f);

        LinearSolveStats stats;
        state.direction = reduced_direction(state, j, linear, config.inner_rtol, stats);
        ++report.linear_solves;
        report.inner_iterations_total += stats.iterations;
        state.gradient_fallback = false;

        ProjectedSearchResult ls;
        bool newton_usable = all_finite(state.direction);
        if (newton_usable)
            ls = projected_search(problem, state, state.direction, config.beta,
                                  config.sigma, config.gamma);
        if (!ls.accepted) {
            // fall back to the steepest-residual direction -F(x)
            state.gradient_fallback = true;
            state.direction = state.f;
            for (double& v : state.direction) v = -v;
            ls = projected_search(problem, state, state.direction, config.beta,
                                  config.sigma, config.gamma);
        }

        IterationRecord record;
        record.iteration = state.k;
        record.residual_norm = residual;
        record.active_count = state.partition.active.size();
        record.gradient_fallback = state.gradient_fallback;

        if (!ls.accepted) {
            // second failure within the same iteration: stop
            report.history.push_back(record);
            ++report.outer_iterations;
            report.status = SolveStatus::StationaryOrFailed;
            break;
        }

        record.step_size = ls.step;
        report.history.push_back(record);
        ++report.outer_iterations;
        state.x = std::move(ls.x);
        state.f = std::move(ls.f);
        state.fomega = std::move(ls.fomega);
        ++state.k;
    }

    report.wall_time_seconds = elapsed();
    return {state.x, report};
}

}  // namespace mcp
