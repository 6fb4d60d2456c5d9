#include "mcp/semismooth.hpp"

#include <chrono>
#include <cmath>

namespace mcp {

Vector semismooth_direction(const SemismoothState& state, const SparseMatrix& j,
                            const LinearOptions& linear, double inner_rtol,
                            LinearSolveStats& stats) {
    const std::size_t n = state.x.size();
    stats = LinearSolveStats{};
    Vector d(n, 0.0);

    // active block: closed-form diagonal inversion, with a floor guarding
    // roundoff (d_a is bounded away from zero on the active set for eps < 1)
    Vector d_active(state.partition.active.size());
    for (std::size_t a = 0; a < state.partition.active.size(); ++a) {
        const std::size_t i = state.partition.active[a];
        d_active[a] = -state.phi[i] / std::max(state.diag.d_a[i], 1e-10);
        d[i] = d_active[a];
    }

    const auto& inactive = state.partition.inactive;
    if (inactive.empty()) return d;

    SparseMatrix j_ii = extract_submatrix(j, inactive, inactive);
    Vector perturbation(inactive.size());
    Vector rhs(inactive.size());
    for (std::size_t r = 0; r < inactive.size(); ++r) {
        const std::size_t i = inactive[r];
        perturbation[r] = state.diag.d_a[i] / state.diag.d_b[i];
        rhs[r] = -state.phi[i] / state.diag.d_b[i];
    }
    if (!state.partition.active.empty()) {
        SparseMatrix j_ia = extract_submatrix(j, inactive, state.partition.active);
        Vector coupling = spmv(j_ia, d_active);
        for (std::size_t r = 0; r < inactive.size(); ++r) rhs[r] -= coupling[r];
    }
    SparseMatrix reduced = add_diagonal(j_ii, perturbation);
    Vector d_inactive = solve_linear_system(reduced, rhs, linear, inner_rtol, stats);
    for (std::size_t r = 0; r < inactive.size(); ++r) d[inactive[r]] = d_inactive[r];
    return d;
}

bool descent_test(const Vector& grad_psi, const Vector& d, double rho, double p_exp) {
    const double slope = dot(grad_psi, d);
    return slope <= -rho * std::pow(norm2(d), p_exp);
}

ArmijoResult armijo_search(const MCProblem& problem, const SemismoothState& state,
                           const Vector& d, double directional_derivative,
                           double beta, double sigma, std::size_t max_backtracks) {
    ArmijoResult result;
    double step = 1.0;
    for (std::size_t i = 0; i <= max_backtracks; ++i, step *= beta) {
        Vector xt = state.x;
        axpy(step, d, xt);
        Vector ft = problem.eval_f(xt);
        if (!all_finite(ft)) continue;
        Vector phit = residual_phi(problem, xt, ft);
        const double psit = merit(phit);
        if (psit <= state.psi + sigma * step * directional_derivative) {
            result.accepted = true;
            result.backtracks = i;
            result.step = step;
            result.x = std::move(xt);
            result.f = std::move(ft);
            result.phi = std::move(phit);
            result.psi = psit;
            return result;
        }
    }
    return result;
}

std::pair<Vector, SolverReport> solve_semismooth(const MCProblem& problem,
                                                 const Vector& x0,
                                                 const SolverConfig& config,
                                                 const LinearOptions& linear) {
    config.validate();
    SolverReport report;
    if (x0.size() != problem.n || !all_finite(x0)) {
        report.status = SolveStatus::InvalidInput;
        return {x0, report};
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&t0] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    SemismoothState state;
    state.x = x0;
    state.f = problem.eval_f(state.x);
    if (!all_finite(state.f)) {
        report.status = SolveStatus::InvalidInput;
        report.wall_time_seconds = elapsed();
        return {state.x, report};
    }
    state.phi = residual_phi(problem, state.x, state.f);
    state.psi = merit(state.phi);

    while (true) {
        const double residual = norm2(state.phi);
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
        state.diag = subdiff_diagonals(problem, state.x, state.f);
        const ActiveSetRule rule =
            active_epsilon(state.phi, j, config.epsilon_override);
        state.partition = partition_by_db(state.diag, rule);
        state.grad_psi = merit_gradient(j, state.diag, state.phi);

        LinearSolveStats stats;
        state.direction =
            semismooth_direction(state, j, linear, config.inner_rtol, stats);
        ++report.linear_solves;
        report.inner_iterations_total += stats.iterations;

        bool fallback = false;
        if (!all_finite(state.direction) ||
            !descent_test(state.grad_psi, state.direction, config.rho, config.p_exp)) {
            state.direction = state.grad_psi;
            for (double& v : state.direction) v = -v;
            fallback = true;
        }
        const double slope = dot(state.grad_psi, state.direction);

        IterationRecord record;
        record.iteration = state.k;
        record.residual_norm = residual;
        record.active_count = state.partition.active.size();
        record.gradient_fallback = fallback;

        if (fallback && norm2(state.direction) == 0.0) {
            // stationary point of the merit function that is not a solution
            report.history.push_back(record);
            ++report.outer_iterations;
            report.status = SolveStatus::StationaryOrFailed;
            break;
        }

        ArmijoResult ls = armijo_search(problem, state, state.direction, slope,
                                        config.beta, config.sigma,
                                        config.max_backtracks);
        if (!ls.accepted) {
            report.history.push_back(record);
            ++report.outer_iterations;
            report.status = SolveStatus::LineSearchFailure;
            break;
        }

        record.step_size = ls.step;
        report.history.push_back(record);
        ++report.outer_iterations;
        state.x = std::move(ls.x);
        state.f = std::move(ls.f);
        state.phi = std::move(ls.phi);
        state.psi = ls.psi;
        ++state.k;
    }

    report.wall_time_seconds = elapsed();
    return {state.x, report};
}

}  // namespace mcp
