#include "mcp/problem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace mcp {

MCProblem::MCProblem(std::size_t dim, Vector lo, Vector hi,
                     std::function<Vector(const Vector&)> f,
                     std::function<SparseMatrix(const Vector&)> jac,
                     std::string problem_name)
    : n(dim),
      lower(std::move(lo)),
      upper(std::move(hi)),
      eval_f(std::move(f)),
      eval_jacobian(std::move(jac)),
      name(std::move(problem_name)) {
    if (lower.size() != n || upper.size() != n)
        throw std::invalid_argument(name + ": bound vectors must have length n");
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isnan(lower[i]) || std::isnan(upper[i]))
            throw std::invalid_argument(name + ": NaN bound");
        if (lower[i] == std::numeric_limits<double>::infinity())
            throw std::invalid_argument(name + ": lower bound must be < +inf");
        if (upper[i] == -std::numeric_limits<double>::infinity())
            throw std::invalid_argument(name + ": upper bound must be > -inf");
        if (!(lower[i] < upper[i]))
            throw std::invalid_argument(name + ": equal or crossed bounds are rejected");
    }
}

IndexPartition IndexPartition::from_active_flags(const std::vector<bool>& is_active) {
    IndexPartition p;
    p.full_to_reduced.assign(is_active.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < is_active.size(); ++i) {
        if (is_active[i]) {
            p.active.push_back(i);
        } else {
            p.full_to_reduced[i] = p.inactive.size();
            p.inactive.push_back(i);
        }
    }
    return p;
}

void SolverConfig::validate() const {
    if (!(tol >= 0.0)) throw std::invalid_argument("config: tol must be nonnegative");
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("config: beta in (0,1)");
    if (!(sigma > 0.0 && sigma < 0.5)) throw std::invalid_argument("config: sigma in (0,1/2)");
    if (!(rho > 0.0)) throw std::invalid_argument("config: rho must be positive");
    if (!(p_exp > 2.0)) throw std::invalid_argument("config: p_exp must exceed 2");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("config: gamma in (0,1)");
    if (!(inner_rtol > 0.0)) throw std::invalid_argument("config: inner_rtol must be positive");
    if (has_epsilon_override() && !(epsilon_override < 1.0))
        throw std::invalid_argument("config: epsilon override must lie in [0,1)");
}

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return "Converged";
        case SolveStatus::LinearSolveBudgetExhausted: return "LinearSolveBudgetExhausted";
        case SolveStatus::LineSearchFailure: return "LineSearchFailure";
        case SolveStatus::StationaryOrFailed: return "StationaryOrFailed";
        case SolveStatus::LinearSolverBreakdown: return "LinearSolverBreakdown";
        case SolveStatus::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

Vector validate_start_point(const MCProblem& problem, const Vector& x0) {
    if (x0.size() != problem.n)
        throw std::invalid_argument("start point: dimension mismatch");
    if (!all_finite(x0)) throw std::invalid_argument("start point: non-finite entry");
    Vector x = x0;
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = clamp_scalar(x[i], problem.lower[i], problem.upper[i]);
    return x;
}

double complementarity_error(const MCProblem& problem, const Vector& x) {
    Vector xc = validate_start_point(problem, x);
    Vector f = problem.eval_f(xc);
    if (!all_finite(f)) return std::numeric_limits<double>::quiet_NaN();
    double err = 0.0;
    for (std::size_t i = 0; i < problem.n; ++i) {
        const double mid = clamp_scalar(xc[i] - f[i], problem.lower[i], problem.upper[i]);
        err = std::max(err, std::abs(xc[i] - mid));
    }
    return err;
}

}  // namespace mcp
