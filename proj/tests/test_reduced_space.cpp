#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <random>

#include "mcp/dense_lu.hpp"
#include "mcp/problems.hpp"
#include "mcp/reduced_space.hpp"

using namespace mcp;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ReducedSpaceState make_state(const MCProblem& p, const Vector& x) {
    ReducedSpaceState state;
    state.x = x;
    state.f = p.eval_f(x);
    state.fomega = projected_residual(p, x, state.f);
    state.partition = partition_reduced(p, x, state.f);
    return state;
}

LinearOptions exact_lu() {
    LinearOptions linear;
    linear.ksp = KspType::DenseLU;
    return linear;
}

Vector project(const MCProblem& p, Vector x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::min(std::max(x[i], p.lower[i]), p.upper[i]);
    return x;
}

}  // namespace

TEST_CASE("projected_residual examples") {
    // NCP, lower bound 0: interior keeps f, at the bound f is clipped to min(f, 0)
    MCProblem ncp(2, {0, 0}, {kInf, kInf},
                  [](const Vector&) { return Vector{3.0, -2.0}; },
                  [](const Vector&) { return SparseMatrix(2, 2); }, "c");
    CHECK(projected_residual(ncp, {0.0, 0.0}, {3.0, -2.0}) == Vector{0.0, -2.0});
    CHECK(projected_residual(ncp, {1.0, 1.0}, {3.0, -2.0}) == Vector{3.0, -2.0});

    // box [0, 1]: at the upper bound f is clipped to max(f, 0)
    MCProblem box(2, {0, 0}, {1, 1}, [](const Vector&) { return Vector{-1.0, 1.0}; },
                  [](const Vector&) { return SparseMatrix(2, 2); }, "b");
    CHECK(projected_residual(box, {1.0, 1.0}, {-1.0, 1.0}) == Vector{0.0, 1.0});
    CHECK(projected_residual(box, {1.0, 0.5}, {-1.0, 1.0}) == Vector{0.0, 1.0});
}

TEST_CASE("partition_reduced uses strict residual signs") {
    MCProblem box(4, {0, 0, 0, 0}, {1, 1, 1, 1},
                  [](const Vector&) { return Vector{1.0, 0.0, -1.0, -1.0}; },
                  [](const Vector&) { return SparseMatrix(4, 4); }, "b");
    // x0 at lower with f > 0 -> active; x1 at lower with f = 0 -> inactive;
    // x2 at lower with f < 0 -> inactive; x3 at upper with f < 0 -> active
    IndexPartition part = partition_reduced(box, {0.0, 0.0, 0.0, 1.0},
                                            {1.0, 0.0, -1.0, -1.0});
    CHECK(part.active == std::vector<std::size_t>{0, 3});
    CHECK(part.inactive == std::vector<std::size_t>{1, 2});
    // interior points are never active
    part = partition_reduced(box, {0.5, 0.5, 0.5, 0.5}, {1.0, 0.0, -1.0, -1.0});
    CHECK(part.active.empty());
}

TEST_CASE("reduced_direction identity Jacobian and empty inactive set") {
    MCProblem p(2, {0, 0}, {kInf, kInf},
                [](const Vector& x) { return Vector{x[0] - 1.0, x[1] + 2.0}; },
                [](const Vector&) { return SparseMatrix::identity(2); }, "id");
    // x = (2, 0): f = (1, 2); index 1 is active (at lower, f > 0)
    ReducedSpaceState state = make_state(p, {2.0, 0.0});
    CHECK(state.partition.active == std::vector<std::size_t>{1});
    LinearSolveStats stats;
    Vector d = reduced_direction(state, p.eval_jacobian(state.x), exact_lu(), 1e-12,
                                 stats);
    CHECK(d[0] == doctest::Approx(-1.0));  // J_II = 1, d = -f_I
    CHECK(d[1] == 0.0);

    // all variables active: zero direction, no linear work
    MCProblem all(1, {0.0}, {kInf}, [](const Vector&) { return Vector{5.0}; },
                  [](const Vector&) { return SparseMatrix::identity(1); }, "a");
    ReducedSpaceState sa = make_state(all, {0.0});
    CHECK(sa.partition.inactive.empty());
    Vector da = reduced_direction(sa, all.eval_jacobian(sa.x), exact_lu(), 1e-12, stats);
    CHECK(da == Vector{0.0});
}

TEST_CASE("reduced_direction matches dense oracle on random LCPs (derived)") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> val(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        MCProblem p = random_monotone_lcp(9, 900 + trial);
        Vector x(9);
        for (double& v : x) v = val(rng) < 0.4 ? 0.0 : val(rng);
        ReducedSpaceState state = make_state(p, x);
        SparseMatrix j = p.eval_jacobian(x);
        LinearSolveStats stats;
        Vector d = reduced_direction(state, j, exact_lu(), 1e-12, stats);
        const auto& in = state.partition.inactive;
        if (!in.empty()) {
            SparseMatrix j_ii = extract_submatrix(j, in, in);
            Vector rhs(in.size());
            for (std::size_t r = 0; r < in.size(); ++r) rhs[r] = -state.f[in[r]];
            Vector oracle = dense_lu_solve(j_ii, rhs);
            for (std::size_t r = 0; r < in.size(); ++r)
                CHECK(d[in[r]] == doctest::Approx(oracle[r]).epsilon(1e-8));
        }
        for (std::size_t a : state.partition.active) CHECK(d[a] == 0.0);
    }
}

TEST_CASE("projected_search scalar cases") {
    MCProblem p(1, {0.0}, {kInf},
                [](const Vector& x) { return Vector{x[0] - 1.0}; },
                [](const Vector&) { return SparseMatrix::identity(1); }, "s");
    ReducedSpaceState state = make_state(p, {3.0});

    // full Newton step solves the problem: accepted at beta^0
    ProjectedSearchResult r = projected_search(p, state, {-2.0}, 0.5, 1e-4, 1e-12);
    CHECK(r.accepted);
    CHECK(r.step == 1.0);
    CHECK(norm2(r.fomega) == doctest::Approx(0.0));

    // ascent direction: every trial increases the residual, search fails
    r = projected_search(p, state, {5.0}, 0.5, 1e-4, 1e-12);
    CHECK_FALSE(r.accepted);

    // zero direction cannot make progress
    r = projected_search(p, state, {0.0}, 0.5, 1e-4, 1e-12);
    CHECK_FALSE(r.accepted);
}

TEST_CASE("projected_search clamps trial points into the bounds") {
    MCProblem p(1, {0.0}, {1.0},
                [](const Vector& x) { return Vector{x[0] - 2.0}; },
                [](const Vector&) { return SparseMatrix::identity(1); }, "s");
    // solution at upper bound; overshooting direction lands outside and is projected
    ReducedSpaceState state = make_state(p, {0.5});
    ProjectedSearchResult r = projected_search(p, state, {10.0}, 0.5, 1e-4, 1e-12);
    CHECK(r.accepted);
    CHECK(r.x[0] <= 1.0);
    CHECK(r.x[0] >= 0.0);
    CHECK(norm2(r.fomega) < norm2(state.fomega));
}

TEST_CASE("projected_search respects the minimum step gamma") {
    // a direction so bad the contraction test never passes; with a large gamma
    // only a few trials are made before failing
    MCProblem p(1, {-kInf}, {kInf},
                [](const Vector& x) { return Vector{x[0]}; },
                [](const Vector&) { return SparseMatrix::identity(1); }, "s");
    ReducedSpaceState state = make_state(p, {1.0});
    ProjectedSearchResult r = projected_search(p, state, {100.0}, 0.5, 1e-4, 0.4);
    // steps tried: 1.0, 0.5 (0.25 <= gamma cutoff, since 0.25 < 0.4)
    CHECK_FALSE(r.accepted);
}

TEST_CASE("solve_reduced_space scalar and small problems") {
    SolverConfig config;
    LinearOptions linear = exact_lu();

    MCProblem boundary(1, {0.0}, {kInf},
                       [](const Vector& x) { return Vector{x[0] + 1.0}; },
                       [](const Vector&) { return SparseMatrix::identity(1); }, "b");
    auto [x1, rep1] = solve_reduced_space(boundary, {1.0}, config, linear);
    CHECK(rep1.status == SolveStatus::Converged);
    CHECK(std::abs(x1[0]) <= 1e-8);

    MCProblem two = lcp({{2, 1}, {1, 2}}, {-3, -3});
    auto [x2, rep2] = solve_reduced_space(two, {0.0, 0.0}, config, linear);
    CHECK(rep2.status == SolveStatus::Converged);
    CHECK(x2[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(x2[1] == doctest::Approx(1.0).epsilon(1e-6));

    // start at a solution
    MCProblem interior(1, {0.0}, {kInf},
                       [](const Vector& x) { return Vector{x[0] - 1.0}; },
                       [](const Vector&) { return SparseMatrix::identity(1); }, "i");
    auto [x3, rep3] = solve_reduced_space(interior, {1.0}, config, linear);
    CHECK(rep3.status == SolveStatus::Converged);
    CHECK(rep3.linear_solves == 0);
}

TEST_CASE("solve_reduced_space iterates stay feasible and residual contracts") {
    SolverConfig config;
    MCProblem p = random_monotone_lcp(10, 41);
    auto [x, report] = solve_reduced_space(p, Vector(10, 0.5), config, exact_lu());
    CHECK(report.status == SolveStatus::Converged);
    CHECK(x == project(p, x));
    CHECK(report.history.size() == report.outer_iterations);
    for (std::size_t k = 1; k < report.history.size(); ++k)
        CHECK(report.history[k].residual_norm < report.history[k - 1].residual_norm);
    CHECK(complementarity_error(p, x) <= 10.0 * config.tol);
}

TEST_CASE("solve_reduced_space clamps an infeasible start point") {
    MCProblem p = lcp({{1, 0}, {0, 1}}, {-1, -1});
    SolverConfig config;
    auto [x, report] = solve_reduced_space(p, {-5.0, -5.0}, config, exact_lu());
    CHECK(report.status == SolveStatus::Converged);
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(1.0));
}

TEST_CASE("solve_reduced_space opposite-direction fallback and failure status") {
    // F not defined by a monotone map: x^2 - 1 with x >= 0 started where the
    // Newton model is poor still converges via the safeguards, or reports a
    // line-search failure -- it must not loop forever or crash
    MCProblem p(1, {0.0}, {kInf},
                [](const Vector& x) { return Vector{x[0] * x[0] - 1.0}; },
                [](const Vector& x) {
                    return SparseMatrix::from_dense({{2.0 * x[0]}});
                },
                "sq");
    SolverConfig config;
    auto [x, report] = solve_reduced_space(p, {2.0}, config, exact_lu());
    CHECK(report.status == SolveStatus::Converged);
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("solve_reduced_space flags non-finite F as a breakdown") {
    MCProblem bad(1, {0.0}, {kInf},
                  [](const Vector&) {
                      return Vector{std::numeric_limits<double>::quiet_NaN()};
                  },
                  [](const Vector&) { return SparseMatrix::identity(1); }, "nan");
    SolverConfig config;
    auto [x, report] = solve_reduced_space(bad, {1.0}, config, exact_lu());
    CHECK(report.status == SolveStatus::LinearSolverBreakdown);
}

TEST_CASE("solve_reduced_space budget exhaustion") {
    SolverConfig config;
    config.max_linear_solves = 1;
    config.tol = 1e-14;
    MCProblem p = random_monotone_lcp(8, 55);
    LinearOptions linear;
    linear.pc = PrecondKind::Jacobi;
    config.inner_rtol = 0.9;
    auto [x, report] = solve_reduced_space(p, Vector(8, 0.0), config, linear);
    if (report.status != SolveStatus::Converged) {
        CHECK(report.status == SolveStatus::LinearSolveBudgetExhausted);
        CHECK(report.linear_solves == 1);
    }
}

TEST_CASE("projection is idempotent and non-expansive (property)") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    MCProblem p(3, {-1, 0, 2}, {1, 5, kInf},
                [](const Vector& x) { return x; },
                [](const Vector&) { return SparseMatrix::identity(3); }, "p");
    for (int trial = 0; trial < 100; ++trial) {
        Vector u = {val(rng), val(rng), val(rng)};
        Vector v = {val(rng), val(rng), val(rng)};
        Vector pu = project(p, u);
        CHECK(project(p, pu) == pu);
        Vector pv = project(p, v);
        double duv = 0.0, dpupv = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            duv += (u[i] - v[i]) * (u[i] - v[i]);
            dpupv += (pu[i] - pv[i]) * (pu[i] - pv[i]);
        }
        CHECK(dpupv <= duv + 1e-15);
    }
}

TEST_CASE("reduced block of an SPD Jacobian is SPD (property via CG success)") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> val(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        MCProblem p = random_monotone_lcp(12, 300 + trial);
        Vector x(12);
        for (double& v : x) v = val(rng) < 0.3 ? 0.0 : val(rng);
        ReducedSpaceState state = make_state(p, x);
        SparseMatrix j = p.eval_jacobian(x);
        LinearOptions linear;  // CG + ILU0 defaults
        LinearSolveStats stats;
        reduced_direction(state, j, linear, 1e-10, stats);
        CHECK_FALSE(stats.breakdown_flag);
    }
}
