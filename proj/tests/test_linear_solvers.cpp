#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "mcp/cg.hpp"
#include "mcp/dense_lu.hpp"
#include "mcp/linear_solver.hpp"
#include "mcp/preconditioner.hpp"

using namespace mcp;

namespace {

SparseMatrix random_spd(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<std::vector<double>> b(n, std::vector<double>(n));
    for (auto& row : b)
        for (double& v : row) v = val(rng);
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += b[k][i] * b[k][j];
            m[i][j] = s + (i == j ? 1.0 : 0.0);
        }
    return SparseMatrix::from_dense(m);
}

Vector random_vector(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    Vector v(n);
    for (double& x : v) x = val(rng);
    return v;
}

/// 5-point Laplacian on an nx-by-nx interior grid.
SparseMatrix laplacian(std::size_t nx) {
    std::vector<std::tuple<std::size_t, std::size_t, double>> t;
    auto idx = [nx](std::size_t i, std::size_t j) { return j * nx + i; };
    for (std::size_t j = 0; j < nx; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            t.emplace_back(idx(i, j), idx(i, j), 4.0);
            if (i > 0) t.emplace_back(idx(i, j), idx(i - 1, j), -1.0);
            if (i + 1 < nx) t.emplace_back(idx(i, j), idx(i + 1, j), -1.0);
            if (j > 0) t.emplace_back(idx(i, j), idx(i, j - 1), -1.0);
            if (j + 1 < nx) t.emplace_back(idx(i, j), idx(i, j + 1), -1.0);
        }
    return SparseMatrix::from_triplets(nx * nx, nx * nx, std::move(t));
}

}  // namespace

TEST_CASE("dense_lu_solve") {
    CHECK(dense_lu_solve(SparseMatrix::from_dense({{0, 1}, {1, 0}}), {3, 7}) ==
          Vector{7, 3});
    CHECK(dense_lu_solve(SparseMatrix::identity(4), {1, 2, 3, 4}) == Vector{1, 2, 3, 4});

    std::mt19937_64 rng(3);
    SparseMatrix a = random_spd(15, rng);
    Vector b = random_vector(15, rng);
    Vector x = dense_lu_solve(a, b);
    Vector r = spmv(a, x);
    for (std::size_t i = 0; i < 15; ++i) r[i] -= b[i];
    CHECK(norm_inf(r) <= 1e-10 * norm_inf(b));

    CHECK_THROWS_AS(dense_lu_solve(SparseMatrix::from_dense({{1, 1}, {1, 1}}), {1, 1}),
                    SingularMatrixError);
}

TEST_CASE("cg_solve basics") {
    LinearSolveStats stats;
    SparseMatrix d = SparseMatrix::from_dense({{2, 0}, {0, 4}});
    Vector x = cg_solve(d, {2, 4}, Preconditioner::identity(2), 1e-12, 100, stats);
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(1.0));
    CHECK_FALSE(stats.breakdown_flag);

    x = cg_solve(d, {0, 0}, Preconditioner::identity(2), 1e-12, 100, stats);
    CHECK(x == Vector{0, 0});
    CHECK(stats.iterations == 0);
}

TEST_CASE("cg matches dense LU on random SPD systems, all preconditioners") {
    std::mt19937_64 rng(17);
    for (PrecondKind kind : {PrecondKind::Identity, PrecondKind::Jacobi,
                             PrecondKind::ILU0, PrecondKind::BlockJacobiILU0}) {
        SparseMatrix a = random_spd(20, rng);
        Vector b = random_vector(20, rng);
        Vector oracle = dense_lu_solve(a, b);
        LinearSolveStats stats;
        Vector x = cg_solve(a, b, Preconditioner::build(kind, a, 4), 1e-10, 2000, stats);
        CHECK_FALSE(stats.breakdown_flag);
        for (std::size_t i = 0; i < 20; ++i)
            CHECK(x[i] == doctest::Approx(oracle[i]).epsilon(1e-6));
    }
}

TEST_CASE("cg finite termination: <= n+5 iterations at rtol 1e-10") {
    std::mt19937_64 rng(23);
    for (std::size_t n : {10, 20, 30}) {
        SparseMatrix a = random_spd(n, rng);
        Vector b = random_vector(n, rng);
        LinearSolveStats stats;
        cg_solve(a, b, Preconditioner::identity(n), 1e-10, n + 5, stats);
        CHECK_FALSE(stats.breakdown_flag);
        CHECK(stats.iterations <= n + 5);
    }
}

TEST_CASE("cg breakdown on indefinite matrix returns best iterate, no crash") {
    SparseMatrix a = SparseMatrix::from_dense({{1, 0}, {0, -1}});
    LinearSolveStats stats;
    Vector x = cg_solve(a, {0, 1}, Preconditioner::identity(2), 1e-12, 100, stats);
    CHECK(stats.breakdown_flag);
    CHECK(all_finite(x));
}

TEST_CASE("jacobi preconditioner") {
    SparseMatrix d = SparseMatrix::from_dense({{2, 0}, {0, 4}});
    Preconditioner p = Preconditioner::jacobi(d);
    CHECK(p.apply({2, 4}) == Vector{1, 1});

    SparseMatrix zero_diag = SparseMatrix::from_dense({{0, 1}, {1, 0}});
    CHECK_THROWS_AS(Preconditioner::jacobi(zero_diag), std::invalid_argument);
}

TEST_CASE("ilu0 of a triangular matrix is an exact solve") {
    SparseMatrix l = SparseMatrix::from_dense({{2, 0, 0}, {1, 3, 0}, {0, 1, 4}});
    Preconditioner p = Preconditioner::ilu0(l);
    Vector b = {2, 5, 9};
    Vector x = p.apply(b);
    Vector r = spmv(l, x);
    for (std::size_t i = 0; i < 3; ++i) CHECK(r[i] == doctest::Approx(b[i]));
}

TEST_CASE("ilu0 preconditioning reduces CG iterations on the Laplacian") {
    SparseMatrix a = laplacian(10);
    Vector b(100, 1.0);
    LinearSolveStats plain, ilu;
    cg_solve(a, b, Preconditioner::identity(100), 1e-8, 1000, plain);
    cg_solve(a, b, Preconditioner::ilu0(a), 1e-8, 1000, ilu);
    CHECK_FALSE(plain.breakdown_flag);
    CHECK_FALSE(ilu.breakdown_flag);
    CHECK(ilu.iterations < plain.iterations);
}

TEST_CASE("preconditioner apply is linear (property)") {
    std::mt19937_64 rng(31);
    SparseMatrix a = random_spd(12, rng);
    for (PrecondKind kind : {PrecondKind::Jacobi, PrecondKind::ILU0,
                             PrecondKind::BlockJacobiILU0}) {
        Preconditioner p = Preconditioner::build(kind, a, 3);
        CHECK(norm_inf(p.apply(Vector(12, 0.0))) == 0.0);
        for (int trial = 0; trial < 5; ++trial) {
            Vector u = random_vector(12, rng);
            Vector v = random_vector(12, rng);
            const double alpha = 0.7, beta = -1.3;
            Vector combo(12);
            for (std::size_t i = 0; i < 12; ++i) combo[i] = alpha * u[i] + beta * v[i];
            Vector lhs = p.apply(combo);
            Vector pu = p.apply(u), pv = p.apply(v);
            double scale = std::max(1.0, norm_inf(lhs));
            for (std::size_t i = 0; i < 12; ++i)
                CHECK(std::abs(lhs[i] - alpha * pu[i] - beta * pv[i]) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("ilu0 requires a structural diagonal") {
    SparseMatrix off = SparseMatrix::from_dense({{0, 1}, {1, 0}});
    CHECK_THROWS_AS(Preconditioner::ilu0(off), std::invalid_argument);
}

TEST_CASE("solve_linear_system reports direct-solver breakdown via stats") {
    SparseMatrix singular = SparseMatrix::from_dense({{1, 1}, {1, 1}});
    LinearOptions opts;
    opts.ksp = KspType::DenseLU;
    LinearSolveStats stats;
    Vector x = solve_linear_system(singular, {1, 2}, opts, 1e-2, stats);
    CHECK(stats.breakdown_flag);
    CHECK(x == Vector{0, 0});
}
