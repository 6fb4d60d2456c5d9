#include "mcp/problems.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <fstream>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>
#include <tuple>

#include "mcp/dense_lu.hpp"

namespace mcp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string shortest_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Assembles the 5-point SPD stiffness matrix with face-midpoint coefficient
/// wq and the load vector b_ij = hx*hy*load(xi1, xi2). Zero Dirichlet
/// boundary: exterior neighbors contribute to the diagonal only.
template <typename Coeff, typename Load>
std::pair<SparseMatrix, Vector> assemble_stencil(const GridSpec& grid, Coeff wq,
                                                 Load load) {
    const double hx = grid.hx();
    const double hy = grid.hy();
    const double rx = hy / hx;
    const double ry = hx / hy;
    std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
    triplets.reserve(5 * grid.size());
    Vector b(grid.size(), 0.0);

    for (std::size_t j = 1; j <= grid.ny; ++j) {
        const double xi2 = static_cast<double>(j) * hy;
        for (std::size_t i = 1; i <= grid.nx; ++i) {
            const double xi1 = static_cast<double>(i) * hx;
            const std::size_t row = grid.index(i, j);
            // face coordinates are computed from the face index so the two
            // rows sharing a face get bit-identical coefficients (exact
            // symmetry of the assembled matrix)
            const double cw = rx * wq((static_cast<double>(i) - 0.5) * hx, xi2);
            const double ce = rx * wq((static_cast<double>(i) + 0.5) * hx, xi2);
            const double cs = ry * wq(xi1, (static_cast<double>(j) - 0.5) * hy);
            const double cn = ry * wq(xi1, (static_cast<double>(j) + 0.5) * hy);
            triplets.emplace_back(row, row, cw + ce + cs + cn);
            if (i > 1) triplets.emplace_back(row, grid.index(i - 1, j), -cw);
            if (i < grid.nx) triplets.emplace_back(row, grid.index(i + 1, j), -ce);
            if (j > 1) triplets.emplace_back(row, grid.index(i, j - 1), -cs);
            if (j < grid.ny) triplets.emplace_back(row, grid.index(i, j + 1), -cn);
            b[row] = hx * hy * load(xi1, xi2);
        }
    }
    return {SparseMatrix::from_triplets(grid.size(), grid.size(), std::move(triplets)),
            std::move(b)};
}

/// Problem with affine residual F(x) = Ax - b and constant Jacobian A.
MCProblem affine_problem(SparseMatrix a, Vector b, Vector lower, Vector upper,
                         std::string name) {
    auto shared_a = std::make_shared<const SparseMatrix>(std::move(a));
    auto shared_b = std::make_shared<const Vector>(std::move(b));
    const std::size_t n = shared_a->n_rows;
    auto f = [shared_a, shared_b](const Vector& x) {
        Vector y = spmv(*shared_a, x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] -= (*shared_b)[i];
        return y;
    };
    auto jac = [shared_a](const Vector&) { return *shared_a; };
    return MCProblem(n, std::move(lower), std::move(upper), std::move(f),
                     std::move(jac), std::move(name));
}

}  // namespace

GridSpec::GridSpec(std::size_t nx_, std::size_t ny_, double ex, double ey)
    : nx(nx_), ny(ny_), extent_x(ex), extent_y(ey) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("grid: nx, ny must be >= 1");
    if (!(ex > 0.0) || !(ey > 0.0))
        throw std::invalid_argument("grid: extents must be positive");
}

MCProblem journal_bearing(const GridSpec& grid, const BearingParams& params) {
    if (!(params.eccentricity > 0.0 && params.eccentricity < 1.0))
        throw std::invalid_argument("jbearing: eccentricity must lie in (0,1)");
    if (!(params.half_height > 0.0))
        throw std::invalid_argument("jbearing: half_height must be positive");
    const double ecc = params.eccentricity;
    auto wq = [ecc](double xi1, double) {
        const double c = 1.0 + ecc * std::cos(xi1);
        return c * c * c;
    };
    auto wl = [ecc](double xi1, double) { return ecc * std::sin(xi1); };
    auto [a, b] = assemble_stencil(grid, wq, wl);
    return affine_problem(std::move(a), std::move(b), Vector(grid.size(), 0.0),
                          Vector(grid.size(), kInf), "jbearing");
}

MCProblem journal_bearing(std::size_t nx, std::size_t ny, const BearingParams& params) {
    const double pi = std::acos(-1.0);
    GridSpec grid(nx, ny, 2.0 * pi, 2.0 * params.half_height);
    return journal_bearing(grid, params);
}

MCProblem obstacle(std::size_t nx, std::size_t ny) {
    GridSpec grid(nx, ny, 1.0, 1.0);
    auto [a, b] = assemble_stencil(grid, [](double, double) { return 1.0; },
                                   [](double, double) { return 0.0; });
    Vector lower(grid.size());
    const double hx = grid.hx();
    const double hy = grid.hy();
    for (std::size_t j = 1; j <= ny; ++j)
        for (std::size_t i = 1; i <= nx; ++i)
            lower[grid.index(i, j)] = std::sin(3.2 * static_cast<double>(i) * hx) *
                                      std::sin(3.3 * static_cast<double>(j) * hy);
    return affine_problem(std::move(a), std::move(b), std::move(lower),
                          Vector(grid.size(), kInf), "obstacle");
}

MCProblem torsion(std::size_t nx, std::size_t ny, double c) {
    GridSpec grid(nx, ny, 1.0, 1.0);
    auto [a, b] = assemble_stencil(grid, [](double, double) { return 1.0; },
                                   [c](double, double) { return c; });
    Vector lower(grid.size()), upper(grid.size());
    const double hx = grid.hx();
    const double hy = grid.hy();
    for (std::size_t j = 1; j <= ny; ++j)
        for (std::size_t i = 1; i <= nx; ++i) {
            const double xi1 = static_cast<double>(i) * hx;
            const double xi2 = static_cast<double>(j) * hy;
            const double dist = std::min(std::min(xi1, 1.0 - xi1),
                                         std::min(xi2, 1.0 - xi2));
            lower[grid.index(i, j)] = -dist;
            upper[grid.index(i, j)] = dist;
        }
    return affine_problem(std::move(a), std::move(b), std::move(lower),
                          std::move(upper), "torsion");
}

MCProblem combustion(std::size_t nx, std::size_t ny, double lambda) {
    if (!(lambda > 0.0 && lambda < 6.8))
        throw std::invalid_argument("combustion: lambda must lie in (0, 6.8)");
    GridSpec grid(nx, ny, 1.0, 1.0);
    auto [a, unused] = assemble_stencil(grid, [](double, double) { return 1.0; },
                                        [](double, double) { return 0.0; });
    const double scale = lambda * grid.hx() * grid.hy();
    auto shared_a = std::make_shared<const SparseMatrix>(std::move(a));
    // diagonal positions in the fixed stencil pattern
    auto diag_pos = std::make_shared<std::vector<std::size_t>>(shared_a->n_rows);
    for (std::size_t i = 0; i < shared_a->n_rows; ++i)
        for (std::size_t k = shared_a->row_offsets[i]; k < shared_a->row_offsets[i + 1]; ++k)
            if (shared_a->col_indices[k] == i) (*diag_pos)[i] = k;

    const std::size_t n = grid.size();
    auto f = [shared_a, scale](const Vector& x) {
        Vector y = spmv(*shared_a, x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] -= scale * std::exp(x[i]);
        return y;
    };
    auto jac = [shared_a, diag_pos, scale](const Vector& x) {
        SparseMatrix j = *shared_a;
        for (std::size_t i = 0; i < j.n_rows; ++i)
            j.values[(*diag_pos)[i]] -= scale * std::exp(x[i]);
        return j;
    };
    return MCProblem(n, Vector(n, 0.0), Vector(n, kInf), std::move(f),
                     std::move(jac), "combustion");
}

MCProblem lcp(const std::vector<std::vector<double>>& m, const Vector& q,
              const Vector& lower, const Vector& upper, std::string name) {
    const std::size_t n = m.size();
    if (q.size() != n) throw std::invalid_argument("lcp: dimension mismatch");
    SparseMatrix a = SparseMatrix::from_dense(m);
    Vector b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = -q[i];
    return affine_problem(std::move(a), std::move(b), lower, upper, std::move(name));
}

MCProblem lcp(const std::vector<std::vector<double>>& m, const Vector& q,
              std::string name) {
    return lcp(m, q, Vector(m.size(), 0.0), Vector(m.size(), kInf), std::move(name));
}

MCProblem random_monotone_lcp(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<std::vector<double>> b(n, std::vector<double>(n));
    for (auto& row : b)
        for (double& v : row) v = unit(rng);
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += b[k][i] * b[k][j];
            m[i][j] = s + (i == j ? 1.0 : 0.0);
        }
    Vector q(n);
    for (double& v : q) v = 2.0 * unit(rng);
    return lcp(m, q, "random_monotone_lcp_" + std::to_string(seed));
}

std::optional<Vector> lcp_brute_force(const std::vector<std::vector<double>>& m,
                                      const Vector& q) {
    const std::size_t n = m.size();
    if (n > 20) throw std::invalid_argument("lcp_brute_force: n must be <= 20");
    if (q.size() != n) throw std::invalid_argument("lcp_brute_force: dimension mismatch");
    constexpr double tol = 1e-9;

    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        // bit set: x_i free with F_i = 0; bit clear: x_i = 0
        std::vector<std::size_t> basis;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) basis.push_back(i);

        Vector x(n, 0.0);
        if (!basis.empty()) {
            std::vector<std::vector<double>> sub(basis.size(),
                                                 std::vector<double>(basis.size()));
            Vector rhs(basis.size());
            for (std::size_t r = 0; r < basis.size(); ++r) {
                for (std::size_t c = 0; c < basis.size(); ++c)
                    sub[r][c] = m[basis[r]][basis[c]];
                rhs[r] = -q[basis[r]];
            }
            Vector xb;
            try {
                xb = dense_lu_solve(SparseMatrix::from_dense(sub), rhs);
            } catch (const SingularMatrixError&) {
                continue;
            }
            bool nonneg = true;
            for (double v : xb)
                if (v < -tol) nonneg = false;
            if (!nonneg) continue;
            for (std::size_t r = 0; r < basis.size(); ++r)
                x[basis[r]] = std::max(xb[r], 0.0);
        }
        bool complementary = true;
        for (std::size_t i = 0; i < n && complementary; ++i) {
            if (mask & (1u << i)) continue;
            double fi = q[i];
            for (std::size_t j = 0; j < n; ++j) fi += m[i][j] * x[j];
            if (fi < -tol) complementary = false;
        }
        if (complementary) return x;
    }
    return std::nullopt;
}

std::vector<SuiteProblem> small_suite() {
    std::vector<SuiteProblem> suite;
    auto scalar = [](std::function<double(double)> f, std::function<double(double)> df,
                     double lo, double hi, std::string name) {
        auto fv = [f](const Vector& x) { return Vector{f(x[0])}; };
        auto jv = [df](const Vector& x) {
            return SparseMatrix::from_dense({{df(x[0])}});
        };
        return MCProblem(1, {lo}, {hi}, fv, jv, std::move(name));
    };

    suite.push_back({scalar([](double x) { return x + 1.0; },
                            [](double) { return 1.0; }, 0.0, kInf, "scalar_boundary"),
                     {1.0},
                     {{0.0}}});
    suite.push_back({scalar([](double x) { return x - 1.0; },
                            [](double) { return 1.0; }, 0.0, kInf, "scalar_interior"),
                     {3.0},
                     {{1.0}}});
    suite.push_back({scalar([](double x) { return x; }, [](double) { return 1.0; },
                            0.0, kInf, "scalar_degenerate"),
                     {0.5},
                     {{0.0}}});
    suite.push_back({scalar([](double) { return -1.0; }, [](double) { return 0.0; },
                            0.0, 1.0, "box_upper"),
                     {0.2},
                     {{1.0}}});
    suite.push_back({scalar([](double x) { return x; }, [](double) { return 1.0; },
                            -1.0, 1.0, "box_interior"),
                     {0.5},
                     {{0.0}}});
    suite.push_back({scalar([](double) { return 1.0; }, [](double) { return 0.0; },
                            0.0, 1.0, "box_lower"),
                     {0.7},
                     {{0.0}}});
    suite.push_back({scalar([](double x) { return std::exp(x) - 2.0; },
                            [](double x) { return std::exp(x); }, 0.0, kInf,
                            "scalar_nonlinear"),
                     {0.0},
                     {{std::log(2.0)}}});

    suite.push_back({lcp({{2.0, 1.0}, {1.0, 2.0}}, {-3.0, -3.0}, "lcp_pd_2"),
                     Vector(2, 0.0),
                     {{1.0, 1.0}}});
    suite.push_back({lcp({{1.0, 0.0}, {0.0, 1.0}}, {1.0, -2.0}, "lcp_identity"),
                     Vector(2, 0.0),
                     {{0.0, 2.0}}});
    suite.push_back({lcp({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 1.0}, "lcp_degenerate"),
                     {0.5, 0.5},
                     {{0.0, 0.0}}});
    suite.push_back({lcp({{2.0, 1.0}, {1.0, 2.0}}, {-6.0, -6.0}, Vector(2, 0.0),
                         Vector(2, 2.0), "lcp_box_upper"),
                     Vector(2, 0.0),
                     {{2.0, 2.0}}});
    suite.push_back({lcp({{1.0, 0.0}, {0.0, 1.0}}, {-2.0, -2.0}, Vector(2, 0.0),
                         Vector(2, 1.0), "lcp_box_saturated"),
                     Vector(2, 0.0),
                     {{1.0, 1.0}}});

    // nonmonotone instance with multiple complementary solutions
    {
        std::vector<std::vector<double>> m = {{-1.0, 0.0, 0.0, 0.0},
                                              {0.0, -1.0, 0.0, 0.0},
                                              {0.0, 0.0, 2.0, 1.0},
                                              {0.0, 0.0, 1.0, 2.0}};
        Vector q = {1.0, 1.0, -3.0, -3.0};
        std::vector<Vector> sols;
        for (double x1 : {0.0, 1.0})
            for (double x2 : {0.0, 1.0}) sols.push_back({x1, x2, 1.0, 1.0});
        suite.push_back({lcp(m, q, "lcp_nonmonotone_multi"), Vector(4, 0.0), sols});
    }

    // random strongly monotone LCPs certified by enumeration
    for (auto [n, seed] : std::vector<std::pair<std::size_t, std::uint64_t>>{
             {4, 11}, {4, 12}, {6, 21}, {6, 22}, {8, 31}, {8, 32}}) {
        MCProblem p = random_monotone_lcp(n, seed);
        std::vector<std::vector<double>> m = p.eval_jacobian(Vector(n, 0.0)).to_dense();
        Vector q = p.eval_f(Vector(n, 0.0));
        auto sol = lcp_brute_force(m, q);
        std::vector<Vector> certified;
        if (sol) certified.push_back(*sol);
        suite.push_back({std::move(p), Vector(n, 0.0), std::move(certified)});
    }

    // small discretized benchmarks, certified by the complementarity predicate
    suite.push_back({obstacle(8, 8), Vector(64, 0.0), {}});
    suite.push_back({torsion(8, 8), Vector(64, 0.0), {}});
    suite.push_back({combustion(8, 8, 6.0), Vector(64, 0.0), {}});
    suite.push_back({journal_bearing(8, 8, BearingParams{0.5, 10.0}),
                     Vector(64, 0.0),
                     {}});
    return suite;
}

void write_solution_csv(const std::string& path, const GridSpec& grid, const Vector& x) {
    if (x.size() != grid.size())
        throw std::invalid_argument("solution dump: dimension mismatch");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << "i,j,xi1,xi2,value\n";
    for (std::size_t j = 1; j <= grid.ny; ++j)
        for (std::size_t i = 1; i <= grid.nx; ++i)
            os << (i - 1) << "," << (j - 1) << ","
               << shortest_double(static_cast<double>(i) * grid.hx()) << ","
               << shortest_double(static_cast<double>(j) * grid.hy()) << ","
               << shortest_double(x[grid.index(i, j)]) << "\n";
}

}  // namespace mcp
