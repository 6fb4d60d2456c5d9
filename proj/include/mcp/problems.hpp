#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcp/problem.hpp"

namespace mcp {

/// Uniform interior grid for the PDE benchmarks. nx, ny interior points;
/// spacings are extent / (n + 1) and node (i, j) sits at
/// (i * hx, j * hy) for 1 <= i <= nx, 1 <= j <= ny. The unknown vector is
/// indexed row-major in j then i: idx = (j - 1) * nx + (i - 1).
struct GridSpec {
    std::size_t nx = 0;
    std::size_t ny = 0;
    double extent_x = 1.0;
    double extent_y = 1.0;

    GridSpec(std::size_t nx_, std::size_t ny_, double ex, double ey);

    double hx() const { return extent_x / static_cast<double>(nx + 1); }
    double hy() const { return extent_y / static_cast<double>(ny + 1); }
    std::size_t size() const { return nx * ny; }
    std::size_t index(std::size_t i, std::size_t j) const {
        return (j - 1) * nx + (i - 1);
    }
};

struct BearingParams {
    double eccentricity = 0.9;  // in (0, 1)
    double half_height = 10.0;  // b > 0
};

/// Journal bearing lubrication problem on (0, 2*pi) x (0, 2b):
/// NCP with lower bound 0, F the gradient of the discretized energy with
/// face-midpoint coefficients w_q = (1 + ecc*cos xi1)^3 and load
/// w_l = ecc*sin xi1.
MCProblem journal_bearing(const GridSpec& grid, const BearingParams& params);
MCProblem journal_bearing(std::size_t nx, std::size_t ny, const BearingParams& params);

/// Obstacle problem on the unit square: Dirichlet energy with lower
/// obstacle sin(3.2 xi1) * sin(3.3 xi2).
MCProblem obstacle(std::size_t nx, std::size_t ny);

/// Elastic-plastic torsion on the unit square with load constant c and box
/// bounds +-dist(., boundary).
MCProblem torsion(std::size_t nx, std::size_t ny, double c = 5.0);

/// Bratu-type combustion problem on the unit square,
/// F = L v - lambda*hx*hy*exp(v) with lower bound 0. lambda must lie in
/// (0, 6.8); beyond that the continuous problem has no solution.
MCProblem combustion(std::size_t nx, std::size_t ny, double lambda = 5.0);

/// Linear complementarity problem F(x) = Mx + q with the given bounds.
MCProblem lcp(const std::vector<std::vector<double>>& m, const Vector& q,
              const Vector& lower, const Vector& upper, std::string name = "lcp");
/// Standard LCP with lower = 0, upper = +inf.
MCProblem lcp(const std::vector<std::vector<double>>& m, const Vector& q,
              std::string name = "lcp");

/// Strongly monotone random LCP: M = B'B + I with B entries drawn uniformly
/// from [-1, 1] using the given seed; q uniform in [-2, 2].
MCProblem random_monotone_lcp(std::size_t n, std::uint64_t seed);

/// Enumerates all 2^n complementary index sets of the standard LCP
/// (lower = 0, upper = +inf) and returns the first solution found.
/// Requires n <= 20. Returns nullopt when no complementary solution exists.
std::optional<Vector> lcp_brute_force(const std::vector<std::vector<double>>& m,
                                      const Vector& q);

/// One entry of the bundled robustness suite: the problem, its start point,
/// and the certified solutions when known (empty means certification is by
/// the complementarity error predicate alone).
struct SuiteProblem {
    MCProblem problem;
    Vector x0;
    std::vector<Vector> certified_solutions;
};

/// Bundled small-problem robustness suite (>= 20 certified instances).
std::vector<SuiteProblem> small_suite();

/// Writes the "i,j,xi1,xi2,value" CSV solution dump, row-major in j then i.
void write_solution_csv(const std::string& path, const GridSpec& grid, const Vector& x);

}  // namespace mcp
