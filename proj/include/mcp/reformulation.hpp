#pragma once

#include "mcp/problem.hpp"
#include "mcp/sparse.hpp"
#include "mcp/vector_ops.hpp"

namespace mcp {

/// Nonnegative diagonals of a B-subdifferential element
/// H = diag(d_a) + diag(d_b) * J.
struct DiagonalPair {
    Vector d_a;
    Vector d_b;
};

struct ActiveSetRule {
    enum class Source { Dynamic, Fixed };
    double epsilon = 0.0;  // in [0, 1)
    Source source = Source::Dynamic;
};

/// Fischer-Burmeister function: a + b - sqrt(a^2 + b^2).
/// Zero exactly when a >= 0, b >= 0, and ab = 0.
double fb(double a, double b);

/// Partial derivatives (1 - a/||(a,b)||, 1 - b/||(a,b)||) away from the
/// origin; at the origin the tie value (1 - 1/sqrt(2), 1 - 1/sqrt(2)).
std::pair<double, double> fb_partials(double a, double b);

/// Componentwise residual Phi(x) with f = F(x) precomputed. Bound patterns:
///   lower only:  phi(x - l, f)
///   upper only:  -phi(u - x, -f)
///   free:        f
///   both finite: phi(x - l, -phi(u - x, -f))
Vector residual_phi(const MCProblem& problem, const Vector& x, const Vector& f);

/// Merit value 0.5 * ||phi||_2^2.
double merit(const Vector& phi);

/// D_a, D_b diagonals of the chosen B-subdifferential element at x.
DiagonalPair subdiff_diagonals(const MCProblem& problem, const Vector& x, const Vector& f);

/// H = diag(d_a) + diag(d_b) * J.
SparseMatrix assemble_subdiff(const SparseMatrix& j, const DiagonalPair& d);

/// grad Psi = H' Phi = d_a .* phi + J' (d_b .* phi).
Vector merit_gradient(const SparseMatrix& j, const DiagonalPair& d, const Vector& phi);

/// Dynamic active-set threshold
/// eps = min(0.5 ||phi||^2, 1e-2) / (1 + ||J||_1); ||.||_1 is the max
/// absolute column sum. override >= 0 pins a fixed value instead.
ActiveSetRule active_epsilon(const Vector& phi, const SparseMatrix& j,
                             double override_value = -1.0);

/// Active set {i : d_b_i <= eps}, inactive complement.
IndexPartition partition_by_db(const DiagonalPair& d, const ActiveSetRule& rule);

}  // namespace mcp
