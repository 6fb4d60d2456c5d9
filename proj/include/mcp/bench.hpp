#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcp/linear_solver.hpp"
#include "mcp/problem.hpp"
#include "mcp/problems.hpp"

#include <nlohmann/json_fwd.hpp>

namespace mcp {

inline constexpr const char* kToolVersion = "0.1.0";

/// One benchmark run: problem selection, method, linear solver, and
/// termination settings. Field defaults match SolverConfig defaults.
struct RunSpec {
    std::string problem = "jbearing";  // jbearing | obstacle | torsion | combustion | lcp
    std::size_t nx = 100;
    std::size_t ny = 100;
    double ecc = 0.9;
    double half_height = 10.0;
    double torsion_c = 5.0;
    double lambda = 5.0;
    std::size_t lcp_n = 8;
    std::uint64_t seed = 0;
    std::string method = "assm";  // assm | rsls
    std::string ksp = "cg";       // cg | lu
    std::string pc = "ilu0";      // none | jacobi | ilu0 | bjacobi
    std::size_t blocks = 4;
    double tol = 1e-8;
    std::size_t max_solves = 100;
    double inner_rtol = 1e-2;
    std::string format = "json";  // json | csv
    std::string dump_solution;    // optional CSV path
    std::string dump_matrix;      // optional MatrixMarket path

    SolverConfig solver_config() const;
    LinearOptions linear_options() const;
};

struct ReportDocument {
    RunSpec spec;
    SolverReport report;
    double complementarity_error = 0.0;
    std::string version = kToolVersion;
};

struct Table2Result {
    std::vector<ReportDocument> rows;      // lu, cg+ilu0, cg+bjacobi
    double max_pairwise_difference = 0.0;  // inf-norm across row solutions
};

struct RobustnessMethodSummary {
    std::string method;
    std::size_t successes = 0;
    std::size_t total = 0;
    std::vector<std::string> failures;
};

struct RobustnessSummary {
    std::vector<RobustnessMethodSummary> methods;  // assm, rsls
};

/// Builds the problem named by the spec; grid is set for the PDE benchmarks.
MCProblem build_problem(const RunSpec& spec, std::optional<GridSpec>& grid);

/// Default start point for the spec'd problem (clamped zero vector).
Vector default_start_point(const MCProblem& problem);

struct SingleRunResult {
    ReportDocument document;
    Vector solution;
};

SingleRunResult run_single(const RunSpec& spec);

/// Runs the spec'd problem under lu, cg+ilu0, and cg+bjacobi and reports
/// cross-solver solution agreement.
Table2Result run_table2(const RunSpec& base);

/// Runs both methods over the bundled suite; success means Converged with
/// complementarity error <= 1e-6.
RobustnessSummary run_robustness(const RunSpec& base);

int exit_code_for(SolveStatus status);

// JSON serialization (lossless round-trip)
nlohmann::json to_json(const RunSpec& spec);
RunSpec run_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ReportDocument& doc);
ReportDocument report_document_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Table2Result& result);
nlohmann::json to_json(const RobustnessSummary& summary);
RobustnessSummary robustness_from_json(const nlohmann::json& j);

// CSV emission
std::string to_csv(const ReportDocument& doc);
std::string to_csv(const Table2Result& result);
std::string to_csv(const RobustnessSummary& summary);

}  // namespace mcp
