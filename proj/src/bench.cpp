#include "mcp/bench.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "mcp/reduced_space.hpp"
#include "mcp/semismooth.hpp"

namespace mcp {

namespace {

using nlohmann::json;

std::string csv_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

PrecondKind parse_pc(const std::string& pc) {
    if (pc == "none") return PrecondKind::Identity;
    if (pc == "jacobi") return PrecondKind::Jacobi;
    if (pc == "ilu0") return PrecondKind::ILU0;
    if (pc == "bjacobi") return PrecondKind::BlockJacobiILU0;
    throw std::invalid_argument("unknown preconditioner: " + pc);
}

KspType parse_ksp(const std::string& ksp) {
    if (ksp == "cg") return KspType::ConjugateGradient;
    if (ksp == "lu") return KspType::DenseLU;
    throw std::invalid_argument("unknown linear solver: " + ksp);
}

SolveStatus status_from_string(const std::string& s) {
    for (SolveStatus st :
         {SolveStatus::Converged, SolveStatus::LinearSolveBudgetExhausted,
          SolveStatus::LineSearchFailure, SolveStatus::StationaryOrFailed,
          SolveStatus::LinearSolverBreakdown, SolveStatus::InvalidInput})
        if (s == to_string(st)) return st;
    throw std::invalid_argument("unknown status: " + s);
}

std::pair<Vector, SolverReport> dispatch_solve(const MCProblem& problem,
                                               const Vector& x0,
                                               const RunSpec& spec) {
    const SolverConfig config = spec.solver_config();
    const LinearOptions linear = spec.linear_options();
    if (spec.method == "assm") return solve_semismooth(problem, x0, config, linear);
    if (spec.method == "rsls") return solve_reduced_space(problem, x0, config, linear);
    throw std::invalid_argument("unknown method: " + spec.method);
}

}  // namespace

SolverConfig RunSpec::solver_config() const {
    SolverConfig config;
    config.tol = tol;
    config.max_linear_solves = max_solves;
    config.inner_rtol = inner_rtol;
    return config;
}

LinearOptions RunSpec::linear_options() const {
    LinearOptions linear;
    linear.ksp = parse_ksp(ksp);
    linear.pc = parse_pc(pc);
    linear.block_count = blocks;
    return linear;
}

MCProblem build_problem(const RunSpec& spec, std::optional<GridSpec>& grid) {
    grid.reset();
    if (spec.problem == "jbearing") {
        const double pi = std::acos(-1.0);
        grid.emplace(spec.nx, spec.ny, 2.0 * pi, 2.0 * spec.half_height);
        return journal_bearing(*grid, BearingParams{spec.ecc, spec.half_height});
    }
    if (spec.problem == "obstacle") {
        grid.emplace(spec.nx, spec.ny, 1.0, 1.0);
        return obstacle(spec.nx, spec.ny);
    }
    if (spec.problem == "torsion") {
        grid.emplace(spec.nx, spec.ny, 1.0, 1.0);
        return torsion(spec.nx, spec.ny, spec.torsion_c);
    }
    if (spec.problem == "combustion") {
        grid.emplace(spec.nx, spec.ny, 1.0, 1.0);
        return combustion(spec.nx, spec.ny, spec.lambda);
    }
    if (spec.problem == "lcp") return random_monotone_lcp(spec.lcp_n, spec.seed);
    throw std::invalid_argument("unknown problem: " + spec.problem);
}

Vector default_start_point(const MCProblem& problem) {
    return validate_start_point(problem, Vector(problem.n, 0.0));
}

SingleRunResult run_single(const RunSpec& spec) {
    std::optional<GridSpec> grid;
    MCProblem problem = build_problem(spec, grid);
    const Vector x0 = default_start_point(problem);

    if (!spec.dump_matrix.empty())
        write_matrix_market_file(spec.dump_matrix, problem.eval_jacobian(x0));

    auto [x, report] = dispatch_solve(problem, x0, spec);

    SingleRunResult result;
    result.document.spec = spec;
    result.document.report = std::move(report);
    result.document.complementarity_error = complementarity_error(problem, x);
    result.solution = std::move(x);

    if (!spec.dump_solution.empty()) {
        if (!grid) throw std::invalid_argument("--dump-solution requires a grid problem");
        write_solution_csv(spec.dump_solution, *grid, result.solution);
    }
    return result;
}

Table2Result run_table2(const RunSpec& base) {
    Table2Result result;
    std::vector<Vector> solutions;
    for (auto [ksp, pc] : std::vector<std::pair<std::string, std::string>>{
             {"lu", "none"}, {"cg", "ilu0"}, {"cg", "bjacobi"}}) {
        RunSpec spec = base;
        spec.ksp = ksp;
        spec.pc = pc;
        spec.dump_solution.clear();
        spec.dump_matrix.clear();
        SingleRunResult run = run_single(spec);
        result.rows.push_back(std::move(run.document));
        solutions.push_back(std::move(run.solution));
    }
    for (std::size_t a = 0; a < solutions.size(); ++a)
        for (std::size_t b = a + 1; b < solutions.size(); ++b) {
            double diff = 0.0;
            for (std::size_t i = 0; i < solutions[a].size(); ++i)
                diff = std::max(diff, std::abs(solutions[a][i] - solutions[b][i]));
            result.max_pairwise_difference =
                std::max(result.max_pairwise_difference, diff);
        }
    return result;
}

RobustnessSummary run_robustness(const RunSpec& base) {
    RobustnessSummary summary;
    for (const std::string& method : {std::string("assm"), std::string("rsls")}) {
        RobustnessMethodSummary ms;
        ms.method = method;
        for (SuiteProblem& entry : small_suite()) {
            ++ms.total;
            RunSpec spec = base;
            spec.method = method;
            auto [x, report] = dispatch_solve(entry.problem, entry.x0, spec);
            const double err = complementarity_error(entry.problem, x);
            if (report.status == SolveStatus::Converged && err <= 1e-6)
                ++ms.successes;
            else
                ms.failures.push_back(entry.problem.name);
        }
        summary.methods.push_back(std::move(ms));
    }
    return summary;
}

int exit_code_for(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return 0;
        case SolveStatus::LinearSolveBudgetExhausted: return 2;
        case SolveStatus::LineSearchFailure: return 3;
        case SolveStatus::StationaryOrFailed: return 3;
        case SolveStatus::InvalidInput: return 4;
        case SolveStatus::LinearSolverBreakdown: return 5;
    }
    return 1;
}

json to_json(const RunSpec& spec) {
    return json{{"problem", spec.problem},
                {"nx", spec.nx},
                {"ny", spec.ny},
                {"ecc", spec.ecc},
                {"b", spec.half_height},
                {"c", spec.torsion_c},
                {"lambda", spec.lambda},
                {"n", spec.lcp_n},
                {"seed", spec.seed},
                {"method", spec.method},
                {"ksp", spec.ksp},
                {"pc", spec.pc},
                {"blocks", spec.blocks},
                {"tol", spec.tol},
                {"max_solves", spec.max_solves},
                {"inner_rtol", spec.inner_rtol},
                {"format", spec.format},
                {"dump_solution", spec.dump_solution},
                {"dump_matrix", spec.dump_matrix}};
}

RunSpec run_spec_from_json(const json& j) {
    RunSpec spec;
    spec.problem = j.at("problem");
    spec.nx = j.at("nx");
    spec.ny = j.at("ny");
    spec.ecc = j.at("ecc");
    spec.half_height = j.at("b");
    spec.torsion_c = j.at("c");
    spec.lambda = j.at("lambda");
    spec.lcp_n = j.at("n");
    spec.seed = j.at("seed");
    spec.method = j.at("method");
    spec.ksp = j.at("ksp");
    spec.pc = j.at("pc");
    spec.blocks = j.at("blocks");
    spec.tol = j.at("tol");
    spec.max_solves = j.at("max_solves");
    spec.inner_rtol = j.at("inner_rtol");
    spec.format = j.at("format");
    spec.dump_solution = j.at("dump_solution");
    spec.dump_matrix = j.at("dump_matrix");
    return spec;
}

json to_json(const ReportDocument& doc) {
    json history = json::array();
    for (const IterationRecord& rec : doc.report.history)
        history.push_back({{"iteration", rec.iteration},
                           {"residual_norm", rec.residual_norm},
                           {"step_size", rec.step_size},
                           {"active_count", rec.active_count},
                           {"gradient_fallback", rec.gradient_fallback}});
    return json{{"version", doc.version},
                {"spec", to_json(doc.spec)},
                {"status", to_string(doc.report.status)},
                {"outer_iterations", doc.report.outer_iterations},
                {"linear_solves", doc.report.linear_solves},
                {"inner_iterations_total", doc.report.inner_iterations_total},
                {"final_residual", doc.report.final_residual},
                {"wall_time_seconds", doc.report.wall_time_seconds},
                {"complementarity_error", doc.complementarity_error},
                {"history", std::move(history)}};
}

ReportDocument report_document_from_json(const json& j) {
    ReportDocument doc;
    doc.version = j.at("version");
    doc.spec = run_spec_from_json(j.at("spec"));
    doc.report.status = status_from_string(j.at("status"));
    doc.report.outer_iterations = j.at("outer_iterations");
    doc.report.linear_solves = j.at("linear_solves");
    doc.report.inner_iterations_total = j.at("inner_iterations_total");
    doc.report.final_residual = j.at("final_residual");
    doc.report.wall_time_seconds = j.at("wall_time_seconds");
    doc.complementarity_error = j.at("complementarity_error");
    for (const json& rec : j.at("history")) {
        IterationRecord r;
        r.iteration = rec.at("iteration");
        r.residual_norm = rec.at("residual_norm");
        r.step_size = rec.at("step_size");
        r.active_count = rec.at("active_count");
        r.gradient_fallback = rec.at("gradient_fallback");
        doc.report.history.push_back(r);
    }
    return doc;
}

json to_json(const Table2Result& result) {
    json rows = json::array();
    for (const ReportDocument& doc : result.rows) rows.push_back(to_json(doc));
    return json{{"rows", std::move(rows)},
                {"max_pairwise_difference", result.max_pairwise_difference}};
}

json to_json(const RobustnessSummary& summary) {
    json methods = json::array();
    for (const RobustnessMethodSummary& ms : summary.methods)
        methods.push_back({{"method", ms.method},
                           {"successes", ms.successes},
                           {"total", ms.total},
                           {"failures", ms.failures}});
    return json{{"version", kToolVersion}, {"methods", std::move(methods)}};
}

RobustnessSummary robustness_from_json(const json& j) {
    RobustnessSummary summary;
    for (const json& m : j.at("methods")) {
        RobustnessMethodSummary ms;
        ms.method = m.at("method");
        ms.successes = m.at("successes");
        ms.total = m.at("total");
        for (const json& f : m.at("failures")) ms.failures.push_back(f);
        summary.methods.push_back(std::move(ms));
    }
    return summary;
}

namespace {

const char* kReportCsvHeader =
    "problem,method,ksp,pc,status,outer_iterations,linear_solves,"
    "inner_iterations_total,final_residual,complementarity_error,"
    "wall_time_seconds";

std::string report_csv_row(const ReportDocument& doc) {
    std::ostringstream os;
    os << doc.spec.problem << "," << doc.spec.method << "," << doc.spec.ksp << ","
       << doc.spec.pc << "," << to_string(doc.report.status) << ","
       << doc.report.outer_iterations << "," << doc.report.linear_solves << ","
       << doc.report.inner_iterations_total << ","
       << csv_double(doc.report.final_residual) << ","
       << csv_double(doc.complementarity_error) << ","
       << csv_double(doc.report.wall_time_seconds);
    return os.str();
}

}  // namespace

std::string to_csv(const ReportDocument& doc) {
    return std::string(kReportCsvHeader) + "\n" + report_csv_row(doc) + "\n";
}

std::string to_csv(const Table2Result& result) {
    std::ostringstream os;
    os << kReportCsvHeader << "\n";
    for (const ReportDocument& doc : result.rows) os << report_csv_row(doc) << "\n";
    os << "max_pairwise_difference," << csv_double(result.max_pairwise_difference)
       << "\n";
    return os.str();
}

std::string to_csv(const RobustnessSummary& summary) {
    std::ostringstream os;
    os << "method,successes,total,failures\n";
    for (const RobustnessMethodSummary& ms : summary.methods) {
        os << ms.method << "," << ms.successes << "," << ms.total << ",";
        for (std::size_t i = 0; i < ms.failures.size(); ++i)
            os << (i ? ";" : "") << ms.failures[i];
        os << "\n";
    }
    return os.str();
}

}  // namespace mcp
