#include "grcstab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "grcstab/matrix_market.hpp"

namespace grcstab {

namespace {

struct Problem {
    SparseMatrixCsr A;
    DenseVector b;
    std::string label;
};

DenseVector read_rhs_file(const std::string& path, index_t n) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open rhs file '" + path + "'");
    }
    DenseVector b;
    b.reserve(n);
    double value = 0.0;
    while (in >> value) {
        b.push_back(value);
    }
    if (static_cast<index_t>(b.size()) != n) {
        throw std::runtime_error("rhs file '" + path + "' holds " +
                                 std::to_string(b.size()) + " values, expected " +
                                 std::to_string(n));
    }
    return b;
}

Problem build_problem(const RunSpec& spec) {
    Problem problem;
    switch (spec.problem) {
        case ProblemSource::MatrixFile: {
            if (spec.matrix_path.empty()) {
                throw std::invalid_argument("no matrix file given");
            }
            problem.A = mm_read_file(spec.matrix_path);
            problem.label = std::filesystem::path(spec.matrix_path).filename().string();
            break;
        }
        case ProblemSource::Pde1: {
            Pde1Problem pde = gen_pde1({spec.nx, spec.convection});
            problem.A = std::move(pde.matrix);
            problem.b = std::move(pde.rhs);  // source-term rhs unless overridden
            problem.label = "pde1(nx=" + std::to_string(spec.nx) + ")";
            break;
        }
        case ProblemSource::Toeplitz: {
            if (spec.stencil.empty()) {
                throw std::invalid_argument("toeplitz problem needs a stencil");
            }
            problem.A = gen_toeplitz({spec.n, spec.stencil});
            problem.label = "toeplitz(n=" + std::to_string(spec.n) + ")";
            break;
        }
    }

    switch (spec.rhs) {
        case RhsMode::ProblemDefault:
            if (problem.b.empty()) {
                problem.b = rhs_all_ones(problem.A);
            }
            break;
        case RhsMode::Ones:
            problem.b = rhs_all_ones(problem.A);
            break;
        case RhsMode::FromFile:
            problem.b = read_rhs_file(spec.rhs_path, problem.A.n());
            break;
    }
    return problem;
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

double true_relative_residual(const SparseMatrixCsr& A, const DenseVector& b,
                              const DenseVector& x, double r0_norm) {
    DenseVector residual = matvec(A, x);
    for (std::size_t i = 0; i < residual.size(); ++i) {
        residual[i] = b[i] - residual[i];
    }
    return r0_norm > 0.0 ? norm2(residual) / r0_norm : norm2(residual);
}

/// Turns a standalone solver trace into history rows.
ConvergenceHistory history_from_trace(const std::vector<TracePoint>& trace,
                                      double r0_norm) {
    ConvergenceHistory history;
    history.set_reference_norm(r0_norm);
    for (const TracePoint& tp : trace) {
        history.append(Phase::Standalone, 0, tp.iteration, tp.matvecs, tp.residual_norm);
    }
    return history;
}

SolverReport run_standalone(const Problem& problem, const RunSpec& spec, double rel_tol,
                            const std::string& csv_path) {
    BicgstabConfig cfg;
    cfg.theta = rel_tol;
    cfg.max_iters = spec.max_inner > 0 ? spec.max_inner
                                       : 10 * std::max<index_t>(problem.A.n(), 1);
    cfg.shadow = spec.shadow;
    cfg.seed = spec.seed;

    const auto start = std::chrono::steady_clock::now();
    BicgstabResult res =
        bicgstab(problem.A, problem.b, DenseVector(problem.A.n(), 0.0), cfg);
    const auto stop = std::chrono::steady_clock::now();

    ConvergenceHistory history =
        history_from_trace(res.trace, res.trace.front().residual_norm);
    emit_csv(history, csv_path);

    SolverReport report;
    report.solver_name = "bicgstab";
    report.outcome = res.outcome;
    report.outer_iterations = 0;
    report.total_inner_iterations = res.outcome.iterations;
    report.total_matvecs = res.trace.back().matvecs;
    report.final_relative_residual = res.outcome.final_relative_residual;
    report.true_relative_residual = true_relative_residual(
        problem.A, problem.b, res.x, res.trace.front().residual_norm);
    report.wall_seconds = std::chrono::duration<double>(stop - start).count();
    report.csv_path = csv_path;
    report.solution = std::move(res.x);
    return report;
}

SolverReport run_grc(const Problem& problem, const RunSpec& spec, double rel_tol,
                     const std::string& csv_path) {
    GrcConfig grc_cfg;
    grc_cfg.window = spec.window;
    grc_cfg.tol = rel_tol;
    grc_cfg.max_outer = spec.max_outer;
    grc_cfg.alpha = spec.alpha;

    BicgstabConfig inner_cfg = default_inner_config();
    inner_cfg.theta = spec.theta;
    inner_cfg.max_iters = spec.max_inner;
    inner_cfg.shadow = spec.shadow;
    inner_cfg.seed = spec.seed;

    ConvergenceHistory history;
    const auto start = std::chrono::steady_clock::now();
    GrcResult res = grc_bicgstab(problem.A, problem.b, DenseVector(problem.A.n(), 0.0),
                                 grc_cfg, inner_cfg, history);
    const auto stop = std::chrono::steady_clock::now();

    emit_csv(history, csv_path);

    SolverReport report;
    report.solver_name = "grc-bicgstab";
    report.outcome = res.outcome;
    report.outer_iterations = res.outcome.iterations;
    report.total_inner_iterations = res.total_inner_iterations;
    report.total_matvecs = res.total_matvecs;
    report.final_relative_residual = res.outcome.final_relative_residual;
    report.true_relative_residual = res.true_relative_residual;
    report.wall_seconds = std::chrono::duration<double>(stop - start).count();
    report.csv_path = csv_path;
    report.solution = std::move(res.u);
    return report;
}

/// Already-solved edge: an absolute tolerance larger than ||b|| is met
/// before the first iteration.
SolverReport trivial_report(const Problem& problem, const std::string& name,
                            double r0_norm, const std::string& csv_path) {
    ConvergenceHistory history;
    history.set_reference_norm(r0_norm);
    history.append(name == "bicgstab" ? Phase::Standalone : Phase::Outer, 0, 0, 0,
                   r0_norm);
    emit_csv(history, csv_path);

    SolverReport report;
    report.solver_name = name;
    report.outcome.status = SolverStatus::Converged;
    report.outcome.final_relative_residual = r0_norm > 0.0 ? 1.0 : 0.0;
    report.final_relative_residual = report.outcome.final_relative_residual;
    report.true_relative_residual = report.outcome.final_relative_residual;
    report.csv_path = csv_path;
    report.solution = DenseVector(problem.A.n(), 0.0);
    return report;
}

}  // namespace

void emit_csv(const ConvergenceHistory& history, const std::string& path) {
    if (history.empty()) {
        throw std::invalid_argument("emit_csv: empty history");
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << "cumulative_inner_iters,cumulative_matvecs,outer_iter,phase,"
           "residual_norm,relative_residual\n";
    for (const HistoryRow& row : history.rows()) {
        out << row.cumulative_inner_iters << ',' << row.cumulative_matvecs << ','
            << row.outer_iter << ',' << to_string(row.phase) << ','
            << format_double(row.residual_norm) << ','
            << format_double(row.relative_residual) << '\n';
    }
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

ConvergenceHistory read_history_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("'" + path + "' is empty");
    }
    ConvergenceHistory history;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string field;
        HistoryRow row;
        std::getline(fields, field, ',');
        row.cumulative_inner_iters = std::stoll(field);
        std::getline(fields, field, ',');
        row.cumulative_matvecs = std::stoll(field);
        std::getline(fields, field, ',');
        row.outer_iter = std::stoll(field);
        std::getline(fields, field, ',');
        row.phase = phase_from_string(field);
        std::getline(fields, field, ',');
        row.residual_norm = std::strtod(field.c_str(), nullptr);
        std::getline(fields, field, ',');
        row.relative_residual = std::strtod(field.c_str(), nullptr);
        history.append_row(row);
    }
    if (!history.empty() && history.rows().front().relative_residual == 1.0) {
        history.set_reference_norm(history.rows().front().residual_norm);
    }
    return history;
}

std::string summarize(const std::vector<SolverReport>& reports) {
    std::vector<const SolverReport*> ordered;
    ordered.reserve(reports.size());
    bool all_converged = true;
    for (const SolverReport& r : reports) {
        ordered.push_back(&r);
        all_converged = all_converged && r.outcome.converged();
    }
    if (all_converged) {
        std::stable_sort(ordered.begin(), ordered.end(),
                         [](const SolverReport* a, const SolverReport* b) {
                             return a->total_matvecs < b->total_matvecs;
                         });
    }

    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-14s %-28s %6s %7s %8s %-13s %-13s %9s\n",
                  "solver", "outcome", "outer", "inner", "matvecs", "final_rel",
                  "true_rel", "wall_s");
    out << line;
    for (const SolverReport* r : ordered) {
        std::snprintf(line, sizeof(line),
                      "%-14s %-28s %6lld %7lld %8lld %-13.6g %-13.6g %9.3f\n",
                      r->solver_name.c_str(), describe(r->outcome).c_str(),
                      static_cast<long long>(r->outer_iterations),
                      static_cast<long long>(r->total_inner_iterations),
                      static_cast<long long>(r->total_matvecs),
                      r->final_relative_residual, r->true_relative_residual,
                      r->wall_seconds);
        out << line;
    }
    return out.str();
}

std::string summary_to_json(const RunSpec& spec, const std::vector<SolverReport>& reports) {
    nlohmann::json j;
    switch (spec.problem) {
        case ProblemSource::MatrixFile:
            j["problem"] = {{"source", "matrix"}, {"path", spec.matrix_path}};
            break;
        case ProblemSource::Pde1:
            j["problem"] = {{"source", "pde1"},
                            {"nx", spec.nx},
                            {"convection", spec.convection}};
            break;
        case ProblemSource::Toeplitz:
            j["problem"] = {{"source", "toeplitz"}, {"n", spec.n}};
            break;
    }
    j["parameters"] = {
        {"tol", spec.tol},
        {"theta", spec.theta},
        {"window", spec.window},
        {"max_outer", spec.max_outer},
        {"max_inner", spec.max_inner},
        {"shadow", spec.shadow == ShadowChoice::CopyOfR0 ? "r0" : "random"},
        {"alpha", spec.alpha == AlphaFormula::ResidualMinimizing ? "minres" : "paper"},
        {"absolute", spec.absolute},
        {"seed", spec.seed},
    };
    bool all_converged = true;
    j["solvers"] = nlohmann::json::array();
    for (const SolverReport& r : reports) {
        all_converged = all_converged && r.outcome.converged();
        j["solvers"].push_back({
            {"name", r.solver_name},
            {"status", to_string(r.outcome.status)},
            {"outcome", describe(r.outcome)},
            {"outer_iterations", r.outer_iterations},
            {"total_inner_iterations", r.total_inner_iterations},
            {"total_matvecs", r.total_matvecs},
            {"final_relative_residual", r.final_relative_residual},
            {"true_relative_residual", r.true_relative_residual},
            {"wall_seconds", r.wall_seconds},
            {"csv", r.csv_path},
        });
    }
    j["all_converged"] = all_converged;
    return j.dump(2);
}

RunResult run(const RunSpec& spec) {
    Problem problem = build_problem(spec);

    std::filesystem::create_directories(spec.out_dir);
    const auto csv_path = [&](const char* name) {
        return (std::filesystem::path(spec.out_dir) / name).string();
    };

    const double r0_norm = norm2(problem.b);  // solvers start from x0 = 0
    double rel_tol = spec.tol;
    bool already_solved = false;
    if (spec.absolute) {
        if (r0_norm < spec.tol) {
            already_solved = true;
        } else {
            rel_tol = spec.tol / r0_norm;
        }
    }

    RunResult result;
    const bool want_bicgstab = spec.solver != SolverSelection::GrcBicgstab;
    const bool want_grc = spec.solver != SolverSelection::Bicgstab;

    if (want_bicgstab) {
        result.reports.push_back(
            already_solved
                ? trivial_report(problem, "bicgstab", r0_norm, csv_path("bicgstab.csv"))
                : run_standalone(problem, spec, rel_tol, csv_path("bicgstab.csv")));
    }
    if (want_grc) {
        result.reports.push_back(
            already_solved
                ? trivial_report(problem, "grc-bicgstab", r0_norm,
                                 csv_path("grc_bicgstab.csv"))
                : run_grc(problem, spec, rel_tol, csv_path("grc_bicgstab.csv")));
    }

    result.summary_text = "problem: " + problem.label + ", n = " +
                          std::to_string(problem.A.n()) + ", nnz = " +
                          std::to_string(problem.A.nnz()) + "\n" +
                          summarize(result.reports);

    result.summary_json_path = csv_path("summary.json");
    std::ofstream json_out(result.summary_json_path);
    if (!json_out) {
        throw std::runtime_error("cannot write '" + result.summary_json_path + "'");
    }
    json_out << summary_to_json(spec, result.reports) << "\n";

    result.exit_status = 0;
    for (const SolverReport& r : result.reports) {
        if (!r.outcome.converged()) {
            result.exit_status = 1;
        }
    }
    return result;
}

}  // namespace grcstab
