/// @file harness.hpp
/// @brief Benchmark harness: builds or loads a problem, runs the requested
/// solvers, and emits plot-ready CSV histories plus a summary.

#pragma once

#include <string>
#include <vector>

#include "grcstab/bicgstab.hpp"
#include "grcstab/grc.hpp"
#include "grcstab/history.hpp"
#include "grcstab/problems.hpp"

namespace grcstab {

enum class ProblemSource { MatrixFile, Pde1, Toeplitz };
enum class RhsMode { ProblemDefault, Ones, FromFile };
enum class SolverSelection { Bicgstab, GrcBicgstab, Both };

/// Everything one benchmark invocation needs. Defaults follow the
/// reference experiment setup: tol 1e-12, inner theta 0.5, window 5.
struct RunSpec {
    ProblemSource problem = ProblemSource::Pde1;
    std::string matrix_path;

    // pde1 parameters
    index_t nx = 5;
    double convection = 1000.0;

    // toeplitz parameters
    index_t n = 100;
    std::vector<std::pair<index_t, double>> stencil;

    /// ProblemDefault: pde1 keeps its source-term rhs, everything else
    /// uses b = A*1.
    RhsMode rhs = RhsMode::ProblemDefault;
    std::string rhs_path;

    SolverSelection solver = SolverSelection::Both;
    double tol = 1e-12;
    double theta = 0.5;  ///< inner-loop threshold for grc-bicgstab
    index_t window = 5;
    index_t max_outer = 500;
    index_t max_inner = 0;  ///< 0: 10n standalone, 2n per inner solve
    ShadowChoice shadow = ShadowChoice::CopyOfR0;
    AlphaFormula alpha = AlphaFormula::ResidualMinimizing;
    /// Interpret tol as an absolute residual-norm bound instead of a
    /// relative one.
    bool absolute = false;
    std::string out_dir = ".";
    std::uint64_t seed = 20240809;
};

/// Per-solver record of one run.
struct SolverReport {
    std::string solver_name;
    SolverOutcome outcome;
    index_t outer_iterations = 0;  ///< 0 for standalone runs
    index_t total_inner_iterations = 0;
    index_t total_matvecs = 0;
    /// Recursive relative residual; equals the last CSV row exactly.
    double final_relative_residual = 0.0;
    /// ||b - A x|| / ||r0||, recomputed independently.
    double true_relative_residual = 0.0;
    double wall_seconds = 0.0;
    std::string csv_path;
    DenseVector solution;
};

struct RunResult {
    std::vector<SolverReport> reports;
    std::string summary_text;
    std::string summary_json_path;
    /// 0 iff every requested solver converged.
    int exit_status = 0;
};

/// Runs the spec end to end: one CSV per solver in spec.out_dir
/// (bicgstab.csv / grc_bicgstab.csv), a summary.json, and a text table.
/// Throws on unreadable inputs or invalid parameter combinations.
RunResult run(const RunSpec& spec);

/// Writes a history as CSV with header
/// cumulative_inner_iters,cumulative_matvecs,outer_iter,phase,residual_norm,relative_residual
/// and 17 significant digits for the residual columns.
/// Throws std::invalid_argument on an empty history, std::runtime_error
/// on an unwritable path.
void emit_csv(const ConvergenceHistory& history, const std::string& path);

/// Reads back a CSV produced by emit_csv; the returned rows reproduce the
/// originals exactly.
ConvergenceHistory read_history_csv(const std::string& path);

/// Text comparison table, one line per solver. When every run converged
/// the lines are ordered by total matvecs ascending; breakdown lines show
/// the failing pass.
std::string summarize(const std::vector<SolverReport>& reports);

/// Structured summary written next to the CSVs.
std::string summary_to_json(const RunSpec& spec, const std::vector<SolverReport>& reports);

}  // namespace grcstab
