/// @file history.hpp
/// @brief Convergence reporting types shared by the solvers and the harness.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grcstab/dense.hpp"

namespace grcstab {

enum class SolverStatus { Converged, Breakdown, Stagnation, MaxIterations };

std::string to_string(SolverStatus status);

/// Terminal report of one solver run.
struct SolverOutcome {
    SolverStatus status = SolverStatus::MaxIterations;
    /// Completed iterations (outer steps for the nested solver).
    index_t iterations = 0;
    /// Recursive residual norm over the initial residual norm at exit.
    double final_relative_residual = 0.0;
    /// Set only for Breakdown: which denominator failed and in which pass.
    std::string breakdown_reason;
    index_t breakdown_iteration = 0;

    bool converged() const { return status == SolverStatus::Converged; }
};

/// One-line label such as "converged" or "breakdown(rho_zero @ 12)".
std::string describe(const SolverOutcome& outcome);

/// Solver-local residual trace: one point per iteration plus the starting
/// point (iteration 0, matvecs 0, initial residual norm). Matvec counts
/// cover the iteration loop only, not diagnostic recomputations.
struct TracePoint {
    index_t iteration = 0;
    index_t matvecs = 0;
    double residual_norm = 0.0;
};

enum class Phase { Standalone, Outer, Inner };

std::string to_string(Phase phase);
Phase phase_from_string(const std::string& text);

/// One row of a recorded convergence history. Counters are cumulative
/// over the whole run, so nested-solver rows share one iteration axis.
struct HistoryRow {
    index_t cumulative_inner_iters = 0;
    index_t cumulative_matvecs = 0;
    index_t outer_iter = 0;  ///< 0 for standalone runs and baseline rows
    Phase phase = Phase::Standalone;
    double residual_norm = 0.0;
    double relative_residual = 0.0;

    bool operator==(const HistoryRow&) const = default;
};

/// Ordered residual history of one run. relative_residual is always
/// residual_norm divided by the reference norm ||r0|| of the run.
class ConvergenceHistory {
public:
    void set_reference_norm(double r0_norm) { reference_norm_ = r0_norm; }
    double reference_norm() const { return reference_norm_; }

    /// Appends a row, deriving relative_residual from the reference norm.
    void append(Phase phase, index_t outer_iter, index_t cumulative_inner_iters,
                index_t cumulative_matvecs, double residual_norm);

    /// Appends a fully populated row (used by the CSV reader).
    void append_row(const HistoryRow& row) { rows_.push_back(row); }

    const std::vector<HistoryRow>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }
    std::size_t size() const { return rows_.size(); }

private:
    std::vector<HistoryRow> rows_;
    double reference_norm_ = 0.0;
};

}  // namespace grcstab
