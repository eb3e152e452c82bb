#include "grcstab/history.hpp"

#include <stdexcept>

namespace grcstab {

std::string to_string(SolverStatus status) {
    switch (status) {
        case SolverStatus::Converged: return "converged";
        case SolverStatus::Breakdown: return "breakdown";
        case SolverStatus::Stagnation: return "stagnation";
        case SolverStatus::MaxIterations: return "max_iterations";
    }
    return "unknown";
}

std::string describe(const SolverOutcome& outcome) {
    if (outcome.status == SolverStatus::Breakdown) {
        return "breakdown(" + outcome.breakdown_reason + " @ " +
               std::to_string(outcome.breakdown_iteration) + ")";
    }
    return to_string(outcome.status);
}

std::string to_string(Phase phase) {
    switch (phase) {
        case Phase::Standalone: return "standalone";
        case Phase::Outer: return "outer";
        case Phase::Inner: return "inner";
    }
    return "unknown";
}

Phase phase_from_string(const std::string& text) {
    if (text == "standalone") return Phase::Standalone;
    if (text == "outer") return Phase::Outer;
    if (text == "inner") return Phase::Inner;
    throw std::invalid_argument("unknown phase '" + text + "'");
}

void ConvergenceHistory::append(Phase phase, index_t outer_iter,
                                index_t cumulative_inner_iters,
                                index_t cumulative_matvecs, double residual_norm) {
    HistoryRow row;
    row.phase = phase;
    row.outer_iter = outer_iter;
    row.cumulative_inner_iters = cumulative_inner_iters;
    row.cumulative_matvecs = cumulative_matvecs;
    row.residual_norm = residual_norm;
    row.relative_residual =
        reference_norm_ > 0.0 ? residual_norm / reference_norm_ : 0.0;
    rows_.push_back(row);
}

}  // namespace grcstab
