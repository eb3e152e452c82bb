/// @file grc.hpp
/// @brief Generalized residual cutting: an outer loop that combines inner
/// solver outputs with an MGS-orthonormalized window of previous
/// directions, and its composition with BiCGSTAB as the inner solver.

#pragma once

#include <functional>
#include <optional>

#include "grcstab/bicgstab.hpp"
#include "grcstab/csr.hpp"
#include "grcstab/dense.hpp"
#include "grcstab/history.hpp"

namespace grcstab {

/// Numerator of the outer step length alpha.
///  - InnerSolution:       (psi, H phi) / (H phi, H phi)
///  - ResidualMinimizing:  (r, H phi) / (H phi, H phi), the minimizer of
///    ||r - alpha*H phi||; only this choice guarantees monotone outer
///    residuals.
enum class AlphaFormula { InnerSolution, ResidualMinimizing };

struct GrcConfig {
    /// Total directions combined per step (window holds window-1 previous
    /// pairs). Must be >= 1; 1 keeps no history.
    index_t window = 5;
    /// Outer relative-residual tolerance.
    double tol = 1e-12;
    index_t max_outer = 500;
    AlphaFormula alpha = AlphaFormula::ResidualMinimizing;
    /// Degeneracy threshold for the MGS sweep and the fallback-direction test.
    double mgs_eps = 1e-12;
    /// When set, tracks window orthonormality and linearity defects after
    /// every insertion (costs one extra diagnostic matvec per step).
    bool validate_window = false;
};

/// An orthonormalized direction and its image under the operator.
struct DirectionPair {
    DenseVector phi;
    DenseVector h_phi;
};

/// Sliding window of up to `capacity` direction pairs, oldest first.
/// Stored h_phi vectors are unit norm and pairwise orthonormal, and each
/// h_phi equals A*phi up to roundoff.
class GrcWindow {
public:
    explicit GrcWindow(std::size_t capacity) : capacity_(capacity) {}

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    void clear() { pairs_.clear(); }

    const std::vector<DirectionPair>& pairs() const { return pairs_; }

    /// Appends a pair, evicting the oldest first when full. A window of
    /// capacity 0 stores nothing.
    void push(DirectionPair pair);

private:
    std::size_t capacity_ = 0;
    std::vector<DirectionPair> pairs_;
};

/// One modified Gram-Schmidt sweep of (psi, h_psi) against the window:
/// the same coefficients are applied to both vectors so the returned pair
/// still satisfies h_phi = A*phi. On success the normalized pair is also
/// pushed into the window. Returns nullopt (window untouched) when the
/// norm left after the sweep falls to eps*||h_psi|| or below, i.e. h_psi
/// lies in the span of the window.
std::optional<DirectionPair> mgs_insert(GrcWindow& window, const DenseVector& psi,
                                        const DenseVector& h_psi, double eps);

/// Step length along the new direction; see AlphaFormula.
double alpha_coefficient(AlphaFormula formula, const DenseVector& psi,
                         const DenseVector& r, const DenseVector& h_phi);

/// What one inner solve returned to the outer loop.
struct InnerResult {
    DenseVector psi;       ///< approximate solution of A psi = rhs
    index_t iterations = 0;
    index_t matvecs = 0;
    SolverOutcome outcome;
    std::vector<TracePoint> trace;  ///< inner residual history
};

/// Inner solver contract: approximately solve A psi = rhs. The hint slot
/// carries the previous outer direction; the bundled BiCGSTAB inner
/// solver ignores it and starts from zero.
using InnerSolver = std::function<InnerResult(
    const SparseMatrixCsr& A, const DenseVector& rhs, const DenseVector* hint)>;

/// Per-step record of the inner solves, for reporting and contract checks.
struct InnerSolveStats {
    SolverStatus status = SolverStatus::Converged;
    index_t iterations = 0;
    /// Inner-local final residual over the inner initial residual.
    double final_relative_residual = 0.0;
};

struct GrcResult {
    DenseVector u;  ///< outer iterate
    DenseVector r;  ///< recursive outer residual
    SolverOutcome outcome;
    std::vector<InnerSolveStats> inner_solves;
    index_t total_inner_iterations = 0;
    index_t total_matvecs = 0;
    /// ||b - A u|| / ||r0||, recomputed at exit.
    double true_relative_residual = 0.0;
    /// Window diagnostics, tracked only with GrcConfig::validate_window.
    double max_orthonormality_defect = 0.0;
    double max_linearity_defect = 0.0;
};

/// Outer iteration over a pluggable inner solver.
///
/// Per step: psi from the inner solver on the current residual; one
/// explicit matvec for H psi; MGS insertion; residual and iterate update
/// along the new direction. Convergence on the recursive relative
/// residual is verified against the true residual b - A u; a mismatch
/// beyond 10x the tolerance demotes the outcome to Stagnation.
///
/// History rows: a baseline outer row, then per step the inner rows
/// (cumulative counters) followed by one outer row.
GrcResult grc_outer(const SparseMatrixCsr& A, const DenseVector& b,
                    const DenseVector& u0, const InnerSolver& inner,
                    const GrcConfig& cfg, ConvergenceHistory& history);

/// GRC with BiCGSTAB as the inner solver, started from zero on each
/// residual equation. Inner breakdowns are non-fatal: the last consistent
/// inner iterate is handed to the outer loop and iteration continues.
/// inner_cfg.max_iters == 0 caps each inner solve at 2n.
GrcResult grc_bicgstab(const SparseMatrixCsr& A, const DenseVector& b,
                       const DenseVector& u0, const GrcConfig& grc_cfg,
                       const BicgstabConfig& inner_cfg, ConvergenceHistory& history);

/// Inner-loop defaults for grc_bicgstab: theta = 0.5, cap derived from
/// the dimension.
BicgstabConfig default_inner_config();

}  // namespace grcstab
