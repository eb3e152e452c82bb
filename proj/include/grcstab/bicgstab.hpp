/// @file bicgstab.hpp
/// @brief Unpreconditioned BiCGSTAB with explicit breakdown detection.

#pragma once

#include <cstdint>

#include "grcstab/csr.hpp"
#include "grcstab/dense.hpp"
#include "grcstab/history.hpp"

namespace grcstab {

/// Choice of the shadow residual r0* that defines the bi-orthogonality
/// inner products. Breakdown behavior is sensitive to this choice, so a
/// deterministic random alternative to the conventional copy of r0 is
/// offered.
enum class ShadowChoice { CopyOfR0, FixedSeedRandom };

struct BicgstabConfig {
    /// Relative residual threshold: stop when ||r||/||r0|| < theta
    /// (strict). Must lie in (0, 1).
    double theta = 1e-12;
    /// Iteration cap; 0 derives the cap from the matrix dimension
    /// (10n standalone, 2n when used as an inner solver).
    index_t max_iters = 0;
    /// Dimensionless threshold for the scaled breakdown tests.
    double breakdown_eps = 1e-14;
    ShadowChoice shadow = ShadowChoice::CopyOfR0;
    /// Seed for ShadowChoice::FixedSeedRandom.
    std::uint64_t seed = 20240809;
};

struct BicgstabResult {
    DenseVector x;  ///< last consistent iterate
    DenseVector r;  ///< matching recursive residual
    SolverOutcome outcome;
    std::vector<TracePoint> trace;  ///< starting point plus one per iteration
};

/// True iff s_norm/r0_norm < theta (strict); when true the caller
/// finalizes x += alpha*p and reports the half-step residual s, avoiding
/// the 0/0 in omega when s vanishes.
bool bicgstab_step_check(double s_norm, double r0_norm, double theta);

/// Scaled near-zero test |ip| <= eps*norm_a*norm_b used for the rho and
/// alpha denominators.
bool near_breakdown(double ip, double norm_a, double norm_b, double eps);

/// Solves A x = b from initial guess x0.
///
/// Conventions: p0 = r0; r0* per cfg.shadow. Breakdowns are reported in
/// the outcome, never thrown: rho_zero, alpha_denominator,
/// omega_denominator, and nonfinite (NaN/Inf in any recurrence scalar).
/// If ||b - A x0|| = 0 the run converges with 0 iterations.
/// Throws std::invalid_argument on dimension mismatch or invalid config.
BicgstabResult bicgstab(const SparseMatrixCsr& A, const DenseVector& b,
                        const DenseVector& x0, const BicgstabConfig& cfg);

}  // namespace grcstab
