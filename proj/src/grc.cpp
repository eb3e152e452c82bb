#include "grcstab/grc.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace grcstab {

void GrcWindow::push(DirectionPair pair) {
    if (capacity_ == 0) {
        return;
    }
    if (pairs_.size() == capacity_) {
        pairs_.erase(pairs_.begin());
    }
    pairs_.push_back(std::move(pair));
}

std::optional<DirectionPair> mgs_insert(GrcWindow& window, const DenseVector& psi,
                                        const DenseVector& h_psi, double eps) {
    DenseVector v = h_psi;
    DenseVector w = psi;
    for (const DirectionPair& pair : window.pairs()) {
        const double c = dot(pair.h_phi, v);
        axpy_in_place(-c, pair.h_phi, v);
        axpy_in_place(-c, pair.phi, w);
    }
    const double nu = norm2(v);
    if (nu <= eps * norm2(h_psi)) {
        return std::nullopt;
    }
    scale_in_place(v, 1.0 / nu);
    scale_in_place(w, 1.0 / nu);
    DirectionPair dir{std::move(w), std::move(v)};
    window.push(dir);
    return dir;
}

double alpha_coefficient(AlphaFormula formula, const DenseVector& psi,
                         const DenseVector& r, const DenseVector& h_phi) {
    const double denom = dot(h_phi, h_phi);
    const double numer =
        formula == AlphaFormula::InnerSolution ? dot(psi, h_phi) : dot(r, h_phi);
    return numer / denom;
}

namespace {

void validate(const SparseMatrixCsr& A, const DenseVector& b, const DenseVector& u0,
              const GrcConfig& cfg) {
    if (static_cast<index_t>(b.size()) != A.n() ||
        static_cast<index_t>(u0.size()) != A.n()) {
        throw std::invalid_argument("grc: dimension mismatch");
    }
    if (cfg.window < 1) {
        throw std::invalid_argument("grc: window must be >= 1");
    }
    if (!(cfg.tol > 0.0)) {
        throw std::invalid_argument("grc: tol must be positive");
    }
    if (cfg.max_outer < 1) {
        throw std::invalid_argument("grc: max_outer must be >= 1");
    }
    if (cfg.mgs_eps <= 0.0) {
        throw std::invalid_argument("grc: mgs_eps must be positive");
    }
}

bool is_zero(const DenseVector& x) {
    for (double v : x) {
        if (v != 0.0) return false;
    }
    return true;
}

/// Largest deviation of the window Gram matrix from the identity,
/// including the freshly inserted pair (passed separately when the window
/// keeps no history).
double orthonormality_defect(const GrcWindow& window, const DirectionPair& dir) {
    std::vector<const DenseVector*> hs;
    for (const DirectionPair& pair : window.pairs()) {
        hs.push_back(&pair.h_phi);
    }
    if (window.capacity() == 0) {
        hs.push_back(&dir.h_phi);
    }
    double defect = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        for (std::size_t k = i; k < hs.size(); ++k) {
            const double expected = i == k ? 1.0 : 0.0;
            defect = std::max(defect, std::fabs(dot(*hs[i], *hs[k]) - expected));
        }
    }
    return defect;
}

}  // namespace

GrcResult grc_outer(const SparseMatrixCsr& A, const DenseVector& b,
                    const DenseVector& u0, const InnerSolver& inner,
                    const GrcConfig& cfg, ConvergenceHistory& history) {
    validate(A, b, u0, cfg);
    const index_t n = A.n();

    GrcResult result;
    result.u = u0;
    if (is_zero(u0)) {
        result.r = b;
    } else {
        result.r = matvec(A, u0);
        for (index_t i = 0; i < n; ++i) {
            result.r[i] = b[i] - result.r[i];
        }
    }

    const double r0_norm = norm2(result.r);
    history.set_reference_norm(r0_norm);
    history.append(Phase::Outer, 0, 0, 0, r0_norm);
    if (r0_norm == 0.0) {
        result.outcome.status = SolverStatus::Converged;
        return result;
    }

    GrcWindow window(static_cast<std::size_t>(cfg.window - 1));
    index_t cum_inner = 0;
    index_t cum_matvecs = 0;
    double r_norm = r0_norm;
    DenseVector h_psi(n), scratch(n);
    DenseVector previous_phi;  // offered to the inner solver as a hint

    auto finish = [&](SolverStatus status, index_t outer_steps) {
        result.outcome.status = status;
        result.outcome.iterations = outer_steps;
        result.outcome.final_relative_residual = r_norm / r0_norm;
        result.total_inner_iterations = cum_inner;
        result.total_matvecs = cum_matvecs;
        matvec_into(A, result.u, scratch);
        for (index_t i = 0; i < n; ++i) {
            scratch[i] = b[i] - scratch[i];
        }
        result.true_relative_residual = norm2(scratch) / r0_norm;
        return std::move(result);
    };

    for (index_t m = 0; m < cfg.max_outer; ++m) {
        InnerResult ir =
            inner(A, result.r, previous_phi.empty() ? nullptr : &previous_phi);
        if (static_cast<index_t>(ir.psi.size()) != n) {
            throw std::invalid_argument("grc: inner solver returned a wrong-size vector");
        }
        for (const TracePoint& tp : ir.trace) {
            history.append(Phase::Inner, m + 1, cum_inner + tp.iteration,
                           cum_matvecs + tp.matvecs, tp.residual_norm);
        }
        cum_inner += ir.iterations;
        cum_matvecs += ir.matvecs;
        result.inner_solves.push_back(
            {ir.outcome.status, ir.iterations, ir.outcome.final_relative_residual});

        DenseVector psi = std::move(ir.psi);
        matvec_into(A, psi, h_psi);
        ++cum_matvecs;
        if (norm2(h_psi) <= cfg.mgs_eps * r_norm) {
            // The inner solver produced a near-null direction; fall back to
            // the residual itself.
            psi = result.r;
            matvec_into(A, psi, h_psi);
            ++cum_matvecs;
        }

        std::optional<DirectionPair> dir = mgs_insert(window, psi, h_psi, cfg.mgs_eps);
        if (!dir) {
            // Flush the direction history and retry once before giving up.
            window.clear();
            dir = mgs_insert(window, psi, h_psi, cfg.mgs_eps);
        }
        if (!dir) {
            return finish(SolverStatus::Stagnation, m);
        }

        if (cfg.validate_window) {
            result.max_orthonormality_defect =
                std::max(result.max_orthonormality_defect,
                         orthonormality_defect(window, *dir));
            matvec_into(A, dir->phi, scratch);  // diagnostic, not counted
            axpy_in_place(-1.0, dir->h_phi, scratch);
            result.max_linearity_defect =
                std::max(result.max_linearity_defect, norm2(scratch));
        }

        const double alpha = alpha_coefficient(cfg.alpha, psi, result.r, dir->h_phi);
        axpy_in_place(-alpha, dir->h_phi, result.r);
        axpy_in_place(alpha, dir->phi, result.u);
        previous_phi = dir->phi;
        r_norm = norm2(result.r);
        history.append(Phase::Outer, m + 1, cum_inner, cum_matvecs, r_norm);

        if (!std::isfinite(r_norm)) {
            return finish(SolverStatus::Stagnation, m + 1);
        }
        if (r_norm / r0_norm < cfg.tol) {
            // Declare convergence only if the true residual agrees with the
            // recursive one to within 10x the tolerance.
            matvec_into(A, result.u, scratch);
            for (index_t i = 0; i < n; ++i) {
                scratch[i] = b[i] - scratch[i];
            }
            const double true_rel = norm2(scratch) / r0_norm;
            return finish(true_rel < 10.0 * cfg.tol ? SolverStatus::Converged
                                                    : SolverStatus::Stagnation,
                          m + 1);
        }
    }

    return finish(SolverStatus::MaxIterations, cfg.max_outer);
}

BicgstabConfig default_inner_config() {
    BicgstabConfig cfg;
    cfg.theta = 0.5;
    cfg.max_iters = 0;  // resolved to 2n per inner solve
    return cfg;
}

GrcResult grc_bicgstab(const SparseMatrixCsr& A, const DenseVector& b,
                       const DenseVector& u0, const GrcConfig& grc_cfg,
                       const BicgstabConfig& inner_cfg, ConvergenceHistory& history) {
    BicgstabConfig cfg = inner_cfg;
    if (cfg.max_iters == 0) {
        cfg.max_iters = 2 * std::max<index_t>(A.n(), 1);
    }
    InnerSolver inner = [cfg](const SparseMatrixCsr& op, const DenseVector& rhs,
                              const DenseVector* /*hint*/) {
        BicgstabResult br = bicgstab(op, rhs, DenseVector(rhs.size(), 0.0), cfg);
        InnerResult ir;
        ir.psi = std::move(br.x);
        ir.iterations = br.outcome.iterations;
        ir.matvecs = br.trace.back().matvecs;
        ir.outcome = std::move(br.outcome);
        ir.trace = std::move(br.trace);
        return ir;
    };
    return grc_outer(A, b, u0, inner, grc_cfg, history);
}

}  // namespace grcstab
