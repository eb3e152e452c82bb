#include "grcstab/bicgstab.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace grcstab {

namespace {

void validate(const SparseMatrixCsr& A, const DenseVector& b, const DenseVector& x0,
              const BicgstabConfig& cfg) {
    if (static_cast<index_t>(b.size()) != A.n() ||
        static_cast<index_t>(x0.size()) != A.n()) {
        throw std::invalid_argument("bicgstab: dimension mismatch");
    }
    if (!(cfg.theta > 0.0 && cfg.theta < 1.0)) {
        throw std::invalid_argument("bicgstab: theta must lie in (0, 1)");
    }
    if (cfg.breakdown_eps <= 0.0) {
        throw std::invalid_argument("bicgstab: breakdown_eps must be positive");
    }
    if (cfg.max_iters < 0) {
        throw std::invalid_argument("bicgstab: negative iteration cap");
    }
}

bool is_zero(const DenseVector& x) {
    for (double v : x) {
        if (v != 0.0) return false;
    }
    return true;
}

/// Deterministic shadow residual: mt19937_64 output mapped to [-1, 1).
/// The engine is fully specified by the standard, so the vector is
/// bit-identical across platforms.
DenseVector random_shadow(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    DenseVector out(n);
    for (double& v : out) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        v = 2.0 * u - 1.0;
    }
    return out;
}

}  // namespace

bool bicgstab_step_check(double s_norm, double r0_norm, double theta) {
    return s_norm / r0_norm < theta;
}

bool near_breakdown(double ip, double norm_a, double norm_b, double eps) {
    return std::fabs(ip) <= eps * norm_a * norm_b;
}

BicgstabResult bicgstab(const SparseMatrixCsr& A, const DenseVector& b,
                        const DenseVector& x0, const BicgstabConfig& cfg) {
    validate(A, b, x0, cfg);
    const index_t n = A.n();
    const index_t max_iters = cfg.max_iters > 0 ? cfg.max_iters : 10 * std::max<index_t>(n, 1);

    BicgstabResult result;
    result.x = x0;
    if (is_zero(x0)) {
        result.r = b;
    } else {
        result.r = matvec(A, x0);
        for (index_t i = 0; i < n; ++i) {
            result.r[i] = b[i] - result.r[i];
        }
    }
    DenseVector& x = result.x;
    DenseVector& r = result.r;

    const double r0_norm = norm2(r);
    result.trace.push_back({0, 0, r0_norm});
    if (r0_norm == 0.0) {
        result.outcome.status = SolverStatus::Converged;
        return result;
    }

    const DenseVector r0star =
        cfg.shadow == ShadowChoice::CopyOfR0 ? r : random_shadow(r.size(), cfg.seed);
    const double r0star_norm = norm2(r0star);

    DenseVector p = r;
    DenseVector v(n), s(n), t(n);
    double rho = dot(r, r0star);
    double r_norm = r0_norm;
    index_t matvecs = 0;

    SolverOutcome& outcome = result.outcome;
    auto finish = [&](SolverStatus status, const char* reason, index_t ordinal) {
        outcome.status = status;
        outcome.iterations = static_cast<index_t>(result.trace.size()) - 1;
        outcome.final_relative_residual = result.trace.back().residual_norm / r0_norm;
        if (status == SolverStatus::Breakdown) {
            outcome.breakdown_reason = reason;
            outcome.breakdown_iteration = ordinal;
        }
        return std::move(result);
    };

    for (index_t pass = 0; pass < max_iters; ++pass) {
        const index_t ordinal = pass + 1;

        if (!std::isfinite(rho)) {
            return finish(SolverStatus::Breakdown, "nonfinite", ordinal);
        }
        // (r_j, r0*) ~ 0 leaves beta (and the next alpha) undefined.
        if (near_breakdown(rho, r_norm, r0star_norm, cfg.breakdown_eps)) {
            return finish(SolverStatus::Breakdown, "rho_zero", ordinal);
        }

        matvec_into(A, p, v);
        ++matvecs;
        const double den = dot(v, r0star);
        if (near_breakdown(den, norm2(v), r0star_norm, cfg.breakdown_eps)) {
            return finish(SolverStatus::Breakdown, "alpha_denominator", ordinal);
        }
        const double alpha = rho / den;
        if (!std::isfinite(alpha)) {
            return finish(SolverStatus::Breakdown, "nonfinite", ordinal);
        }

        for (index_t i = 0; i < n; ++i) {
            s[i] = r[i] - alpha * v[i];
        }
        const double s_norm = norm2(s);
        if (!std::isfinite(s_norm)) {
            return finish(SolverStatus::Breakdown, "nonfinite", ordinal);
        }
        if (bicgstab_step_check(s_norm, r0_norm, cfg.theta)) {
            // Half-step exit: s is already small enough, skip the omega
            // stage entirely.
            axpy_in_place(alpha, p, x);
            r = s;
            result.trace.push_back({ordinal, matvecs, s_norm});
            return finish(SolverStatus::Converged, "", ordinal);
        }

        matvec_into(A, s, t);
        ++matvecs;
        const double tt = dot(t, t);
        if (tt == 0.0) {
            // s is nonzero here (it failed the half-step test), so omega
            // has a genuine 0/0.
            return finish(SolverStatus::Breakdown, "omega_denominator", ordinal);
        }
        const double omega = dot(t, s) / tt;
        if (!std::isfinite(omega)) {
            return finish(SolverStatus::Breakdown, "nonfinite", ordinal);
        }

        axpy_in_place(alpha, p, x);
        axpy_in_place(omega, s, x);
        for (index_t i = 0; i < n; ++i) {
            r[i] = s[i] - omega * t[i];
        }
        r_norm = norm2(r);
        result.trace.push_back({ordinal, matvecs, r_norm});
        if (!std::isfinite(r_norm)) {
            return finish(SolverStatus::Breakdown, "nonfinite", ordinal);
        }
        if (r_norm / r0_norm < cfg.theta) {
            return finish(SolverStatus::Converged, "", ordinal);
        }

        const double rho_next = dot(r, r0star);
        const double beta = (rho_next / rho) * (alpha / omega);
        if (!std::isfinite(beta)) {
            return finish(SolverStatus::Breakdown, "nonfinite", ordinal);
        }
        for (index_t i = 0; i < n; ++i) {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        rho = rho_next;
    }

    return finish(SolverStatus::MaxIterations, "", max_iters);
}

}  // namespace grcstab
