// Acceptance suite: exercises the full solver stack against its stated
// quantitative targets and property bounds, printing one line per
// criterion. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "grcstab/harness.hpp"
#include "grcstab/matrix_market.hpp"
#include "test_support.hpp"

using grcstab::BicgstabConfig;
using grcstab::BicgstabResult;
using grcstab::ConvergenceHistory;
using grcstab::DenseVector;
using grcstab::GrcConfig;
using grcstab::GrcResult;
using grcstab::Phase;
using grcstab::SolverStatus;
using grcstab::SparseMatrixCsr;
using grcstab::index_t;

namespace {

constexpr double kTol = 1e-12;

struct SuiteRun {
    std::string label;
    SparseMatrixCsr A;
    DenseVector b;
    BicgstabResult bicg;
    GrcResult grc;
    ConvergenceHistory grc_history;
    double grc_wall_seconds = 0.0;
};

SuiteRun solve_both(std::string label, SparseMatrixCsr A, DenseVector b,
                    index_t max_outer = 500) {
    SuiteRun run;
    run.label = std::move(label);
    run.A = std::move(A);
    run.b = std::move(b);

    BicgstabConfig standalone;
    standalone.theta = kTol;
    standalone.max_iters = 10 * run.A.n();
    run.bicg = bicgstab(run.A, run.b, DenseVector(run.A.n(), 0.0), standalone);

    GrcConfig grc_cfg;
    grc_cfg.window = 5;
    grc_cfg.tol = kTol;
    grc_cfg.max_outer = max_outer;
    grc_cfg.validate_window = true;
    const auto start = std::chrono::steady_clock::now();
    run.grc = grc_bicgstab(run.A, run.b, DenseVector(run.A.n(), 0.0), grc_cfg,
                           grcstab::default_inner_config(), run.grc_history);
    const auto stop = std::chrono::steady_clock::now();
    run.grc_wall_seconds = std::chrono::duration<double>(stop - start).count();
    return run;
}

/// Every problem the suite touches, solved once with both solvers.
std::vector<SuiteRun> build_suite() {
    std::vector<SuiteRun> runs;

    {
        auto [A, b] = grcstab::gen_pde1({5, 1000.0});
        runs.push_back(solve_both("pde1(nx=5)", std::move(A), std::move(b)));
    }
    {
        auto [A, b] = grcstab::gen_pde1({3, 1000.0});
        runs.push_back(solve_both("pde1(nx=3)", std::move(A), std::move(b)));
    }
    {
        SparseMatrixCsr A =
            grcstab::gen_toeplitz({100, {{0, 2.0}, {-1, -1.0}, {1, -1.0}}});
        DenseVector b = grcstab::rhs_all_ones(A);
        runs.push_back(solve_both("toeplitz-laplacian(100)", std::move(A), std::move(b)));
    }
    for (int s = 0; s < 50; ++s) {
        testsupport::Rng rng(9000 + s);
        SparseMatrixCsr A = testsupport::random_indefinite(rng, 100);
        DenseVector b = grcstab::rhs_all_ones(A);
        runs.push_back(solve_both("indefinite-100 seed " + std::to_string(9000 + s),
                                  std::move(A), std::move(b)));
    }
    return runs;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> check;
};

}  // namespace

int main() {
    const std::vector<SuiteRun>& suite = build_suite();
    const SuiteRun& problem1 = suite.front();

    std::vector<Criterion> criteria;

    criteria.push_back({"problem1 convergence", [&](std::string& detail) {
        std::ostringstream out;
        out << "grc-bicgstab " << describe(problem1.grc.outcome) << ", true rel "
            << problem1.grc.true_relative_residual << ", " << problem1.grc_wall_seconds
            << " s";
        detail = out.str();
        return problem1.grc.outcome.status == SolverStatus::Converged &&
               problem1.grc.true_relative_residual <= 1e-10 &&
               problem1.grc_wall_seconds < 1.0;
    }});

    criteria.push_back({"robustness differential", [&](std::string& detail) {
        bool ok = true;
        const bool bicg_failed =
            problem1.bicg.outcome.status == SolverStatus::Breakdown ||
            problem1.bicg.outcome.status == SolverStatus::MaxIterations;
        if (bicg_failed) {
            ok = problem1.grc.outcome.status == SolverStatus::Converged;
        }

        int bicg_rate = 0, grc_rate = 0, total = 0;
        for (const SuiteRun& run : suite) {
            if (run.label.rfind("indefinite", 0) != 0) continue;
            ++total;
            bicg_rate += run.bicg.outcome.converged() ? 1 : 0;
            grc_rate += run.grc.outcome.converged() ? 1 : 0;
        }
        ok = ok && grc_rate >= bicg_rate;

        std::ostringstream out;
        out << "problem1 bicgstab " << describe(problem1.bicg.outcome)
            << "; random suite bicgstab " << bicg_rate << "/" << total
            << " vs grc-bicgstab " << grc_rate << "/" << total;
        detail = out.str();
        return ok;
    }});

    criteria.push_back({"outer residual monotonicity", [&](std::string& detail) {
        int violations = 0;
        for (const SuiteRun& run : suite) {
            double prev = -1.0;
            for (const auto& row : run.grc_history.rows()) {
                if (row.phase != Phase::Outer) continue;
                if (prev >= 0.0 && row.residual_norm > prev * (1.0 + 1e-12)) {
                    ++violations;
                }
                prev = row.residual_norm;
            }
        }
        detail = std::to_string(suite.size()) + " runs, " +
                 std::to_string(violations) + " violations";
        return violations == 0;
    }});

    criteria.push_back({"window orthonormality and linearity", [&](std::string& detail) {
        double worst_ortho = 0.0, worst_lin = 0.0;
        for (const SuiteRun& run : suite) {
            worst_ortho = std::max(worst_ortho, run.grc.max_orthonormality_defect);
            worst_lin = std::max(worst_lin, run.grc.max_linearity_defect);
        }
        std::ostringstream out;
        out << "max |(Hphi_i,Hphi_k)-delta| = " << worst_ortho
            << ", max ||Hphi - A phi|| = " << worst_lin;
        detail = out.str();
        return worst_ortho <= 1e-8 && worst_lin <= 1e-8;
    }});

    criteria.push_back({"direct-solve oracle equivalence", [&](std::string& detail) {
        double worst = 0.0;
        int solved = 0;
        for (int s = 0; s < 20; ++s) {
            testsupport::Rng rng(7100 + s);
            const SparseMatrixCsr A = testsupport::random_diag_dominant(rng, 20);
            const DenseVector b = testsupport::random_vector(rng, 20);
            const DenseVector exact =
                testsupport::dense_solve(testsupport::to_dense(A), b);
            const double scale = std::max(testsupport::norm_inf(exact), 1e-30);

            BicgstabConfig cfg;
            cfg.theta = kTol;
            const BicgstabResult bres = bicgstab(A, b, DenseVector(20, 0.0), cfg);
            ConvergenceHistory history;
            const GrcResult gres =
                grc_bicgstab(A, b, DenseVector(20, 0.0), {},
                             grcstab::default_inner_config(), history);
            if (!bres.outcome.converged() || !gres.outcome.converged()) {
                continue;
            }
            ++solved;
            worst = std::max(worst, testsupport::max_abs_diff(bres.x, exact) / scale);
            worst = std::max(worst, testsupport::max_abs_diff(gres.u, exact) / scale);
        }
        std::ostringstream out;
        out << solved << "/20 systems solved by both, worst rel inf error " << worst;
        detail = out.str();
        return solved == 20 && worst <= 1e-8;
    }});

    criteria.push_back({"known-solution recovery through the harness", [&](std::string& detail) {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "grcstab_acceptance_mtx";
        fs::remove_all(dir);
        fs::create_directories(dir);

        int checked = 0;
        double worst_ratio = 0.0;
        for (int s = 0; s < 5; ++s) {
            testsupport::Rng rng(880 + s);
            const SparseMatrixCsr A = testsupport::random_diag_dominant(rng, 50);
            const std::string mtx = (dir / ("m" + std::to_string(s) + ".mtx")).string();
            grcstab::mm_write_file(mtx, A);

            grcstab::RunSpec spec;
            spec.problem = grcstab::ProblemSource::MatrixFile;
            spec.matrix_path = mtx;
            spec.rhs = grcstab::RhsMode::Ones;
            spec.solver = grcstab::SolverSelection::Both;
            spec.out_dir = (dir / ("out" + std::to_string(s))).string();
            const grcstab::RunResult result = grcstab::run(spec);

            const double kappa = testsupport::condition_inf(testsupport::to_dense(A));
            if (kappa > 1e6) continue;
            for (const auto& report : result.reports) {
                if (!report.outcome.converged()) continue;
                ++checked;
                DenseVector error = report.solution;
                grcstab::axpy_in_place(-1.0, DenseVector(50, 1.0), error);
                worst_ratio = std::max(
                    worst_ratio, testsupport::norm_inf(error) / (1e-6 * kappa));
            }
        }
        std::ostringstream out;
        out << checked << " converged runs checked, worst error/bound ratio "
            << worst_ratio;
        detail = out.str();
        return checked > 0 && worst_ratio <= 1.0;
    }});

    criteria.push_back({"inner-loop contract", [&](std::string& detail) {
        index_t inner_solves = 0;
        int violations = 0;
        for (const SuiteRun& run : suite) {
            for (const auto& stats : run.grc.inner_solves) {
                ++inner_solves;
                const bool ok = stats.final_relative_residual < 0.5 ||
                                stats.status != SolverStatus::Converged;
                if (!ok) ++violations;
            }
        }
        detail = std::to_string(inner_solves) + " inner solves, " +
                 std::to_string(violations) + " contract violations";
        return inner_solves > 0 && violations == 0;
    }});

    criteria.push_back({"byte-identical reruns", [&](std::string& detail) {
        namespace fs = std::filesystem;
        const fs::path base = fs::temp_directory_path() / "grcstab_acceptance_det";
        fs::remove_all(base);

        grcstab::RunSpec spec;
        spec.problem = grcstab::ProblemSource::Pde1;
        spec.nx = 5;
        spec.solver = grcstab::SolverSelection::Both;
        spec.shadow = grcstab::ShadowChoice::CopyOfR0;

        spec.out_dir = (base / "a").string();
        grcstab::run(spec);
        spec.out_dir = (base / "b").string();
        grcstab::run(spec);

        bool identical = true;
        for (const char* name : {"bicgstab.csv", "grc_bicgstab.csv"}) {
            const std::string a = slurp((base / "a" / name).string());
            const std::string b = slurp((base / "b" / name).string());
            identical = identical && !a.empty() && a == b;
        }
        detail = identical ? "both CSVs byte-identical across reruns"
                           : "CSV contents differ";
        return identical;
    }});

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        const bool ok = criteria[i].check(detail);
        failures += ok ? 0 : 1;
        std::printf("[%s] %zu. %s: %s\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), detail.c_str());
    }
    std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures;
}
