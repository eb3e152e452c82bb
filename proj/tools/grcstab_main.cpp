// Command-line benchmark harness: builds or loads a sparse linear system,
// runs BiCGSTAB and/or GRC-BiCGSTAB, and writes per-solver residual
// history CSVs plus a summary.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "grcstab/harness.hpp"

namespace {

std::vector<std::pair<grcstab::index_t, double>> parse_stencil(const std::string& text) {
    std::vector<std::pair<grcstab::index_t, double>> stencil;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) {
            comma = text.size();
        }
        const std::string item = text.substr(pos, comma - pos);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos) {
            throw CLI::ValidationError("--stencil",
                                       "expected offset:value pairs, got '" + item + "'");
        }
        try {
            stencil.emplace_back(std::stoll(item.substr(0, colon)),
                                 std::stod(item.substr(colon + 1)));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--stencil", "cannot parse '" + item + "'");
        }
        pos = comma + 1;
    }
    return stencil;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse iterative solver benchmark (BiCGSTAB / GRC-BiCGSTAB)"};

    grcstab::RunSpec spec;
    std::string matrix_path, problem_name, rhs_text = "", solver_name = "both";
    std::string stencil_text, shadow_name = "r0", alpha_name = "minres";

    auto* matrix_opt =
        app.add_option("--matrix", matrix_path, "Matrix Market file to load");
    auto* problem_opt = app.add_option("--problem", problem_name,
                                       "Built-in problem: pde1 or toeplitz");
    matrix_opt->excludes(problem_opt);
    problem_opt->excludes(matrix_opt);

    app.add_option("--nx", spec.nx, "pde1: interior grid points per axis")
        ->check(CLI::PositiveNumber);
    app.add_option("--conv", spec.convection, "pde1: convection coefficient");
    app.add_option("--n", spec.n, "toeplitz: dimension")->check(CLI::PositiveNumber);
    app.add_option("--stencil", stencil_text,
                   "toeplitz: diagonal stencil as \"offset:value,...\"");
    app.add_option("--rhs", rhs_text,
                   "Right-hand side: 'ones' for b = A*1, or a file of values "
                   "(default: the problem's own rhs, ones for loaded matrices)");
    app.add_option("--solver", solver_name, "bicgstab, grc-bicgstab, or both")
        ->check(CLI::IsMember({"bicgstab", "grc-bicgstab", "both"}));
    app.add_option("--tol", spec.tol, "Convergence tolerance (default 1e-12)");
    app.add_option("--theta", spec.theta,
                   "Inner-loop residual reduction threshold (default 0.5)");
    app.add_option("--window", spec.window,
                   "Directions combined per outer step (default 5)")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-outer", spec.max_outer, "Outer iteration cap");
    app.add_option("--max-inner", spec.max_inner,
                   "Iteration cap (standalone run or per inner solve); 0 = auto");
    app.add_option("--shadow", shadow_name, "Shadow residual: r0 or random")
        ->check(CLI::IsMember({"r0", "random"}));
    app.add_option("--alpha", alpha_name, "Outer step-length formula: paper or minres")
        ->check(CLI::IsMember({"paper", "minres"}));
    app.add_flag("--absolute", spec.absolute,
                 "Interpret --tol as an absolute residual norm bound");
    app.add_option("--out", spec.out_dir, "Output directory (default .)");
    app.add_option("--seed", spec.seed, "Seed for the random shadow residual");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!matrix_path.empty()) {
            spec.problem = grcstab::ProblemSource::MatrixFile;
            spec.matrix_path = matrix_path;
        } else if (problem_name == "pde1") {
            spec.problem = grcstab::ProblemSource::Pde1;
        } else if (problem_name == "toeplitz") {
            spec.problem = grcstab::ProblemSource::Toeplitz;
        } else if (problem_name.empty()) {
            std::cerr << "error: give either --matrix or --problem\n";
            return 2;
        } else {
            std::cerr << "error: unknown problem '" << problem_name << "'\n";
            return 2;
        }

        if (!stencil_text.empty()) {
            spec.stencil = parse_stencil(stencil_text);
        }
        if (rhs_text == "ones") {
            spec.rhs = grcstab::RhsMode::Ones;
        } else if (!rhs_text.empty()) {
            spec.rhs = grcstab::RhsMode::FromFile;
            spec.rhs_path = rhs_text;
        }
        if (solver_name == "bicgstab") {
            spec.solver = grcstab::SolverSelection::Bicgstab;
        } else if (solver_name == "grc-bicgstab") {
            spec.solver = grcstab::SolverSelection::GrcBicgstab;
        } else {
            spec.solver = grcstab::SolverSelection::Both;
        }
        spec.shadow = shadow_name == "r0" ? grcstab::ShadowChoice::CopyOfR0
                                          : grcstab::ShadowChoice::FixedSeedRandom;
        spec.alpha = alpha_name == "minres" ? grcstab::AlphaFormula::ResidualMinimizing
                                            : grcstab::AlphaFormula::InnerSolution;

        const grcstab::RunResult result = grcstab::run(spec);
        std::cout << result.summary_text;
        std::cout << "summary: " << result.summary_json_path << "\n";
        return result.exit_status;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
