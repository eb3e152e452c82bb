/// @file problems.hpp
/// @brief Built-in test problem generators.

#pragma once

#include <utility>
#include <vector>

#include "grcstab/csr.hpp"
#include "grcstab/dense.hpp"

namespace grcstab {

/// 3-D convection-diffusion model problem on the unit cube:
/// u_xx + u_yy + u_zz + c*u_x discretized with 7-point central
/// differences, homogeneous Dirichlet boundaries, nx interior points per
/// axis (dimension nx^3). The default convection coefficient 1000 makes
/// the matrix strongly nonsymmetric and indefinite.
struct Pde1Spec {
    index_t nx = 5;
    double convection = 1000.0;
};

struct Pde1Problem {
    SparseMatrixCsr matrix;
    DenseVector rhs;
};

/// Builds the matrix and the source-term right-hand side
/// F(x,y,z) = exp(xyz)*sin(pi x)*sin(pi y)*sin(pi z).
///
/// Grid point (i,j,k) maps to coordinates ((i+1)h,(j+1)h,(k+1)h) with
/// h = 1/(nx+1); rows are ordered lexicographically with x fastest. The
/// stencil keeps the unscaled 6/h^2 diagonal; x-neighbors carry
/// -1/h^2 -+ c/(2h) with the minus sign on the +x neighbor.
Pde1Problem gen_pde1(const Pde1Spec& spec);

/// Banded Toeplitz matrix: A[i, i+offset] = value for every in-range i,
/// per stencil entry (offset, value).
struct ToeplitzSpec {
    index_t n = 0;
    std::vector<std::pair<index_t, double>> stencil;
};

/// Throws std::invalid_argument on duplicate or out-of-range offsets.
SparseMatrixCsr gen_toeplitz(const ToeplitzSpec& spec);

/// b = A*1, so the exact solution is the all-ones vector.
DenseVector rhs_all_ones(const SparseMatrixCsr& A);

}  // namespace grcstab
