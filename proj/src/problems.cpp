#include "grcstab/problems.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace grcstab {

Pde1Problem gen_pde1(const Pde1Spec& spec) {
    if (spec.nx < 1) {
        throw std::invalid_argument("gen_pde1: nx must be >= 1");
    }
    const index_t nx = spec.nx;
    const index_t n = nx * nx * nx;
    const double h = 1.0 / static_cast<double>(nx + 1);
    const double inv_h2 = 1.0 / (h * h);
    const double conv_half = spec.convection / (2.0 * h);

    const double diag = 6.0 * inv_h2;
    const double x_plus = -inv_h2 - conv_half;
    const double x_minus = -inv_h2 + conv_half;
    const double yz_off = -inv_h2;

    TripletList triplets;
    triplets.n = n;
    triplets.entries.reserve(7 * n);
    DenseVector rhs(n);

    const double pi = std::acos(-1.0);
    // Lexicographic ordering, x fastest.
    for (index_t k = 0; k < nx; ++k) {
        for (index_t j = 0; j < nx; ++j) {
            for (index_t i = 0; i < nx; ++i) {
                const index_t row = i + nx * j + nx * nx * k;
                triplets.entries.push_back({row, row, diag});
                if (i > 0) triplets.entries.push_back({row, row - 1, x_minus});
                if (i < nx - 1) triplets.entries.push_back({row, row + 1, x_plus});
                if (j > 0) triplets.entries.push_back({row, row - nx, yz_off});
                if (j < nx - 1) triplets.entries.push_back({row, row + nx, yz_off});
                if (k > 0) triplets.entries.push_back({row, row - nx * nx, yz_off});
                if (k < nx - 1) triplets.entries.push_back({row, row + nx * nx, yz_off});

                const double x = (i + 1) * h;
                const double y = (j + 1) * h;
                const double z = (k + 1) * h;
                rhs[row] = std::exp(x * y * z) * std::sin(pi * x) * std::sin(pi * y) *
                           std::sin(pi * z);
            }
        }
    }

    return {SparseMatrixCsr::from_triplets(triplets), std::move(rhs)};
}

SparseMatrixCsr gen_toeplitz(const ToeplitzSpec& spec) {
    if (spec.n < 1) {
        throw std::invalid_argument("gen_toeplitz: n must be >= 1");
    }
    std::set<index_t> seen;
    for (const auto& [offset, value] : spec.stencil) {
        (void)value;
        if (!seen.insert(offset).second) {
            throw std::invalid_argument("gen_toeplitz: duplicate offset " +
                                        std::to_string(offset));
        }
        if (offset <= -spec.n || offset >= spec.n) {
            throw std::invalid_argument("gen_toeplitz: offset " + std::to_string(offset) +
                                        " out of range for n=" + std::to_string(spec.n));
        }
    }

    TripletList triplets;
    triplets.n = spec.n;
    for (index_t i = 0; i < spec.n; ++i) {
        for (const auto& [offset, value] : spec.stencil) {
            const index_t col = i + offset;
            if (col >= 0 && col < spec.n) {
                triplets.entries.push_back({i, col, value});
            }
        }
    }
    return SparseMatrixCsr::from_triplets(triplets);
}

DenseVector rhs_all_ones(const SparseMatrixCsr& A) {
    return matvec(A, DenseVector(A.n(), 1.0));
}

}  // namespace grcstab
