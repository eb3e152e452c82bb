/// @file dense.hpp
/// @brief Dense vector kernels shared by all solvers.

#pragma once

#include <cstdint>
#include <vector>

namespace grcstab {

using index_t = std::int64_t;

/// Dense real vector; its length must match the dimension of the matrix
/// it is paired with.
using DenseVector = std::vector<double>;

/// Inner product x'y, accumulated in the widest available precision
/// (long double) with straightforward sequential order.
double dot(const DenseVector& x, const DenseVector& y);

/// Euclidean norm sqrt(dot(x, x)); 0 for the zero vector.
double norm2(const DenseVector& x);

/// Returns a*x + y.
DenseVector axpy(double a, const DenseVector& x, const DenseVector& y);

/// y += a*x.
void axpy_in_place(double a, const DenseVector& x, DenseVector& y);

/// x *= a.
void scale_in_place(DenseVector& x, double a);

}  // namespace grcstab
