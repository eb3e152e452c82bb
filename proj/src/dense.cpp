#include "grcstab/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace grcstab {

namespace {

void require_same_length(const DenseVector& x, const DenseVector& y, const char* op) {
    if (x.size() != y.size()) {
        throw std::invalid_argument(std::string(op) + ": vector lengths differ (" +
                                    std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
    }
}

}  // namespace

double dot(const DenseVector& x, const DenseVector& y) {
    require_same_length(x, y, "dot");
    long double acc = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += static_cast<long double>(x[i]) * static_cast<long double>(y[i]);
    }
    return static_cast<double>(acc);
}

double norm2(const DenseVector& x) {
    return std::sqrt(dot(x, x));
}

DenseVector axpy(double a, const DenseVector& x, const DenseVector& y) {
    require_same_length(x, y, "axpy");
    DenseVector out(y);
    axpy_in_place(a, x, out);
    return out;
}

void axpy_in_place(double a, const DenseVector& x, DenseVector& y) {
    require_same_length(x, y, "axpy");
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] += a * x[i];
    }
}

void scale_in_place(DenseVector& x, double a) {
    for (double& v : x) {
        v *= a;
    }
}

}  // namespace grcstab
