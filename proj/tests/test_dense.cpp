#include <doctest.h>

#include <cmath>

#include "grcstab/dense.hpp"
#include "test_support.hpp"

using grcstab::DenseVector;
using grcstab::axpy;
using grcstab::axpy_in_place;
using grcstab::dot;
using grcstab::norm2;

TEST_CASE("dot: orthogonal and norm-squared cases") {
    CHECK(dot({1.0, 0.0}, {0.0, 1.0}) == 0.0);
    CHECK(dot({3.0, 4.0}, {3.0, 4.0}) == 25.0);
    CHECK(dot({}, {}) == 0.0);
}

TEST_CASE("dot: matches the pairwise-summation oracle") {
    testsupport::Rng rng(42);
    for (grcstab::index_t n : {50, 1000, 10000}) {
        DenseVector x = testsupport::random_vector(rng, n);
        DenseVector y = testsupport::random_vector(rng, n);
        const double got = dot(x, y);
        const double expected = testsupport::pairwise_dot(x, y);
        CHECK(std::fabs(got - expected) <= 1e-14 * std::fabs(expected));
    }
}

TEST_CASE("dot: length mismatch throws") {
    CHECK_THROWS_AS(dot({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("norm2: Pythagorean triple, zero and unit vectors") {
    CHECK(norm2({3.0, 4.0}) == 5.0);
    CHECK(norm2(DenseVector(7, 0.0)) == 0.0);
    for (std::size_t n : {1u, 4u, 33u}) {
        DenseVector e(n, 0.0);
        e[n / 2] = 1.0;
        CHECK(norm2(e) == 1.0);
    }
}

TEST_CASE("axpy: scale-zero, unit and cancelling cases") {
    const DenseVector x{1.0, 2.0};
    const DenseVector y{2.0, 4.0};
    CHECK(axpy(0.0, x, y) == y);
    CHECK(axpy(1.0, {1.0, 1.0}, {1.0, 1.0}) == DenseVector{2.0, 2.0});
    CHECK(axpy(-2.0, x, y) == DenseVector{0.0, 0.0});
    CHECK_THROWS_AS(axpy(1.0, {1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("axpy: elementwise oracle on random data") {
    testsupport::Rng rng(7);
    const DenseVector x = testsupport::random_vector(rng, 64);
    const DenseVector y = testsupport::random_vector(rng, 64);
    const double a = rng.uniform(-5.0, 5.0);
    const DenseVector got = axpy(a, x, y);
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(got[i] == a * x[i] + y[i]);
    }

    DenseVector in_place = y;
    axpy_in_place(a, x, in_place);
    CHECK(in_place == got);
}
