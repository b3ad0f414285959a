#include <doctest.h>

#include <cmath>
#include <limits>

#include "lamb/errors.hpp"
#include "lamb/specfun.hpp"
#include "oracle.hpp"

using lamb::bessel_j;
using lamb::first_zero_j1;

TEST_CASE("bessel values at the origin") {
  CHECK(bessel_j(1, 0.0) == 0.0);
  CHECK(bessel_j(0, 0.0) == 1.0);
}

TEST_CASE("bessel near the first zero") {
  CHECK(std::fabs(bessel_j(1, 3.83170597)) < 1e-8);
  CHECK(std::fabs(bessel_j(0, 3.83170597) - oracle::j0(3.83170597)) < 1e-12);
  CHECK(std::fabs(bessel_j(0, 3.83170597) - (-0.402759)) < 1e-5);
}

TEST_CASE("bessel matches the 50-digit series on [0, 50]") {
  double worst0 = 0.0, worst1 = 0.0;
  for (int k = 0; k <= 2000; ++k) {
    const double x = 0.025 * k;
    worst0 = std::max(worst0, std::fabs(bessel_j(0, x) - oracle::j0(x)));
    worst1 = std::max(worst1, std::fabs(bessel_j(1, x) - oracle::j1(x)));
  }
  // straddle the switchover
  for (double x : {11.999999, 12.0, 12.000001, 12.5, 13.0}) {
    worst0 = std::max(worst0, std::fabs(bessel_j(0, x) - oracle::j0(x)));
    worst1 = std::max(worst1, std::fabs(bessel_j(1, x) - oracle::j1(x)));
  }
  MESSAGE("max abs error J0 " << worst0 << ", J1 " << worst1);
  CHECK(worst0 <= 1e-12);
  CHECK(worst1 <= 1e-12);
}

TEST_CASE("bessel is bounded by one") {
  for (int k = 0; k <= 5000; ++k) {
    const double x = 0.01 * k;
    CHECK(std::fabs(bessel_j(0, x)) <= 1.0);
    CHECK(std::fabs(bessel_j(1, x)) <= 1.0);
  }
}

TEST_CASE("bessel rejects bad input") {
  CHECK_THROWS_AS(bessel_j(0, -1e-300), lamb::DomainError);
  CHECK_THROWS_AS(bessel_j(1, -2.0), lamb::DomainError);
  CHECK_THROWS_AS(bessel_j(2, 1.0), lamb::DomainError);
  CHECK_THROWS_AS(bessel_j(0, std::numeric_limits<double>::quiet_NaN()), lamb::DomainError);
  CHECK_THROWS_AS(bessel_j(0, INFINITY), lamb::DomainError);
}

TEST_CASE("first zero of J1") {
  const double c0 = first_zero_j1();
  CHECK(std::round(c0 * 1e4) / 1e4 == doctest::Approx(3.8317).epsilon(1e-12));
  CHECK(std::fabs(c0 - 3.83170597) < 1e-8);
  CHECK(std::fabs(c0 - oracle::c0()) < 1e-14);
  CHECK(std::fabs(bessel_j(1, c0)) <= 1e-12);
  CHECK(c0 > 3.8);
  CHECK(c0 < 3.9);
}

TEST_CASE("J1 is positive below c0") {
  const double c0 = first_zero_j1();
  for (int k = 1; k <= 1000; ++k) CHECK(bessel_j(1, c0 * k / 1001.0) > 0.0);
}

TEST_CASE("J1'(c0) = J0(c0) by central differences") {
  const double c0 = first_zero_j1();
  const double h = 1e-5;
  const double d = (bessel_j(1, c0 + h) - bessel_j(1, c0 - h)) / (2.0 * h);
  CHECK(std::fabs(d - bessel_j(0, c0)) < 1e-8);
}
