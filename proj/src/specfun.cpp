#include "lamb/specfun.hpp"

#include <cmath>
#include <numbers>

#include "lamb/errors.hpp"

namespace lamb {
namespace {

constexpr double switchover = 12.0;

double series(int n, double x) {
  const long double h = 0.5L * x;
  const long double h2 = h * h;
  long double term = n == 0 ? 1.0L : h;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -h2 / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (std::fabs(term) < 1e-22L * (1.0L + std::fabs(sum))) break;
  }
  return static_cast<double>(sum);
}

// Hankel expansion, truncated at the smallest term.
double asymptotic(int n, double x) {
  const double mu = 4.0 * n * n;
  double p = 0.0, q = 0.0;
  double t = 1.0;
  double prev = INFINITY;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      t *= (mu - odd * odd) / (8.0 * k * x);
    }
    if (std::fabs(t) > prev) break;
    prev = std::fabs(t);
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    if (k % 2 == 0) p += sign * t;
    else q += sign * t;
    if (prev < 1e-17) break;
  }
  const double chi = x - (0.5 * n + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j(int order, double x) {
  if (order != 0 && order != 1) throw DomainError("bessel_j: order must be 0 or 1");
  if (!std::isfinite(x)) throw DomainError("bessel_j: non-finite argument");
  if (x < 0.0) throw DomainError("bessel_j: negative argument");
  return x < switchover ? series(order, x) : asymptotic(order, x);
}

double first_zero_j1() {
  static const double c0 = [] {
    double lo = 3.5, hi = 4.0;
    double flo = bessel_j(1, lo);
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      const double fm = bessel_j(1, mid);
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    double x = 0.5 * (lo + hi);
    const double d = bessel_j(0, x) - bessel_j(1, x) / x;
    return x - bessel_j(1, x) / d;
  }();
  return c0;
}

}  // namespace lamb
