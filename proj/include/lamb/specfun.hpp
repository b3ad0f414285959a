#pragma once

namespace lamb {

// J_0 or J_1 for x >= 0. Absolute error <= 1e-12 on [0, 50].
double bessel_j(int order, double x);

// First positive zero of J_1, about 3.8317.
double first_zero_j1();

}  // namespace lamb
