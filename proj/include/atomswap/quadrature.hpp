#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature for complex integrands,
// plus a tensor-product rule over the ordered triangle 0 <= s2 <= s1 <= u.

#include <complex>
#include <functional>

namespace atomswap::quadrature {

using Complex = std::complex<double>;

struct Tolerance {
    double absolute{1e-13};
    double relative{1e-10};
    int max_intervals{2000};
};

struct Result {
    Complex value{};
    double error_estimate{0};
    bool converged{false};
    long evaluations{0};
};

Result integrate(const std::function<Complex(double)>& f, double lo, double hi, const Tolerance& tol = {});

/// Integral of f(s1, s2) over 0 <= s2 <= s1 <= u.
Result integrate_ordered_triangle(const std::function<Complex(double, double)>& f, double u,
                                  const Tolerance& tol = {});

}  // namespace atomswap::quadrature
