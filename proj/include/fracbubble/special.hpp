#pragma once

#include <vector>

namespace fracbubble {

// Gamma function on the real line (poles at non-positive integers excluded),
// Lanczos approximation plus reflection; about 14 correct digits.
double gamma_fn(double x);

// log |Gamma(x)| for x > 0.
double lgamma_fn(double x);

// Euler Beta function B(a,b), a,b > 0.
double beta_fn(double a, double b);

// Riemann zeta for real x > 1 via Euler-Maclaurin (12+ digits in the range
// used here, x >= 1.5).
double zeta_fn(double x);

// Surface measure of the unit sphere S^(n-1) in R^n.
double sphere_area(int n);

// Gauss-Legendre rule on [-1,1]; nodes ascending. Computed on demand and
// cached per order.
struct GaussRule {
    std::vector<double> node;
    std::vector<double> weight;
};
const GaussRule& gauss_legendre(int order);

// int_0^{pi/2} sin^a(phi) cos^b(phi) dphi for a, b > -1 by tanh-sinh
// quadrature; independent of the Beta closed form against which it is
// checked in the tests. Endpoint powers may be fractional or negative.
double sin_cos_power_quad(double a, double b);

// int_0^inf (1+t^2)^(-g/2) dt for g > 1, by quadrature (substitution
// t = tan(phi)); independent of the Beta closed form against which it is
// checked in the tests.
double half_line_decay_integral(double g);

}  // namespace fracbubble
