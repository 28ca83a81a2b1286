#include "fracbubble/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "fracbubble/special.hpp"

namespace fracbubble {

double radial_bubble_integral(const PhysicalParams& prm, double p) {
    double a = 0.5 * p * prm.gamma - 0.5 * prm.N;
    if (a <= 0.0) throw std::invalid_argument("radial_bubble_integral: p too small, integral diverges");
    return std::pow(prm.C_N, p) * sphere_area(prm.N) * 0.5 * beta_fn(0.5 * prm.N, a);
}

double radial_bubble_integral_quad(const PhysicalParams& prm, double p) {
    // r = tan(phi) turns the radial integral into
    // int_0^{pi/2} sin^(N-1) phi cos^(p gamma - N - 1) phi dphi;
    // the cos exponent is fractional and can sit just above -1 when p gamma
    // is close to N, so the endpoint-singularity-aware rule is required
    const double acc = sin_cos_power_quad(prm.N - 1.0, p * prm.gamma - prm.N - 1.0);
    return std::pow(prm.C_N, p) * sphere_area(prm.N) * acc;
}

InteractionConstants compute_interaction_constants(const PhysicalParams& prm) {
    InteractionConstants c;
    const double g = prm.gamma;
    c.int_U2 = radial_bubble_integral(prm, 2.0);
    c.int_Ucrit = radial_bubble_integral(prm, prm.two_s_star);
    c.int_Ucm1 = radial_bubble_integral(prm, prm.two_s_star - 1.0);
    c.A1 = 2.0 * zeta_fn(g) / std::pow(2.0 * 3.1415926535897932384626433832795, g);
    c.A2 = 2.0 * half_line_decay_integral(g) /
           (std::pow(2.0, g) * 3.1415926535897932384626433832795);
    c.A3 = 2.0 * half_line_decay_integral(g + 2.0) /
           (std::pow(2.0, g + 2.0) * 3.1415926535897932384626433832795);
    c.A4 = c.A2 / (4.0 * g);
    c.A5 = prm.C_N * c.int_Ucm1;
    c.A6 = g * g / (prm.N + 2.0 * prm.s) * c.A5;
    c.B0 = (2.0 * prm.s / prm.N) * c.int_Ucrit;
    c.B1 = c.int_U2;
    return c;
}

}  // namespace fracbubble
