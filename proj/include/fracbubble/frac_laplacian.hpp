#pragma once

#include <functional>
#include <vector>

#include "fracbubble/bubble.hpp"
#include "fracbubble/mc.hpp"
#include "fracbubble/params.hpp"

namespace fracbubble {

// Radial function with two derivatives and decay metadata, the input to the
// deterministic fractional Laplacian route. core_scale is the length scale of
// the core (1/lambda for bubbles); tail_coeff = 0 marks faster-than-power
// decay, otherwise f(rho) ~ tail_coeff * rho^(-tail_power) for large rho.
struct RadialFunction {
    std::function<double(double)> f, df, ddf;
    double core_scale = 1.0;
    double tail_coeff = 0.0;
    double tail_power = 0.0;
};

RadialFunction bubble_radial_function(const PhysicalParams& prm, const Bubble& b);
RadialFunction gaussian_radial_function();  // exp(-rho^2 / 2)

struct PvQuadratureSpec {
    int gl_order = 20;         // radial Gauss-Legendre order per panel
    int alpha_order = 32;      // angular order for the spherical mean
    double tail_factor = 30.0; // analytic tail starts at tail_factor * max(b, core)
    double panel_ratio = 2.5;  // max endpoint ratio of a radial panel
    bool refine_check = true;  // second pass at higher resolution for an error estimate
};

struct PvResult {
    double value = 0.0;
    double err = 0.0;  // |refined - base| when refine_check, else 0
};

// (-Lap)^s of u(y) = f(|y - c|) evaluated at distance b from the center.
// Computed from the second derivative of the spherical mean M(r) of u about y:
//     (-Lap)^s u(y) = c_Ns omega_(N-1) / (2s (1-2s)) int_0^inf M''(r) r^(1-2s) dr,
// which is the PV integral after two integrations by parts (valid here since
// s > 1/2 on every admissible window; boundary terms vanish). This removes
// the r^(-1-2s) singularity entirely: the naive symmetrized-difference
// quadrature amplifies roundoff by r^(-1-2s) and loses all digits for s near 1.
PvResult pv_radial(const PhysicalParams& prm, const RadialFunction& fn, double b,
                   const PvQuadratureSpec& spec);

// (-Lap)^s U_b at y, and the same summed over a bubble family (by linearity)
PvResult pv_fractional_laplacian_bubble(const PhysicalParams& prm, const Bubble& b, const Vec& y,
                                        const PvQuadratureSpec& spec);
PvResult pv_fractional_laplacian_sum(const PhysicalParams& prm, const std::vector<Bubble>& bs,
                                     const Vec& y, const PvQuadratureSpec& spec);

// right-hand side U^(2s*-1)(y) that the bubble solves against
double bubble_rhs(const PhysicalParams& prm, const Bubble& b, const Vec& y);

// max over pts of |(-Lap)^s U - U^(2s*-1)| / U^(2s*-1)
double bubble_pde_max_rel_error(const PhysicalParams& prm, const Bubble& b,
                                const std::vector<Vec>& pts, const PvQuadratureSpec& spec);

// Plain Monte Carlo route for generic (non-radial) u:
//     (-Lap)^s u(y) = c_Ns / 2 int (2u(y) - u(y+z) - u(y-z)) |z|^(-N-2s) dz,
// sampled with a piecewise power-law radius proposal r^(-(N+2s-2)) inside the
// unit ball and r^(-(N+2s)) outside; the symmetrized difference is O(|z|^2)
// at the origin so the estimator has finite variance.
McResult pv_symmetrized_mc(const std::function<double(const Vec&)>& u, const PhysicalParams& prm,
                           const Vec& y, const McSpec& spec);

// c_Ns PV int (eta(y) - eta(x)) W(x) |x-y|^(-N-2s) dx with W the plain bubble
// sum of Z; the commutator between the cutoff and the nonlocal operator.
McResult cutoff_commutator_mc(const ApproxSolution& Z, const Vec& y, const McSpec& spec);

}  // namespace fracbubble
