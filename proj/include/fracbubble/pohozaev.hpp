#pragma once

#include <array>
#include <vector>

#include "fracbubble/bubble.hpp"
#include "fracbubble/constants.hpp"
#include "fracbubble/energy.hpp"
#include "fracbubble/frac_laplacian.hpp"
#include "fracbubble/lattice.hpp"
#include "fracbubble/mc.hpp"
#include "fracbubble/params.hpp"
#include "fracbubble/potential.hpp"

namespace fracbubble {

// Preimage of a disc under the cylindrical trace map: all y with
// (|y'| - r0)^2 + |y'' - y0''|^2 <= rho^2. This is the region that contains
// every bubble of a doubled-ring configuration (their traces coincide), so
// concentration statements hold on it; a Euclidean ball would not work.
struct TorusBall {
    double r0 = 1.0;
    std::array<double, kMaxDim - 3> y0dd{};
    double rho = 0.3;

    bool contains(const Vec& y, int N) const;
};

// min over a grid of the trace ball of r^(2s) V; positivity is a standing
// hypothesis for the cutoff region and the Pohozaev balances
double min_weighted_potential(const PhysicalParams& prm, const Potential& V, double r0,
                              const std::array<double, kMaxDim - 3>& y0dd, double radius,
                              int n_grid = 41);

// Local PDE residual of the cutoff approximation at a point:
//   l(y) = Z^(2s*-1) - (-Lap)^s Z - V Z,  Z = eta sum_j U_j,
// split using the exact bubble equation (-Lap)^s U_j = U_j^(2s*-1):
//   J1 = Z^(2s*-1) - eta sum_j U_j^(2s*-1)
//   J2 = -V Z
//   J3 = -[cutoff commutator]   (Monte Carlo)
struct ResidualBreakdown {
    double J1 = 0.0, J2 = 0.0, J3 = 0.0;
    double J3_err = 0.0;
    double total = 0.0;
};

ResidualBreakdown lk_eval(const ApproxSolution& Z, const Potential& V, const Vec& y,
                          const McSpec& spec);

// One row per k: configuration solved from the reduced system, residual
// measured as sup over the norm sample set of |l(y)| / w**(y).
struct ResidualTrendRow {
    int k = 0;
    double lambda = 0.0, h = 0.0;
    double sup_weighted = 0.0;
    double sup_err = 0.0;  // MC error of the argmax point, weighted
    double sup_J1 = 0.0, sup_J2 = 0.0, sup_J3 = 0.0;  // per-part weighted sups
};

std::vector<ResidualTrendRow> residual_norm_trend(
    const PhysicalParams& prm, const InteractionConstants& ic, const Potential& V,
    const std::vector<int>& ks, double r_star, const std::array<double, kMaxDim - 3>& ydd_star,
    double lambda_multiplier, const McSpec& point_spec, double sigma_factor = 0.09,
    int n_far = 12, uint64_t sample_seed = 2026);

// least-squares slope of log|y| against log x
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Pohozaev volume terms over the trace ball. scaling mode integrand:
//   g = s V + 1/2 (r dV/dr + sum_i y''_i dV/dy''_i),
// which equals 1/2 r^(1-2s) d/dr (r^(2s) V) + 1/2 <y'', grad'' V> and so
// vanishes at interior critical points of r^(2s) V. axis mode: g = 1/2 dV/dy''_i.
enum class PohozaevMode { scaling, axis };

double pohozaev_integrand(const PhysicalParams& prm, const Potential& V, const Vec& y,
                          PohozaevMode mode, int axis);

// direct Monte Carlo of int_B g u^2 with u = Z (cutoff applied if enabled)
McResult pohozaev_volume_mc(const ApproxSolution& Z, const Potential& V, const TorusBall& B,
                            PohozaevMode mode, int axis, const McSpec& spec);

// leading concentration value 2k lambda^(-2s) (int U^2) g(trace point)
double pohozaev_concentration_value(const PhysicalParams& prm, const InteractionConstants& ic,
                                    const Potential& V, const CylinderConfig& cfg,
                                    PohozaevMode mode, int axis);

// generic concentration check: int_B g u^2 by MC for caller-supplied g
McResult concentration_integral_mc(const ApproxSolution& Z,
                                   const std::function<double(const Vec&)>& g, const TorusBall& B,
                                   const McSpec& spec);

}  // namespace fracbubble
