#pragma once

#include <array>

#include "fracbubble/constants.hpp"
#include "fracbubble/lattice.hpp"
#include "fracbubble/mc.hpp"
#include "fracbubble/params.hpp"
#include "fracbubble/potential.hpp"

namespace fracbubble {

// Reduced energy of the 2k-bubble configuration, per the two-ring expansion
//   I = k ( B0 + B1 V(r,ydd) / lambda^(2s)
//            - B2(r) k^gamma / (lambda sqrt(1-h^2))^gamma ... (same-ring)
//            - B3(r) k / (lambda^gamma h^(gamma-1) sqrt(1-h^2)) )  (cross-ring)
// with B2(r) = A1 A5 / r^gamma, B3(r) = A2 A5 / r^gamma. The gradients are the
// exact partial derivatives of these retained terms.
struct ReducedEnergy {
    double single = 0.0;
    double potential = 0.0;
    double same_ring = 0.0;   // signed contribution (negative)
    double cross_ring = 0.0;  // signed contribution (negative)
    double total = 0.0;
};

ReducedEnergy reduced_energy(const PhysicalParams& prm, const InteractionConstants& ic,
                             const Potential& V, const CylinderConfig& cfg);

double reduced_grad_lambda(const PhysicalParams& prm, const InteractionConstants& ic,
                           const Potential& V, const CylinderConfig& cfg);
double reduced_grad_h(const PhysicalParams& prm, const InteractionConstants& ic,
                      const Potential& V, const CylinderConfig& cfg);
double reduced_grad_r(const PhysicalParams& prm, const InteractionConstants& ic,
                      const Potential& V, const CylinderConfig& cfg);
// same radial derivative assembled from the exact ring sums instead of their
// asymptotics (all pair distances scale linearly in r)
double reduced_grad_r_lattice(const PhysicalParams& prm, const InteractionConstants& ic,
                              const Potential& V, const CylinderConfig& cfg);
void reduced_grad_y(const PhysicalParams& prm, const InteractionConstants& ic, const Potential& V,
                    const CylinderConfig& cfg, double* out);

// Critical point of g(r, y'') = r^(2s) V(r, y''): damped Newton on the
// gradient with finite-difference Jacobian, constrained to r > 0.
struct CriticalPoint {
    double r = 1.0;
    std::array<double, kMaxDim - 3> ydd{};
    double V = 0.0;
    double grad_norm = 0.0;
    int iters = 0;
    bool converged = false;
};

CriticalPoint find_critical_point(const PhysicalParams& prm, const Potential& V, double r_init,
                                  const std::array<double, kMaxDim - 3>& ydd_init);

// The two scalar balance equations fixing the concentration multipliers
//   h      = t1 k^(-(gamma-1)/(gamma+1)),   gamma A1 t1^(gamma+1) = (gamma-1) A2
//   lambda = t2 k^(gamma/(N-4s)),           2s B1 V* t2^(N-4s)    = gamma B2(r*)
// solved in closed form; residuals are relative to the equations' right sides.
struct ReducedRoots {
    double t1 = 0.0;
    double t2 = 0.0;
    double res_h = 0.0;
    double res_lambda = 0.0;
};

ReducedRoots solve_reduced_system(const PhysicalParams& prm, const InteractionConstants& ic,
                                  double r_star, double V_star);
// safeguarded Newton on the same system from a caller-chosen start
ReducedRoots solve_reduced_system_newton(const PhysicalParams& prm, const InteractionConstants& ic,
                                         double r_star, double V_star, double t1_init,
                                         double t2_init, int max_iter = 80);

CylinderConfig config_from_roots(const PhysicalParams& prm, const ReducedRoots& roots, int k,
                                 double r_star, const std::array<double, kMaxDim - 3>& ydd_star,
                                 double lambda_multiplier = 1.0);

// Direct evaluation of I(Z) for the plain bubble sum:
//   1/2 sum_ij int U_i^(2s*-1) U_j  +  1/2 int V Z^2  -  (1/2s*) int Z^(2s*),
// with the diagonal quadratic part exact, pair terms by importance-sampled MC
// (cached over the distinct separations), field terms by mixture MC.
struct EnergyParts {
    double quad_diag = 0.0;
    double quad_cross = 0.0;
    double pot = 0.0;
    double crit = 0.0;
    double total = 0.0;
    double err = 0.0;  // combined standard error of the MC pieces
};

EnergyParts energy_direct_oracle(const PhysicalParams& prm, const InteractionConstants& ic,
                                 const Potential& V, const CylinderConfig& cfg,
                                 const McSpec& spec);

}  // namespace fracbubble
