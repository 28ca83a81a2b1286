#pragma once

#include <array>
#include <vector>

#include "fracbubble/bubble.hpp"
#include "fracbubble/constants.hpp"
#include "fracbubble/params.hpp"

namespace fracbubble {

// Doubled-cylinder configuration: 2k bubbles at
//   x_j^{+-} = (r sqrt(1-h^2) cos(2(j-1)pi/k), r sqrt(1-h^2) sin(2(j-1)pi/k), +- r h, ydd),
// j = 1..k. Every center has |x'| = r exactly, so in (r, y'') coordinates all
// bubbles sit at the same trace point (r, ydd).
struct CylinderConfig {
    int k = 8;
    double lambda = 1.0;
    double h = 0.1;
    double r = 1.0;
    std::array<double, kMaxDim - 3> ydd{};
};

// the 2k centers; indices 0..k-1 are the + ring, k..2k-1 the - ring
std::vector<Vec> generate_points(const PhysicalParams& prm, const CylinderConfig& cfg);

// closed-form center distances (j is 1-based as in the definition above)
double same_ring_distance(const CylinderConfig& cfg, int j);
double cross_ring_distance(const CylinderConfig& cfg, int j);

// quarter of the minimal center separation
double min_gap_d0(const PhysicalParams& prm, const CylinderConfig& cfg);

// Checks the config against the concentration regime for its k (lambda and h
// within the multiplier windows of PhysicalParams) and builds the 2k-bubble
// approximate solution. sigma_factor scales the cutoff width relative to r;
// pass with_cutoff = false for the plain bubble sum.
ApproxSolution make_approx_solution(const PhysicalParams& prm, const CylinderConfig& cfg,
                                    bool with_cutoff, double sigma_factor = 0.09);

// Ring sums with their leading-order closed forms. Exact sums are evaluated
// with compensated summation from the closed-form distances.
enum class RingSum {
    same_pow_gamma,            // sum_{j=2}^k |x_j^+ - x_1^+|^(-gamma)
    cross_pow_gamma,           // sum_{j=1}^k |x_j^- - x_1^+|^(-gamma)
    cross_pow_gamma_plus_2,    // same with power gamma + 2
    cross_sin2_pow_gamma_plus_2  // sin^2((j-1)pi/k) weighted, power gamma + 2
};

double ring_sum_exact(const PhysicalParams& prm, const CylinderConfig& cfg, RingSum which);
double ring_sum_asymptotic(const PhysicalParams& prm, const InteractionConstants& ic,
                           const CylinderConfig& cfg, RingSum which);

// general-power variants used by gradient assembly
double ring_sum_exact_power(const CylinderConfig& cfg, double power, bool cross, bool sin2_weight);

struct RingSumReport {
    double exact = 0.0;
    double asymptotic = 0.0;
    double rel_err = 0.0;
};

RingSumReport ring_sum_report(const PhysicalParams& prm, const InteractionConstants& ic,
                              const CylinderConfig& cfg, RingSum which);

}  // namespace fracbubble
