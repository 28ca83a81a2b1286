#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fracbubble/common.hpp"
#include "fracbubble/params.hpp"

namespace fracbubble {

// Single bubble U_{x,lambda}(y) = C_N lambda^((N-2s)/2) (1 + lambda^2 |y-x|^2)^(-(N-2s)/2).
// With C_N as in PhysicalParams this solves the critical equation
// (-Lap)^s U = U^(2s*-1) exactly on R^N.
struct Bubble {
    Vec center = zero_vec();
    double lambda = 1.0;
};

double bubble_eval(const PhysicalParams& prm, const Bubble& b, const Vec& y);
// derivative in the concentration parameter lambda
double bubble_dlambda(const PhysicalParams& prm, const Bubble& b, const Vec& y);
// derivative in the center coordinate x_axis (not the argument y)
double bubble_dcenter(const PhysicalParams& prm, const Bubble& b, const Vec& y, int axis);

// Radial profile about the bubble center together with two derivatives and the
// power-law tail f(rho) ~ tail_coeff * rho^(-tail_power); used by the radial
// integral route for the fractional Laplacian.
struct BubbleProfile {
    double C = 0.0;
    double lambda = 1.0;
    double gamma = 0.0;
    double f(double rho) const;
    double df(double rho) const;
    double ddf(double rho) const;
    double tail_coeff() const;
    double tail_power() const { return gamma; }
};

BubbleProfile bubble_profile(const PhysicalParams& prm, const Bubble& b);

// Smooth cutoff supported near the concentration torus, evaluated through the
// cylindrical distance d = sqrt((r - r0)^2 + |y'' - y0''|^2):
//   eta = 1 for d <= sigma, eta = 0 for d >= 2 sigma,
// joined by the quintic smoothstep (C^2, |eta'| <= 15/(8 sigma)).
struct CutoffEta {
    bool enabled = false;
    double r0 = 1.0;
    std::array<double, kMaxDim - 3> y0dd{};
    double sigma = 0.09;

    double torus_distance(const Vec& y, int N) const;
    double value(const Vec& y, int N) const;
    double value_rd(double d) const;  // as a function of the distance alone
};

// Sum of 2k bubbles times the cutoff: the approximate solution whose
// Lyapunov-Schmidt ingredients the rest of the library quantifies.
struct ApproxSolution {
    PhysicalParams prm;
    std::vector<Bubble> bubbles;  // first k: top ring, next k: bottom ring
    CutoffEta eta;

    double sum_bubbles(const Vec& y) const;
    double eval(const Vec& y) const;  // eta * sum when eta.enabled
};

// Weights for the weighted sup norms, summed over all bubbles:
//   w(y) = sum_j lambda^peak (1 + lambda |y - x_j|)^(-peak - tau).
// star carries the solution scale peak = (N-2s)/2 (objects comparable to U);
// dstar carries the right-hand-side scale peak = (N+2s)/2 (objects comparable
// to U^(2s*-1), e.g. the PDE residual).
double star_weight(const ApproxSolution& Z, const Vec& y);
double dstar_weight(const ApproxSolution& Z, const Vec& y);

// Sample set for estimating weighted sup norms: lambda-scaled radial shells
// around representative bubbles in several directions, gap midpoints, points
// across the cutoff annulus, and seeded far-field draws. Deterministic in the
// seed. k is the per-ring bubble count (bubbles.size() == 2k).
std::vector<Vec> norm_sample_points(const ApproxSolution& Z, int k, int n_far, uint64_t seed);

// sup over samples of |residual(y)| / w(y)
template <typename F, typename W>
double weighted_sup(const std::vector<Vec>& pts, F&& f, W&& w) {
    double best = 0.0;
    for (const Vec& y : pts) {
        double v = std::abs(f(y)) / w(y);
        if (v > best) best = v;
    }
    return best;
}

}  // namespace fracbubble
