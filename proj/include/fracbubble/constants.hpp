#pragma once

#include "fracbubble/params.hpp"

namespace fracbubble {

// Closed forms for the radial bubble integrals and the constants entering the
// ring-sum asymptotics and the reduced energy expansion. All are functions of
// (N, s) alone; the location-dependent combinations (B2, B3, D1, D2) live in
// the energy module.
struct InteractionConstants {
    double int_U2 = 0.0;     // integral of U^2 at lambda = 1 (lambda-dependent: scales as lambda^(-2s))
    double int_Ucrit = 0.0;  // integral of U^(2s*), scale invariant
    double int_Ucm1 = 0.0;   // integral of U^(2s*-1) at lambda = 1
    double A1 = 0.0;         // same-ring sum density: 2 zeta(gamma) / (2 pi)^gamma
    double A2 = 0.0;         // cross-ring sum density, power gamma
    double A3 = 0.0;         // cross-ring sum density, power gamma + 2
    double A4 = 0.0;         // sin^2-weighted cross-ring density, power gamma + 2
    double A5 = 0.0;         // pair interaction coefficient: C_N * int U^(2s*-1)
    double A6 = 0.0;         // pair gradient coefficient: gamma^2 / (N + 2s) * A5
    double B0 = 0.0;         // single-bubble energy: (2s/N) int U^(2s*)
    double B1 = 0.0;         // potential coupling: int U^2 at lambda = 1
};

InteractionConstants compute_interaction_constants(const PhysicalParams& prm);

// integral over R^N of U_{0,1}^p for p > N/(N-2s), via the Beta closed form
double radial_bubble_integral(const PhysicalParams& prm, double p);
// same value by direct 1D quadrature (cross-check route)
double radial_bubble_integral_quad(const PhysicalParams& prm, double p);

}  // namespace fracbubble
