#pragma once

#include "fracbubble/common.hpp"

namespace fracbubble {

// Open admissibility window for the fractional order s at dimension N.
// N = 5 has both endpoints interior to (0,1); N in {6,7,8} has upper endpoint 1.
struct SWindow {
    double lo;
    double hi;
};
SWindow admissible_s_window(int N);

// Dimension-and-order bundle shared by every module.  C_N normalizes the
// standard bubble so that it solves (-Lap)^s U = U^(2N/(N-2s)-1) exactly;
// c_Ns is the singular-integral normalization matching the symbol |xi|^(2s).
struct PhysicalParams {
    int N = 6;
    double s = 0.9;

    double two_s_star = 0.0;  // 2N/(N-2s)
    double gamma = 0.0;       // N-2s, bubble decay exponent
    double tau = 0.0;         // (N-4s)/(2(N-2s)), weighted-norm shift
    double gamma0 = 0.0;      // Gamma((N+2s)/2)/Gamma((N-2s)/2)
    double C_N = 0.0;         // (4^s gamma0)^((N-2s)/(4s))
    double c_Ns = 0.0;        // 4^s s Gamma((N+2s)/2)/(pi^(N/2) Gamma(1-s))
    double omega = 0.0;       // area of S^(N-1)

    double s_lo = 0.0;        // admissible window actually used for validation
    double s_hi = 0.0;

    // scaling-window exponents: lambda ~ k^lambda_exp, h ~ k^(-h_exp)
    double lambda_exp = 0.0;  // (N-2s)/(N-4s)
    double h_exp = 0.0;       // (N-2s-1)/(N-2s+1)

    // window multipliers, lambda/t in [L0,L1], h*k^h_exp in [M0,M1]
    double L0 = 0.5;
    double L1 = 2.0;
    double M0 = 0.5;
    double M1 = 2.0;
};

// Validates N in [5,8] and s strictly inside the window; throws
// AdmissibilityError (with the window bounds) otherwise.
PhysicalParams make_params(int N, double s);
PhysicalParams make_params(int N, double s, double L0, double L1, double M0, double M1);

// Checks lambda in [L0 k^lambda_exp, L1 k^lambda_exp] and likewise for h;
// throws RegimeError on violation.
void check_regime(const PhysicalParams& p, int k, double lambda, double h);

// Diagnostic from the norm bookkeeping: true when
// min{(N-2s)/2 - tau, 2s - tau, (2s/(N-2s))((N+2s)/2 - tau)} > (2s+1)/2.
bool norm_exponent_margin_ok(const PhysicalParams& p);

}  // namespace fracbubble
