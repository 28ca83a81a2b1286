#include "fracbubble/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracbubble/special.hpp"

namespace fracbubble {

SWindow admissible_s_window(int N) {
    if (N < 5 || N > 8) throw std::invalid_argument("admissible_s_window: N must be 5..8");
    if (N == 5) {
        const double root = std::sqrt(static_cast<double>(N) * N - 2.0 * N + 9.0);
        return {(N + 3.0 - root) / 4.0, (3.0 * (N - 1.0) - root) / 8.0};
    }
    const double lo = N * (std::sqrt(8.0 * N - 11.0) - 1.0) / (8.0 * N - 12.0);
    return {lo, 1.0};
}

PhysicalParams make_params(int N, double s, double L0, double L1, double M0, double M1) {
    const SWindow w = admissible_s_window(N);
    if (!(s > w.lo && s < w.hi)) throw AdmissibilityError(N, s, w.lo, w.hi);
    if (!(L0 > 0.0 && L1 > L0 && M0 > 0.0 && M1 > M0))
        throw std::invalid_argument("make_params: window multipliers must satisfy 0 < lo < hi");

    PhysicalParams p;
    p.N = N;
    p.s = s;
    p.gamma = N - 2.0 * s;
    p.two_s_star = 2.0 * N / p.gamma;
    p.tau = (N - 4.0 * s) / (2.0 * p.gamma);
    p.gamma0 = gamma_fn(0.5 * (N + 2.0 * s)) / gamma_fn(0.5 * (N - 2.0 * s));
    p.C_N = std::pow(std::pow(4.0, s) * p.gamma0, p.gamma / (4.0 * s));
    p.c_Ns = std::pow(4.0, s) * s * gamma_fn(0.5 * (N + 2.0 * s)) /
             (std::pow(M_PI, 0.5 * N) * gamma_fn(1.0 - s));
    p.omega = sphere_area(N);
    p.s_lo = w.lo;
    p.s_hi = w.hi;
    p.lambda_exp = p.gamma / (N - 4.0 * s);
    p.h_exp = (p.gamma - 1.0) / (p.gamma + 1.0);
    p.L0 = L0;
    p.L1 = L1;
    p.M0 = M0;
    p.M1 = M1;
    return p;
}

PhysicalParams make_params(int N, double s) { return make_params(N, s, 0.5, 2.0, 0.5, 2.0); }

void check_regime(const PhysicalParams& p, int k, double lambda, double h) {
    if (k < 2) throw std::invalid_argument("check_regime: needs k >= 2");
    const double kl = std::pow(static_cast<double>(k), p.lambda_exp);
    const double kh = std::pow(static_cast<double>(k), -p.h_exp);
    if (!(lambda >= p.L0 * kl && lambda <= p.L1 * kl))
        throw RegimeError("lambda = " + std::to_string(lambda) + " outside [" +
                          std::to_string(p.L0 * kl) + ", " + std::to_string(p.L1 * kl) +
                          "] at k = " + std::to_string(k));
    if (!(h >= p.M0 * kh && h <= p.M1 * kh))
        throw RegimeError("h = " + std::to_string(h) + " outside [" + std::to_string(p.M0 * kh) +
                          ", " + std::to_string(p.M1 * kh) + "] at k = " + std::to_string(k));
}

bool norm_exponent_margin_ok(const PhysicalParams& p) {
    const double a = 0.5 * p.gamma - p.tau;
    const double b = 2.0 * p.s - p.tau;
    const double c = (2.0 * p.s / p.gamma) * (0.5 * (p.N + 2.0 * p.s) - p.tau);
    return std::min({a, b, c}) > 0.5 * (2.0 * p.s + 1.0);
}

}  // namespace fracbubble
