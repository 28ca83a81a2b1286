#include "fracbubble/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracbubble {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

std::vector<Vec> generate_points(const PhysicalParams& prm, const CylinderConfig& cfg) {
    if (cfg.k < 1) throw std::invalid_argument("generate_points: k must be >= 1");
    if (cfg.h <= 0.0 || cfg.h >= 1.0) throw std::invalid_argument("generate_points: h in (0,1) required");
    if (cfg.r <= 0.0) throw std::invalid_argument("generate_points: r > 0 required");
    std::vector<Vec> pts(2 * cfg.k, zero_vec());
    const double rho = cfg.r * std::sqrt(1.0 - cfg.h * cfg.h);
    const double z = cfg.r * cfg.h;
    for (int j = 0; j < cfg.k; ++j) {
        double th = 2.0 * kPi * j / cfg.k;
        for (int side = 0; side < 2; ++side) {
            Vec& p = pts[side * cfg.k + j];
            p[0] = rho * std::cos(th);
            p[1] = rho * std::sin(th);
            p[2] = (side == 0 ? z : -z);
            for (int i = 3; i < prm.N; ++i) p[i] = cfg.ydd[i - 3];
        }
    }
    return pts;
}

double same_ring_distance(const CylinderConfig& cfg, int j) {
    return 2.0 * cfg.r * std::sqrt(1.0 - cfg.h * cfg.h) * std::sin((j - 1) * kPi / cfg.k);
}

double cross_ring_distance(const CylinderConfig& cfg, int j) {
    double sj = std::sin((j - 1) * kPi / cfg.k);
    return 2.0 * cfg.r * std::sqrt(cfg.h * cfg.h + (1.0 - cfg.h * cfg.h) * sj * sj);
}

double min_gap_d0(const PhysicalParams& prm, const CylinderConfig& cfg) {
    (void)prm;
    double cross = cross_ring_distance(cfg, 1);  // = 2 r h
    if (cfg.k < 2) return 0.25 * cross;
    return 0.25 * std::min(same_ring_distance(cfg, 2), cross);
}

ApproxSolution make_approx_solution(const PhysicalParams& prm, const CylinderConfig& cfg,
                                    bool with_cutoff, double sigma_factor) {
    check_regime(prm, cfg.k, cfg.lambda, cfg.h);
    ApproxSolution Z;
    Z.prm = prm;
    std::vector<Vec> pts = generate_points(prm, cfg);
    Z.bubbles.reserve(pts.size());
    for (const Vec& p : pts) Z.bubbles.push_back(Bubble{p, cfg.lambda});
    Z.eta.enabled = with_cutoff;
    Z.eta.r0 = cfg.r;
    Z.eta.sigma = sigma_factor * cfg.r;
    for (int i = 0; i < prm.N - 3; ++i) Z.eta.y0dd[i] = cfg.ydd[i];
    return Z;
}

double ring_sum_exact_power(const CylinderConfig& cfg, double power, bool cross, bool sin2_weight) {
    KahanSum s;
    int j0 = cross ? 1 : 2;
    for (int j = j0; j <= cfg.k; ++j) {
        double d = cross ? cross_ring_distance(cfg, j) : same_ring_distance(cfg, j);
        double term = std::pow(d, -power);
        if (sin2_weight) {
            double sj = std::sin((j - 1) * kPi / cfg.k);
            term *= sj * sj;
        }
        s.add(term);
    }
    return s.value();
}

double ring_sum_exact(const PhysicalParams& prm, const CylinderConfig& cfg, RingSum which) {
    switch (which) {
        case RingSum::same_pow_gamma:
            return ring_sum_exact_power(cfg, prm.gamma, false, false);
        case RingSum::cross_pow_gamma:
            return ring_sum_exact_power(cfg, prm.gamma, true, false);
        case RingSum::cross_pow_gamma_plus_2:
            return ring_sum_exact_power(cfg, prm.gamma + 2.0, true, false);
        case RingSum::cross_sin2_pow_gamma_plus_2:
            return ring_sum_exact_power(cfg, prm.gamma + 2.0, true, true);
    }
    return 0.0;
}

double ring_sum_asymptotic(const PhysicalParams& prm, const InteractionConstants& ic,
                           const CylinderConfig& cfg, RingSum which) {
    const double g = prm.gamma;
    const double k = cfg.k;
    const double r = cfg.r;
    const double h = cfg.h;
    const double sq = std::sqrt(1.0 - h * h);
    switch (which) {
        case RingSum::same_pow_gamma:
            return ic.A1 * std::pow(k, g) / std::pow(r * sq, g);
        case RingSum::cross_pow_gamma:
            return ic.A2 * k / (std::pow(r, g) * std::pow(h, g - 1.0) * sq);
        case RingSum::cross_pow_gamma_plus_2:
            return ic.A3 * k / (std::pow(r, g + 2.0) * std::pow(h, g + 1.0) * sq);
        case RingSum::cross_sin2_pow_gamma_plus_2:
            return ic.A4 * k / (std::pow(r, g + 2.0) * std::pow(h, g - 1.0) * sq * sq * sq);
    }
    return 0.0;
}

RingSumReport ring_sum_report(const PhysicalParams& prm, const InteractionConstants& ic,
                              const CylinderConfig& cfg, RingSum which) {
    RingSumReport rep;
    rep.exact = ring_sum_exact(prm, cfg, which);
    rep.asymptotic = ring_sum_asymptotic(prm, ic, cfg, which);
    rep.rel_err = std::abs(rep.exact - rep.asymptotic) / std::abs(rep.exact);
    return rep;
}

}  // namespace fracbubble
