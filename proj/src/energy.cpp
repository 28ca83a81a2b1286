#include "fracbubble/energy.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace fracbubble {

namespace {

struct Terms {
    double k, lam, h, sq, Vv, B2, B3;
};

Terms unpack(const PhysicalParams& prm, const InteractionConstants& ic, const Potential& V,
             const CylinderConfig& cfg) {
    Terms t;
    t.k = cfg.k;
    t.lam = cfg.lambda;
    t.h = cfg.h;
    t.sq = std::sqrt(1.0 - cfg.h * cfg.h);
    t.Vv = V.value(cfg.r, cfg.ydd.data(), prm.N - 3);
    t.B2 = ic.A1 * ic.A5 / std::pow(cfg.r, prm.gamma);
    t.B3 = ic.A2 * ic.A5 / std::pow(cfg.r, prm.gamma);
    return t;
}

}  // namespace

ReducedEnergy reduced_energy(const PhysicalParams& prm, const InteractionConstants& ic,
                             const Potential& V, const CylinderConfig& cfg) {
    const double g = prm.gamma;
    Terms t = unpack(prm, ic, V, cfg);
    ReducedEnergy e;
    e.single = t.k * ic.B0;
    e.potential = t.k * ic.B1 * t.Vv * std::pow(t.lam, -2.0 * prm.s);
    e.same_ring = -t.k * t.B2 * std::pow(t.k, g) * std::pow(t.lam * t.sq, -g);
    e.cross_ring = -t.k * t.B3 * t.k /
                   (std::pow(t.lam, g) * std::pow(t.h, g - 1.0) * t.sq);
    e.total = e.single + e.potential + e.same_ring + e.cross_ring;
    return e;
}

double reduced_grad_lambda(const PhysicalParams& prm, const InteractionConstants& ic,
                           const Potential& V, const CylinderConfig& cfg) {
    const double g = prm.gamma;
    Terms t = unpack(prm, ic, V, cfg);
    double d_pot = -2.0 * prm.s * ic.B1 * t.Vv * std::pow(t.lam, -2.0 * prm.s - 1.0);
    double d_same = g * t.B2 * std::pow(t.k, g) * std::pow(t.sq, -g) * std::pow(t.lam, -g - 1.0);
    double d_cross = g * t.B3 * t.k * std::pow(t.h, 1.0 - g) / t.sq * std::pow(t.lam, -g - 1.0);
    return t.k * (d_pot + d_same + d_cross);
}

double reduced_grad_h(const PhysicalParams& prm, const InteractionConstants& ic,
                      const Potential& V, const CylinderConfig& cfg) {
    const double g = prm.gamma;
    Terms t = unpack(prm, ic, V, cfg);
    double lam_g = std::pow(t.lam, -g);
    double d_same = -g * t.B2 * std::pow(t.k, g) * lam_g * t.h * std::pow(t.sq, -g - 2.0);
    double d_cross_main = (g - 1.0) * t.B3 * t.k * lam_g * std::pow(t.h, -g) / t.sq;
    double d_cross_sub = -t.B3 * t.k * lam_g * std::pow(t.h, 2.0 - g) / (t.sq * t.sq * t.sq);
    return t.k * (d_same + d_cross_main + d_cross_sub);
}

double reduced_grad_r(const PhysicalParams& prm, const InteractionConstants& ic,
                      const Potential& V, const CylinderConfig& cfg) {
    const double g = prm.gamma;
    Terms t = unpack(prm, ic, V, cfg);
    double dVr, dVy[kMaxDim - 3];
    V.gradient(cfg.r, cfg.ydd.data(), prm.N - 3, dVr, dVy);
    double d_pot = ic.B1 * dVr * std::pow(t.lam, -2.0 * prm.s);
    // d/dr of -B2(r) X = +gamma B2/r X, same for B3
    double d_same = (g / cfg.r) * t.B2 * std::pow(t.k, g) * std::pow(t.lam * t.sq, -g);
    double d_cross = (g / cfg.r) * t.B3 * t.k /
                     (std::pow(t.lam, g) * std::pow(t.h, g - 1.0) * t.sq);
    return t.k * (d_pot + d_same + d_cross);
}

double reduced_grad_r_lattice(const PhysicalParams& prm, const InteractionConstants& ic,
                              const Potential& V, const CylinderConfig& cfg) {
    const double g = prm.gamma;
    Terms t = unpack(prm, ic, V, cfg);
    double dVr, dVy[kMaxDim - 3];
    V.gradient(cfg.r, cfg.ydd.data(), prm.N - 3, dVr, dVy);
    double d_pot = ic.B1 * dVr * std::pow(t.lam, -2.0 * prm.s);
    double sums = ring_sum_exact(prm, cfg, RingSum::same_pow_gamma) +
                  ring_sum_exact(prm, cfg, RingSum::cross_pow_gamma);
    double d_latt = g * ic.A5 * std::pow(t.lam, -g) / cfg.r * sums;
    return t.k * (d_pot + d_latt);
}

void reduced_grad_y(const PhysicalParams& prm, const InteractionConstants& ic, const Potential& V,
                    const CylinderConfig& cfg, double* out) {
    Terms t = unpack(prm, ic, V, cfg);
    double dVr, dVy[kMaxDim - 3];
    V.gradient(cfg.r, cfg.ydd.data(), prm.N - 3, dVr, dVy);
    for (int i = 0; i < prm.N - 3; ++i)
        out[i] = t.k * ic.B1 * dVy[i] * std::pow(t.lam, -2.0 * prm.s);
}

namespace {

int solve_linear(double* A, double* b, int n) {
    // Gaussian elimination with partial pivoting on an n x n system (n <= 6)
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r0 = c + 1; r0 < n; ++r0)
            if (std::abs(A[r0 * n + c]) > std::abs(A[piv * n + c])) piv = r0;
        if (std::abs(A[piv * n + c]) < 1e-300) return 1;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(A[c * n + j], A[piv * n + j]);
            std::swap(b[c], b[piv]);
        }
        for (int r0 = c + 1; r0 < n; ++r0) {
            double f = A[r0 * n + c] / A[c * n + c];
            for (int j = c; j < n; ++j) A[r0 * n + j] -= f * A[c * n + j];
            b[r0] -= f * b[c];
        }
    }
    for (int c = n - 1; c >= 0; --c) {
        for (int j = c + 1; j < n; ++j) b[c] -= A[c * n + j] * b[j];
        b[c] /= A[c * n + c];
    }
    return 0;
}

}  // namespace

CriticalPoint find_critical_point(const PhysicalParams& prm, const Potential& V, double r_init,
                                  const std::array<double, kMaxDim - 3>& ydd_init) {
    const int m = prm.N - 3;
    const int n = m + 1;
    CriticalPoint cp;
    cp.r = r_init;
    cp.ydd = ydd_init;

    auto grad = [&](double r, const double* ydd, double* out) {
        double dy[kMaxDim - 3];
        weighted_potential_gradient(V, prm.s, r, ydd, m, out[0], dy);
        for (int i = 0; i < m; ++i) out[1 + i] = dy[i];
    };
    auto norm = [&](const double* v) {
        double s2 = 0.0;
        for (int i = 0; i < n; ++i) s2 += v[i] * v[i];
        return std::sqrt(s2);
    };

    double F[6], Ft[6], J[36], step[6];
    grad(cp.r, cp.ydd.data(), F);
    double f0 = norm(F);
    for (cp.iters = 0; cp.iters < 120; ++cp.iters) {
        if (f0 < 1e-13 * (1.0 + std::abs(V.value(cp.r, cp.ydd.data(), m)))) {
            cp.converged = true;
            break;
        }
        // finite-difference Jacobian, central, scale-aware steps
        for (int j = 0; j < n; ++j) {
            double base = (j == 0) ? cp.r : cp.ydd[j - 1];
            double hstep = 1e-6 * (1.0 + std::abs(base));
            double save = base;
            auto set = [&](double v) {
                if (j == 0)
                    cp.r = v;
                else
                    cp.ydd[j - 1] = v;
            };
            set(save + hstep);
            grad(cp.r, cp.ydd.data(), Ft);
            for (int i = 0; i < n; ++i) J[i * n + j] = Ft[i];
            set(save - hstep);
            grad(cp.r, cp.ydd.data(), Ft);
            for (int i = 0; i < n; ++i) J[i * n + j] = (J[i * n + j] - Ft[i]) / (2.0 * hstep);
            set(save);
        }
        for (int i = 0; i < n; ++i) step[i] = -F[i];
        if (solve_linear(J, step, n) != 0) break;
        // damped update with projection to r > 0
        double alpha = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            double rn = cp.r + alpha * step[0];
            if (rn <= 0.0) {
                alpha *= 0.5;
                continue;
            }
            std::array<double, kMaxDim - 3> yn = cp.ydd;
            for (int i = 0; i < m; ++i) yn[i] += alpha * step[1 + i];
            grad(rn, yn.data(), Ft);
            double f1 = norm(Ft);
            if (f1 < (1.0 - 1e-4 * alpha) * f0) {
                cp.r = rn;
                cp.ydd = yn;
                for (int i = 0; i < n; ++i) F[i] = Ft[i];
                f0 = f1;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) break;
    }
    cp.grad_norm = f0;
    cp.V = V.value(cp.r, cp.ydd.data(), m);
    if (cp.grad_norm < 1e-10 * (1.0 + std::abs(cp.V))) cp.converged = true;
    // The gradient of r^(2s) V also vanishes asymptotically in the decaying
    // tails of V, where no stationary point exists; an out-of-basin start can
    // walk there and pass the gradient test. Reject when the weighted
    // potential has collapsed relative to its starting value.
    const double g_init = std::pow(r_init, 2.0 * prm.s) *
                          std::abs(V.value(r_init, ydd_init.data(), m));
    const double g_final = std::pow(cp.r, 2.0 * prm.s) * std::abs(cp.V);
    if (g_init > 0.0 && g_final < 1e-6 * g_init) cp.converged = false;
    return cp;
}

ReducedRoots solve_reduced_system(const PhysicalParams& prm, const InteractionConstants& ic,
                                  double r_star, double V_star) {
    if (V_star <= 0.0)
        throw std::domain_error("solve_reduced_system: positive V at the critical point required");
    const double g = prm.gamma;
    ReducedRoots out;
    double D1 = (g - 1.0) * ic.A2 / (g * ic.A1);
    out.t1 = std::pow(D1, 1.0 / (g + 1.0));
    double B2 = ic.A1 * ic.A5 / std::pow(r_star, g);
    double D2 = g * B2 / (2.0 * prm.s * ic.B1);
    out.t2 = std::pow(D2 / V_star, 1.0 / (prm.N - 4.0 * prm.s));
    double rhs_h = (g - 1.0) * ic.A2;
    double rhs_l = g * B2;
    out.res_h = std::abs(g * ic.A1 * std::pow(out.t1, g + 1.0) - rhs_h) / rhs_h;
    out.res_lambda =
        std::abs(2.0 * prm.s * ic.B1 * V_star * std::pow(out.t2, prm.N - 4.0 * prm.s) - rhs_l) /
        rhs_l;
    return out;
}

ReducedRoots solve_reduced_system_newton(const PhysicalParams& prm, const InteractionConstants& ic,
                                         double r_star, double V_star, double t1_init,
                                         double t2_init, int max_iter) {
    const double g = prm.gamma;
    const double B2 = ic.A1 * ic.A5 / std::pow(r_star, g);
    const double rhs_h = (g - 1.0) * ic.A2;
    const double rhs_l = g * B2;
    auto Fv = [&](double t1, double t2, double* F) {
        F[0] = g * ic.A1 * std::pow(t1, g + 1.0) - rhs_h;
        F[1] = 2.0 * prm.s * ic.B1 * V_star * std::pow(t2, prm.N - 4.0 * prm.s) - rhs_l;
    };
    double t1 = t1_init, t2 = t2_init;
    double F[2], Ft[2];
    Fv(t1, t2, F);
    double f0 = std::max(std::abs(F[0]) / rhs_h, std::abs(F[1]) / rhs_l);
    for (int it = 0; it < max_iter && f0 > 1e-14; ++it) {
        double h1 = 1e-7 * (1.0 + t1), h2 = 1e-7 * (1.0 + t2);
        double Fp[2], Fm[2];
        Fv(t1 + h1, t2, Fp);
        Fv(t1 - h1, t2, Fm);
        double J00 = (Fp[0] - Fm[0]) / (2.0 * h1), J10 = (Fp[1] - Fm[1]) / (2.0 * h1);
        Fv(t1, t2 + h2, Fp);
        Fv(t1, t2 - h2, Fm);
        double J01 = (Fp[0] - Fm[0]) / (2.0 * h2), J11 = (Fp[1] - Fm[1]) / (2.0 * h2);
        double det = J00 * J11 - J01 * J10;
        if (std::abs(det) < 1e-300) break;
        double s1 = -(J11 * F[0] - J01 * F[1]) / det;
        double s2 = -(-J10 * F[0] + J00 * F[1]) / det;
        double alpha = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 50 && !accepted; ++bt) {
            double n1 = t1 + alpha * s1, n2 = t2 + alpha * s2;
            if (n1 <= 0.0 || n2 <= 0.0) {
                alpha *= 0.5;
                continue;
            }
            Fv(n1, n2, Ft);
            double f1 = std::max(std::abs(Ft[0]) / rhs_h, std::abs(Ft[1]) / rhs_l);
            if (f1 < (1.0 - 1e-4 * alpha) * f0 || f1 < 1e-14) {
                t1 = n1;
                t2 = n2;
                F[0] = Ft[0];
                F[1] = Ft[1];
                f0 = f1;
                accepted = true;
            } else {
                alpha *= 0.5;
            }
        }
        if (!accepted) break;
    }
    ReducedRoots out;
    out.t1 = t1;
    out.t2 = t2;
    out.res_h = std::abs(F[0]) / rhs_h;
    out.res_lambda = std::abs(F[1]) / rhs_l;
    return out;
}

CylinderConfig config_from_roots(const PhysicalParams& prm, const ReducedRoots& roots, int k,
                                 double r_star, const std::array<double, kMaxDim - 3>& ydd_star,
                                 double lambda_multiplier) {
    CylinderConfig cfg;
    cfg.k = k;
    cfg.lambda = lambda_multiplier * roots.t2 * std::pow(static_cast<double>(k), prm.lambda_exp);
    cfg.h = roots.t1 * std::pow(static_cast<double>(k), -prm.h_exp);
    cfg.r = r_star;
    cfg.ydd = ydd_star;
    return cfg;
}

EnergyParts energy_direct_oracle(const PhysicalParams& prm, const InteractionConstants& ic,
                                 const Potential& V, const CylinderConfig& cfg,
                                 const McSpec& spec) {
    ApproxSolution Z = make_approx_solution(prm, cfg, false);
    EnergyParts out;
    out.quad_diag = cfg.k * ic.int_Ucrit;

    // pair terms: every bubble sees the same pattern of separations, so
    // 1/2 sum_{i != j} = k * sum over bubble 1's partners; cache by distance
    std::map<long long, McResult> cache;
    auto pair_value = [&](double d) {
        long long key = static_cast<long long>(d * cfg.lambda * 1e9);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        Bubble a{zero_vec(), cfg.lambda};
        Bubble b{zero_vec(), cfg.lambda};
        b.center[0] = d;
        McSpec ps = spec;
        ps.seed = derive_seed(spec.seed, static_cast<uint64_t>(cache.size() + 101));
        McResult r = interaction_integral_mc(prm, a, b, ps);
        cache.emplace(key, r);
        return r;
    };

    KahanSum cross_sum;
    double cross_var = 0.0;
    for (int j = 2; j <= cfg.k; ++j) {
        McResult r = pair_value(same_ring_distance(cfg, j));
        cross_sum.add(r.value);
        cross_var += r.err * r.err;
    }
    for (int j = 1; j <= cfg.k; ++j) {
        McResult r = pair_value(cross_ring_distance(cfg, j));
        cross_sum.add(r.value);
        cross_var += r.err * r.err;
    }
    out.quad_cross = cfg.k * cross_sum.value();
    double err_cross = cfg.k * std::sqrt(cross_var);

    McSpec fs = spec;
    fs.seed = derive_seed(spec.seed, 7001);
    McResult pot = field_potential_mass_mc(Z, V, fs);
    fs.seed = derive_seed(spec.seed, 7002);
    McResult crit = field_crit_power_mc(Z, fs);
    out.pot = 0.5 * pot.value;
    out.crit = -crit.value / prm.two_s_star;
    out.total = out.quad_diag + out.quad_cross + out.pot + out.crit;
    double e1 = 0.5 * pot.err;
    double e2 = crit.err / prm.two_s_star;
    out.err = std::sqrt(err_cross * err_cross + e1 * e1 + e2 * e2);
    return out;
}

}  // namespace fracbubble
