#include "fracbubble/pohozaev.hpp"

#include <algorithm>
#include <cmath>

namespace fracbubble {

bool TorusBall::contains(const Vec& y, int N) const {
    double r = radial_part(y);
    double d2 = (r - r0) * (r - r0);
    for (int i = 3; i < N; ++i) d2 += (y[i] - y0dd[i - 3]) * (y[i] - y0dd[i - 3]);
    return d2 <= rho * rho;
}

double min_weighted_potential(const PhysicalParams& prm, const Potential& V, double r0,
                              const std::array<double, kMaxDim - 3>& y0dd, double radius,
                              int n_grid) {
    // grid over the (r, |y'' - y0''| along each axis) disc of the given radius
    double best = 1e300;
    const int m = prm.N - 3;
    for (int i = 0; i < n_grid; ++i) {
        double dr = -radius + 2.0 * radius * i / (n_grid - 1);
        double r = r0 + dr;
        if (r <= 0.0) continue;
        double rem2 = radius * radius - dr * dr;
        double rem = rem2 > 0.0 ? std::sqrt(rem2) : 0.0;
        for (int ax = 0; ax < std::max(1, m); ++ax)
            for (int j = 0; j < 9; ++j) {
                double yv[kMaxDim - 3];
                for (int q = 0; q < m; ++q) yv[q] = y0dd[q];
                if (m > 0) yv[ax] += -rem + 2.0 * rem * j / 8.0;
                best = std::min(best, weighted_potential(V, prm.s, r, yv, m));
                if (m == 0) break;
            }
    }
    return best;
}

ResidualBreakdown lk_eval(const ApproxSolution& Z, const Potential& V, const Vec& y,
                          const McSpec& spec) {
    const PhysicalParams& prm = Z.prm;
    ResidualBreakdown out;
    double ey = Z.eta.value(y, prm.N);
    double W = Z.sum_bubbles(y);
    double Zy = ey * W;
    KahanSum rhs;
    for (const Bubble& b : Z.bubbles)
        rhs.add(std::pow(bubble_eval(prm, b, y), prm.two_s_star - 1.0));
    out.J1 = std::pow(Zy, prm.two_s_star - 1.0) - ey * rhs.value();
    out.J2 = -V.value_at(y, prm.N) * Zy;
    McResult com = cutoff_commutator_mc(Z, y, spec);
    out.J3 = -com.value;
    out.J3_err = com.err;
    out.total = out.J1 + out.J2 + out.J3;
    return out;
}

std::vector<ResidualTrendRow> residual_norm_trend(
    const PhysicalParams& prm, const InteractionConstants& ic, const Potential& V,
    const std::vector<int>& ks, double r_star, const std::array<double, kMaxDim - 3>& ydd_star,
    double lambda_multiplier, const McSpec& point_spec, double sigma_factor, int n_far,
    uint64_t sample_seed) {
    double V_star = V.value(r_star, ydd_star.data(), prm.N - 3);
    ReducedRoots roots = solve_reduced_system(prm, ic, r_star, V_star);
    std::vector<ResidualTrendRow> rows;
    for (int k : ks) {
        CylinderConfig cfg = config_from_roots(prm, roots, k, r_star, ydd_star, lambda_multiplier);
        ApproxSolution Z = make_approx_solution(prm, cfg, true, sigma_factor);
        std::vector<Vec> pts = norm_sample_points(Z, k, n_far, derive_seed(sample_seed, k));
        ResidualTrendRow row;
        row.k = k;
        row.lambda = cfg.lambda;
        row.h = cfg.h;
        int pi = 0;
        for (const Vec& y : pts) {
            McSpec ps = point_spec;
            ps.seed = derive_seed(point_spec.seed, static_cast<uint64_t>(k) * 100003 + pi++);
            ResidualBreakdown rb = lk_eval(Z, V, y, ps);
            double w = dstar_weight(Z, y);
            double v = std::abs(rb.total) / w;
            if (v > row.sup_weighted) {
                row.sup_weighted = v;
                row.sup_err = rb.J3_err / w;
            }
            row.sup_J1 = std::max(row.sup_J1, std::abs(rb.J1) / w);
            row.sup_J2 = std::max(row.sup_J2, std::abs(rb.J2) / w);
            row.sup_J3 = std::max(row.sup_J3, std::abs(rb.J3) / w);
        }
        rows.push_back(row);
    }
    return rows;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0.0, sy = 0.0;
    size_t n = std::min(x.size(), y.size());
    for (size_t i = 0; i < n; ++i) {
        sx += std::log(x[i]);
        sy += std::log(std::abs(y[i]));
    }
    double mx = sx / n, my = sy / n;
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double dx = std::log(x[i]) - mx;
        num += dx * (std::log(std::abs(y[i])) - my);
        den += dx * dx;
    }
    return num / den;
}

double pohozaev_integrand(const PhysicalParams& prm, const Potential& V, const Vec& y,
                          PohozaevMode mode, int axis) {
    const int m = prm.N - 3;
    double r = radial_part(y);
    double dr, dy[kMaxDim - 3];
    V.gradient(r, y.data() + 3, m, dr, dy);
    if (mode == PohozaevMode::axis) return 0.5 * dy[axis];
    double g = prm.s * V.value(r, y.data() + 3, m) + 0.5 * r * dr;
    for (int i = 0; i < m; ++i) g += 0.5 * y[3 + i] * dy[i];
    return g;
}

McResult pohozaev_volume_mc(const ApproxSolution& Z, const Potential& V, const TorusBall& B,
                            PohozaevMode mode, int axis, const McSpec& spec) {
    auto g = [&](const Vec& y) { return pohozaev_integrand(Z.prm, V, y, mode, axis); };
    return concentration_integral_mc(Z, g, B, spec);
}

double pohozaev_concentration_value(const PhysicalParams& prm, const InteractionConstants& ic,
                                    const Potential& V, const CylinderConfig& cfg,
                                    PohozaevMode mode, int axis) {
    Vec trace = zero_vec();
    trace[0] = cfg.r;
    for (int i = 0; i < prm.N - 3; ++i) trace[3 + i] = cfg.ydd[i];
    double g = pohozaev_integrand(prm, V, trace, mode, axis);
    return 2.0 * cfg.k * std::pow(cfg.lambda, -2.0 * prm.s) * ic.int_U2 * g;
}

McResult concentration_integral_mc(const ApproxSolution& Z,
                                   const std::function<double(const Vec&)>& g, const TorusBall& B,
                                   const McSpec& spec) {
    const PhysicalParams& prm = Z.prm;
    const RadialTable& tab = radial_table(prm.N, prm.gamma);
    std::vector<MixtureComponent> comps;
    comps.reserve(Z.bubbles.size());
    for (const Bubble& b : Z.bubbles) comps.push_back(MixtureComponent{b.center, b.lambda, &tab});
    MixtureProposal q(prm.N, std::move(comps));
    auto f = [&](const Vec& y) {
        if (!B.contains(y, prm.N)) return 0.0;
        double u = Z.eval(y);
        return g(y) * u * u;
    };
    return mc_integrate(f, q, spec);
}

}  // namespace fracbubble
