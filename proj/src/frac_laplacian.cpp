#include "fracbubble/frac_laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracbubble/special.hpp"

namespace fracbubble {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

RadialFunction bubble_radial_function(const PhysicalParams& prm, const Bubble& b) {
    BubbleProfile p = bubble_profile(prm, b);
    RadialFunction fn;
    fn.f = [p](double rho) { return p.f(rho); };
    fn.df = [p](double rho) { return p.df(rho); };
    fn.ddf = [p](double rho) { return p.ddf(rho); };
    fn.core_scale = 1.0 / b.lambda;
    fn.tail_coeff = p.tail_coeff();
    fn.tail_power = p.tail_power();
    return fn;
}

RadialFunction gaussian_radial_function() {
    RadialFunction fn;
    fn.f = [](double rho) { return std::exp(-0.5 * rho * rho); };
    fn.df = [](double rho) { return -rho * std::exp(-0.5 * rho * rho); };
    fn.ddf = [](double rho) { return (rho * rho - 1.0) * std::exp(-0.5 * rho * rho); };
    fn.core_scale = 1.0;
    fn.tail_coeff = 0.0;
    fn.tail_power = 0.0;
    return fn;
}

namespace {

// Second derivative of the spherical mean
//   M(r) = avg_{|th|=1} f(|r th - b e|),
// computed by differentiating under the angular integral:
//   M''(r) = c_ang int_0^pi [ f''(R) ((r - b t)/R)^2 sin^(N-2)a
//                           + f'(R) b^2 sin^N a / R^3 ] da,
// with R^2 = r^2 + b^2 - 2 b r t, t = cos a. (The identity
// 1/R - (r-bt)^2/R^3 = b^2 sin^2 a / R^3 keeps this cancellation-free.)
// When r b >> max(core, |r-b|)^2 the integrand peaks at a ~ a_c near zero;
// geometric angular panels resolve it.
struct MeanDD {
    const RadialFunction* fn;
    double b;
    int N;
    int ang_order;
    double c_ang;

    double integrand(double r, double a) const {
        double t = std::cos(a);
        double sa = std::sin(a);
        double R2 = (r - b) * (r - b) + 2.0 * b * r * (1.0 - t);
        double R = std::sqrt(R2);
        if (R < 1e-300) return fn->ddf(0.0) * std::pow(sa, N - 2.0);
        double c = (r - b * t) / R;
        double sN2 = std::pow(sa, N - 2.0);
        return fn->ddf(R) * c * c * sN2 + fn->df(R) * b * b * sa * sa * sN2 / (R2 * R);
    }

    double panel(double r, double a0, double a1, const GaussRule& g) const {
        double acc = 0.0;
        for (size_t i = 0; i < g.node.size(); ++i) {
            double a = 0.5 * (a0 + a1) + 0.5 * (a1 - a0) * g.node[i];
            acc += 0.5 * (a1 - a0) * g.weight[i] * integrand(r, a);
        }
        return acc;
    }

    double operator()(double r) const {
        if (b <= 0.0) return fn->ddf(r);
        double scale = std::max(fn->core_scale, std::abs(r - b));
        double a_c = scale / std::sqrt(r * b + 1e-300);
        if (a_c >= kPi / 8.0) {
            return c_ang * panel(r, 0.0, kPi, gauss_legendre(ang_order));
        }
        const GaussRule& g = gauss_legendre(std::max(8, ang_order / 2));
        double acc = 0.0;
        double a0 = 0.0, a1 = 0.25 * a_c;
        while (a0 < kPi) {
            acc += panel(r, a0, std::min(a1, kPi), g);
            a0 = a1;
            a1 *= 2.0;
        }
        return c_ang * acc;
    }
};

struct PvResolution {
    int gl_order;
    int alpha_order;
    double tail_factor;
};

double pv_radial_pass(const PhysicalParams& prm, const RadialFunction& fn, double b,
                      const PvResolution& res, double panel_ratio) {
    const double s = prm.s;
    const double core = fn.core_scale;
    MeanDD mdd{&fn, b, prm.N, res.alpha_order, sphere_area(prm.N - 1) / sphere_area(prm.N)};
    const GaussRule& rad = gauss_legendre(res.gl_order);

    double r1 = 0.25 * core;
    if (b > 0.0) r1 = std::min(r1, 0.25 * b);
    double r_tail = std::max(res.tail_factor * std::max(b, core), 40.0 * core);

    KahanSum total;

    // [0, r1]: substitute v = r^(2-2s); the Jacobian absorbs r^(1-2s) exactly
    {
        double p = 2.0 - 2.0 * s;
        double v1 = std::pow(r1, p);
        double edges[4] = {0.0, v1 / 16.0, v1 / 4.0, v1};
        for (int e = 0; e < 3; ++e)
            for (size_t i = 0; i < rad.node.size(); ++i) {
                double v = 0.5 * (edges[e] + edges[e + 1]) +
                           0.5 * (edges[e + 1] - edges[e]) * rad.node[i];
                double w = 0.5 * (edges[e + 1] - edges[e]) * rad.weight[i];
                total.add(w * mdd(std::pow(v, 1.0 / p)) / p);
            }
    }

    // panel edges: geometric scale points of the core and of the shell r = b
    std::vector<double> edges;
    edges.push_back(r1);
    auto push = [&](double x) {
        if (x > r1 * (1.0 + 1e-12) && x < r_tail * (1.0 - 1e-12)) edges.push_back(x);
    };
    for (double c : {0.25, 1.0, 4.0, 16.0, 64.0}) push(c * core);
    if (b > 0.0) {
        for (double c : {0.5, 1.0, 2.0, 4.0}) push(c * b);
        if (b > 32.0 * core)
            for (double d = core; d < 0.45 * b; d *= 4.0) {
                push(b - d);
                push(b + d);
            }
    }
    edges.push_back(r_tail);
    std::sort(edges.begin(), edges.end());

    for (size_t e = 0; e + 1 < edges.size(); ++e) {
        double e0 = edges[e], e1 = edges[e + 1];
        if (e1 <= e0 * (1.0 + 1e-12)) continue;
        int nsub = std::max(1, static_cast<int>(std::ceil(std::log(e1 / e0) / std::log(panel_ratio))));
        for (int j = 0; j < nsub; ++j) {
            double a0 = e0 * std::pow(e1 / e0, static_cast<double>(j) / nsub);
            double a1 = e0 * std::pow(e1 / e0, static_cast<double>(j + 1) / nsub);
            for (size_t i = 0; i < rad.node.size(); ++i) {
                double r = 0.5 * (a0 + a1) + 0.5 * (a1 - a0) * rad.node[i];
                double w = 0.5 * (a1 - a0) * rad.weight[i];
                total.add(w * mdd(r) * std::pow(r, 1.0 - 2.0 * s));
            }
        }
    }

    // analytic power tail: M(r) ~ A r^(-g) gives M''(r) ~ A g (g+1) r^(-g-2)
    if (fn.tail_coeff != 0.0) {
        double g = fn.tail_power;
        total.add(fn.tail_coeff * g * (g + 1.0) * std::pow(r_tail, -g - 2.0 * s) / (g + 2.0 * s));
    }
    return total.value();
}

}  // namespace

PvResult pv_radial(const PhysicalParams& prm, const RadialFunction& fn, double b,
                   const PvQuadratureSpec& spec) {
    if (prm.s <= 0.55)
        throw std::domain_error("pv_radial: s must exceed 1/2 for the by-parts radial form");
    if (b < 1e-9 * fn.core_scale) b = 0.0;
    double pref = prm.c_Ns * sphere_area(prm.N) / (2.0 * prm.s * (1.0 - 2.0 * prm.s));
    PvResolution base{spec.gl_order, spec.alpha_order, spec.tail_factor};
    double v1 = pref * pv_radial_pass(prm, fn, b, base, spec.panel_ratio);
    if (!spec.refine_check) return PvResult{v1, 0.0};
    PvResolution fine{spec.gl_order + 12, 2 * spec.alpha_order, 2.0 * spec.tail_factor};
    double v2 = pref * pv_radial_pass(prm, fn, b, fine, std::sqrt(spec.panel_ratio));
    return PvResult{v2, std::abs(v2 - v1)};
}

PvResult pv_fractional_laplacian_bubble(const PhysicalParams& prm, const Bubble& b, const Vec& y,
                                        const PvQuadratureSpec& spec) {
    return pv_radial(prm, bubble_radial_function(prm, b), dist(y, b.center, prm.N), spec);
}

PvResult pv_fractional_laplacian_sum(const PhysicalParams& prm, const std::vector<Bubble>& bs,
                                     const Vec& y, const PvQuadratureSpec& spec) {
    PvResult out;
    KahanSum v, e;
    for (const Bubble& b : bs) {
        PvResult r = pv_fractional_laplacian_bubble(prm, b, y, spec);
        v.add(r.value);
        e.add(r.err);
    }
    out.value = v.value();
    out.err = e.value();
    return out;
}

double bubble_rhs(const PhysicalParams& prm, const Bubble& b, const Vec& y) {
    return std::pow(bubble_eval(prm, b, y), prm.two_s_star - 1.0);
}

double bubble_pde_max_rel_error(const PhysicalParams& prm, const Bubble& b,
                                const std::vector<Vec>& pts, const PvQuadratureSpec& spec) {
    double worst = 0.0;
    for (const Vec& y : pts) {
        double lhs = pv_fractional_laplacian_bubble(prm, b, y, spec).value;
        double rhs = bubble_rhs(prm, b, y);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    return worst;
}

namespace {

// radius proposal ~ r^(1-2s) inside [0,1], ~ r^(-1-2s) outside; both pieces
// integrate the symmetrized-difference kernel with finite variance
struct PiecewisePowerRadius {
    double s, m1, m2, T;
    explicit PiecewisePowerRadius(double s_) : s(s_) {
        m1 = 1.0 / (2.0 - 2.0 * s);
        m2 = 1.0 / (2.0 * s);
        T = m1 + m2;
    }
    double sample(double u) const {
        double x = u * T;
        if (x < m1) return std::pow(x * (2.0 - 2.0 * s), 1.0 / (2.0 - 2.0 * s));
        double up = (x - m1) / m2;
        up = std::min(up, 1.0 - 1e-16);
        return std::pow(1.0 - up, -1.0 / (2.0 * s));
    }
    // N-dimensional density at radius r (divided by the angular uniform law)
    double density(double r, int N, double omega) const {
        double radial = (r <= 1.0) ? std::pow(r, 1.0 - 2.0 * s) : std::pow(r, -1.0 - 2.0 * s);
        return radial / (T * omega * std::pow(r, N - 1.0));
    }
};

}  // namespace

// Below r_min the symmetrized difference is pure cancellation noise (it decays
// like r^2 while the subtraction floor stays at eps |u|), and the effective
// r^-2 weight turns that noise into an infinite-variance term. Evaluate at
// r_min instead and continue quadratically: the difference is O(r^2) there, so
// the relative bias is O(r_min^2) while the weight becomes an exact constant
// T omega / r_min^2.
constexpr double kPvClampRadius = 1e-4;

McResult pv_symmetrized_mc(const std::function<double(const Vec&)>& u, const PhysicalParams& prm,
                           const Vec& y, const McSpec& spec) {
    const PiecewisePowerRadius prop(prm.s);
    const double omega = sphere_area(prm.N);
    const double uy = u(y);
    const int N = prm.N;
    auto one = [&, uy](Rng& rng) {
        double r = prop.sample(rng.uniform());
        const double re = std::max(r, kPvClampRadius);
        Vec th = rng.sphere_direction(N);
        Vec yp = y, ym = y;
        for (int i = 0; i < N; ++i) {
            yp[i] += re * th[i];
            ym[i] -= re * th[i];
        }
        double D = uy - 0.5 * (u(yp) + u(ym));
        const double w = r >= kPvClampRadius
                             ? std::pow(r, -N - 2.0 * prm.s) / prop.density(r, N, omega)
                             : prop.T * omega / (re * re);
        return prm.c_Ns * D * w;
    };
    return mc_shard_run(one, spec);
}

McResult cutoff_commutator_mc(const ApproxSolution& Z, const Vec& y, const McSpec& spec) {
    if (!Z.eta.enabled) return McResult{0.0, 0.0, 0};
    const PhysicalParams& prm = Z.prm;
    const PiecewisePowerRadius prop(prm.s);
    const double omega = sphere_area(prm.N);
    const double ey = Z.eta.value(y, prm.N);
    const int N = prm.N;
    auto one = [&, ey](Rng& rng) {
        double r = prop.sample(rng.uniform());
        const double re = std::max(r, kPvClampRadius);  // quadratic continuation as above
        Vec th = rng.sphere_direction(N);
        Vec yp = y, ym = y;
        for (int i = 0; i < N; ++i) {
            yp[i] += re * th[i];
            ym[i] -= re * th[i];
        }
        double hp = (ey - Z.eta.value(yp, N)) * Z.sum_bubbles(yp);
        double hm = (ey - Z.eta.value(ym, N)) * Z.sum_bubbles(ym);
        const double w = r >= kPvClampRadius
                             ? std::pow(r, -N - 2.0 * prm.s) / prop.density(r, N, omega)
                             : prop.T * omega / (re * re);
        return prm.c_Ns * 0.5 * (hp + hm) * w;
    };
    return mc_shard_run(one, spec);
}

}  // namespace fracbubble
