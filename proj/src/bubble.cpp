#include "fracbubble/bubble.hpp"

#include <cmath>

#include "fracbubble/rng.hpp"

namespace fracbubble {

double bubble_eval(const PhysicalParams& prm, const Bubble& b, const Vec& y) {
    double d2 = dist2(y, b.center, prm.N);
    double q = 1.0 + b.lambda * b.lambda * d2;
    return prm.C_N * std::pow(b.lambda, 0.5 * prm.gamma) * std::pow(q, -0.5 * prm.gamma);
}

double bubble_dlambda(const PhysicalParams& prm, const Bubble& b, const Vec& y) {
    double d2 = dist2(y, b.center, prm.N);
    double l2d2 = b.lambda * b.lambda * d2;
    double q = 1.0 + l2d2;
    double U = prm.C_N * std::pow(b.lambda, 0.5 * prm.gamma) * std::pow(q, -0.5 * prm.gamma);
    return U * 0.5 * prm.gamma / b.lambda * (1.0 - l2d2) / q;
}

double bubble_dcenter(const PhysicalParams& prm, const Bubble& b, const Vec& y, int axis) {
    double d2 = dist2(y, b.center, prm.N);
    double q = 1.0 + b.lambda * b.lambda * d2;
    double U = prm.C_N * std::pow(b.lambda, 0.5 * prm.gamma) * std::pow(q, -0.5 * prm.gamma);
    return prm.gamma * b.lambda * b.lambda * (y[axis] - b.center[axis]) * U / q;
}

double BubbleProfile::f(double rho) const {
    double q = 1.0 + lambda * lambda * rho * rho;
    return C * std::pow(lambda, 0.5 * gamma) * std::pow(q, -0.5 * gamma);
}

double BubbleProfile::df(double rho) const {
    double q = 1.0 + lambda * lambda * rho * rho;
    return -gamma * C * std::pow(lambda, 0.5 * gamma + 2.0) * rho * std::pow(q, -0.5 * gamma - 1.0);
}

double BubbleProfile::ddf(double rho) const {
    double l2r2 = lambda * lambda * rho * rho;
    double q = 1.0 + l2r2;
    return -gamma * C * std::pow(lambda, 0.5 * gamma + 2.0) * std::pow(q, -0.5 * gamma - 2.0) *
           (1.0 - (gamma + 1.0) * l2r2);
}

double BubbleProfile::tail_coeff() const { return C * std::pow(lambda, -0.5 * gamma); }

BubbleProfile bubble_profile(const PhysicalParams& prm, const Bubble& b) {
    BubbleProfile p;
    p.C = prm.C_N;
    p.lambda = b.lambda;
    p.gamma = prm.gamma;
    return p;
}

double CutoffEta::torus_distance(const Vec& y, int N) const {
    double r = radial_part(y);
    double d2 = (r - r0) * (r - r0);
    for (int i = 3; i < N; ++i) d2 += (y[i] - y0dd[i - 3]) * (y[i] - y0dd[i - 3]);
    return std::sqrt(d2);
}

double CutoffEta::value_rd(double d) const {
    if (!enabled) return 1.0;
    if (d <= sigma) return 1.0;
    if (d >= 2.0 * sigma) return 0.0;
    double t = (d - sigma) / sigma;
    double st = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    return 1.0 - st;
}

double CutoffEta::value(const Vec& y, int N) const {
    if (!enabled) return 1.0;
    return value_rd(torus_distance(y, N));
}

double ApproxSolution::sum_bubbles(const Vec& y) const {
    KahanSum s;
    for (const Bubble& b : bubbles) s.add(bubble_eval(prm, b, y));
    return s.value();
}

double ApproxSolution::eval(const Vec& y) const {
    double u = sum_bubbles(y);
    if (eta.enabled) u *= eta.value(y, prm.N);
    return u;
}

namespace {

double weight_sum(const ApproxSolution& Z, const Vec& y, double peak, double expo) {
    KahanSum s;
    for (const Bubble& b : Z.bubbles) {
        double d = dist(y, b.center, Z.prm.N);
        s.add(std::pow(b.lambda, peak) * std::pow(1.0 + b.lambda * d, -expo));
    }
    return s.value();
}

}  // namespace

double star_weight(const ApproxSolution& Z, const Vec& y) {
    return weight_sum(Z, y, 0.5 * Z.prm.gamma, 0.5 * Z.prm.gamma + Z.prm.tau);
}

double dstar_weight(const ApproxSolution& Z, const Vec& y) {
    // peak scale follows the equation's right-hand side U^(2s*-1) ~ lambda^((N+2s)/2)
    const double half_rhs = 0.5 * (Z.prm.N + 2.0 * Z.prm.s);
    return weight_sum(Z, y, half_rhs, half_rhs + Z.prm.tau);
}

namespace {

Vec unit_between(const Vec& a, const Vec& b, int N) {
    Vec d = zero_vec();
    for (int i = 0; i < N; ++i) d[i] = b[i] - a[i];
    double n = std::sqrt(dot(d, d, N));
    if (n > 0.0)
        for (int i = 0; i < N; ++i) d[i] /= n;
    return d;
}

Vec axis_unit(int axis) {
    Vec e = zero_vec();
    e[axis] = 1.0;
    return e;
}

}  // namespace

std::vector<Vec> norm_sample_points(const ApproxSolution& Z, int k, int n_far, uint64_t seed) {
    const int N = Z.prm.N;
    std::vector<Vec> pts;

    const Bubble& b1p = Z.bubbles.at(0);
    const double lam = b1p.lambda;
    const Vec& x1p = b1p.center;

    std::vector<Vec> dirs;
    if (k >= 2) dirs.push_back(unit_between(x1p, Z.bubbles.at(1).center, N));  // tangent
    if (static_cast<int>(Z.bubbles.size()) >= 2 * k && k >= 1)
        dirs.push_back(unit_between(x1p, Z.bubbles.at(k).center, N));  // toward other ring
    {
        Vec rad = zero_vec();  // inward radial
        double rp = radial_part(x1p);
        if (rp > 0.0)
            for (int i = 0; i < 3; ++i) rad[i] = -x1p[i] / rp;
        else
            rad[0] = 1.0;
        dirs.push_back(rad);
    }
    if (N > 3) dirs.push_back(axis_unit(3));  // transverse

    pts.push_back(x1p);
    const double shells[] = {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0};
    for (const Vec& dir : dirs)
        for (double t : shells) {
            Vec y = x1p;
            for (int i = 0; i < N; ++i) y[i] += (t / lam) * dir[i];
            pts.push_back(y);
        }

    // a few shells around a bottom-ring bubble as well
    if (static_cast<int>(Z.bubbles.size()) >= 2 * k && k >= 1) {
        const Vec& x1m = Z.bubbles.at(k).center;
        Vec dir = unit_between(x1m, x1p, N);
        for (double t : {0.5, 2.0, 8.0, 32.0}) {
            Vec y = x1m;
            for (int i = 0; i < N; ++i) y[i] += (t / lam) * dir[i];
            pts.push_back(y);
        }
    }

    // gap midpoints: nearest same-ring neighbor and cross-ring partner
    if (k >= 2) {
        Vec m = zero_vec();
        for (int i = 0; i < N; ++i) m[i] = 0.5 * (x1p[i] + Z.bubbles.at(1).center[i]);
        pts.push_back(m);
    }
    if (static_cast<int>(Z.bubbles.size()) >= 2 * k && k >= 1) {
        Vec m = zero_vec();
        for (int i = 0; i < N; ++i) m[i] = 0.5 * (x1p[i] + Z.bubbles.at(k).center[i]);
        pts.push_back(m);
    }

    // across the cutoff annulus, radially and transversally
    if (Z.eta.enabled) {
        double rp = radial_part(x1p);
        Vec om = zero_vec();
        if (rp > 0.0)
            for (int i = 0; i < 3; ++i) om[i] = x1p[i] / rp;
        else
            om[0] = 1.0;
        for (double c : {1.0, 1.5, 2.0, 2.5, 3.0})
            for (double sgn : {1.0, -1.0}) {
                double r = Z.eta.r0 + sgn * c * Z.eta.sigma;
                if (r <= 0.0) continue;
                Vec y = zero_vec();
                for (int i = 0; i < 3; ++i) y[i] = r * om[i];
                for (int i = 3; i < N; ++i) y[i] = Z.eta.y0dd[i - 3];
                pts.push_back(y);
            }
        if (N > 3)
            for (double c : {1.0, 2.0, 3.0}) {
                Vec y = zero_vec();
                for (int i = 0; i < 3; ++i) y[i] = Z.eta.r0 * om[i];
                for (int i = 3; i < N; ++i) y[i] = Z.eta.y0dd[i - 3];
                y[3] += c * Z.eta.sigma;
                pts.push_back(y);
            }
    }

    // seeded far field
    Rng rng(derive_seed(seed, 0xfafafa));
    double R = 2.0 * std::sqrt(dot(x1p, x1p, N)) + 2.0 + 4.0 * Z.eta.sigma;
    for (int i = 0; i < n_far; ++i) {
        Vec y = zero_vec();
        for (int j = 0; j < N; ++j) y[j] = rng.uniform(-R, R);
        pts.push_back(y);
    }
    return pts;
}

}  // namespace fracbubble
