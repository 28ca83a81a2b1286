#include "fracbubble/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fracbubble {

namespace {

// Lanczos g = 7, 9 terms (Godfrey coefficients).
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

double gamma_positive(double x) {
    // valid for x > 0.5
    const double z = x - 1.0;
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma_fn(double x) {
    if (x == std::floor(x) && x <= 0.0) throw std::domain_error("gamma_fn: pole at non-positive integer");
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return M_PI / (std::sin(M_PI * x) * gamma_positive(1.0 - x));
    }
    return gamma_positive(x);
}

double lgamma_fn(double x) {
    if (x <= 0.0) throw std::domain_error("lgamma_fn: needs x > 0");
    if (x < 0.5) return std::log(M_PI / std::sin(M_PI * x)) - lgamma_fn(1.0 - x);
    const double z = x - 1.0;
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double beta_fn(double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw std::domain_error("beta_fn: needs positive arguments");
    return std::exp(lgamma_fn(a) + lgamma_fn(b) - lgamma_fn(a + b));
}

double zeta_fn(double x) {
    if (x <= 1.0) throw std::domain_error("zeta_fn: needs x > 1");
    // direct sum to M, integral tail, Bernoulli corrections
    constexpr int M = 24;
    constexpr double B[6] = {1.0 / 6.0,  -1.0 / 30.0, 1.0 / 42.0,
                             -1.0 / 30.0, 5.0 / 66.0,  -691.0 / 2730.0};
    double s = 0.0;
    for (int n = 1; n < M; ++n) s += std::pow(n, -x);
    const double Mx = std::pow(M, -x);
    s += Mx * M / (x - 1.0) + 0.5 * Mx;
    // correction terms B_{2j}/(2j)! * (x)_{2j-1} * M^{-x-2j+1}
    double poch = x;          // rising factorial x(x+1)...(x+2j-2)
    double mpow = Mx / M;     // M^{-x-2j+1}, starting at M^{-x-1}
    double fact2j = 2.0;      // (2j)!
    for (int j = 1; j <= 6; ++j) {
        s += B[j - 1] / fact2j * poch * mpow;
        // prepare next j: multiply pochhammer by (x+2j-1)(x+2j)
        poch *= (x + 2.0 * j - 1.0) * (x + 2.0 * j);
        mpow /= static_cast<double>(M) * M;
        fact2j *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    return s;
}

double sphere_area(int n) {
    if (n < 1) throw std::domain_error("sphere_area: needs n >= 1");
    return 2.0 * std::pow(M_PI, 0.5 * n) / gamma_fn(0.5 * n);
}

const GaussRule& gauss_legendre(int order) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    if (order < 1) throw std::domain_error("gauss_legendre: needs order >= 1");

    GaussRule rule;
    rule.node.resize(order);
    rule.weight.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton from the Chebyshev-like initial guess
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.node[i] = -x;
        rule.node[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weight[i] = w;
        rule.weight[order - 1 - i] = w;
    }
    auto [pos, ok] = cache.emplace(order, std::move(rule));
    (void)ok;
    return pos->second;
}

double sin_cos_power_quad(double a, double b) {
    if (a <= -1.0 || b <= -1.0)
        throw std::domain_error("sin_cos_power_quad: needs a > -1 and b > -1");
    // Fractional endpoint powers cap Gauss-Legendre at algebraic convergence,
    // so use tanh-sinh, which absorbs integrable endpoint singularities
    // exponentially. Distances to both endpoints are tracked through
    // 1 -+ tanh(w) = 2 exp(-+2w)/(1 + exp(-+2w)) so sin^a(phi) near 0 and
    // cos^b(phi) = sin^b(pi/2 - phi) near pi/2 keep full relative precision.
    const double c0 = 0.25 * M_PI;  // half-width of [0, pi/2]
    const double h = 1.0 / 64.0;
    double s = 0.0;
    for (int j = -512; j <= 512; ++j) {
        const double w = 0.5 * M_PI * std::sinh(j * h);
        const double em2 = std::exp(-2.0 * std::fabs(w));
        if (em2 == 0.0) continue;
        const double one_minus_abs_u = 2.0 * em2 / (1.0 + em2);
        const double du = 0.5 * M_PI * std::cosh(j * h) * 4.0 * em2 / ((1.0 + em2) * (1.0 + em2));
        const double phi = j <= 0 ? c0 * one_minus_abs_u : c0 * (2.0 - one_minus_abs_u);
        const double to_end = j >= 0 ? c0 * one_minus_abs_u : c0 * (2.0 - one_minus_abs_u);
        s += du * std::pow(std::sin(phi), a) * std::pow(std::sin(to_end), b);
    }
    return c0 * h * s;
}

double half_line_decay_integral(double g) {
    if (g <= 1.0) throw std::domain_error("half_line_decay_integral: needs g > 1");
    // t = tan(phi) turns the integrand into cos^(g-2)(phi) on [0, pi/2]
    return sin_cos_power_quad(0.0, g - 2.0);
}

}  // namespace fracbubble
