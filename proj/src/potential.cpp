#include "fracbubble/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace fracbubble {

double Potential::value(double r, const double* ydd, int m) const {
    switch (family) {
        case Family::constant:
            return a;
        case Family::gaussian_bump: {
            double q = (r - r_c) * (r - r_c);
            for (int i = 0; i < m; ++i) q += (ydd[i] - y_c[i]) * (ydd[i] - y_c[i]);
            return a + b * std::exp(-q / w);
        }
        case Family::saddle: {
            double p = a + std::exp(-(r - r_c) * (r - r_c) / w);
            double qy = 0.0;
            for (int i = 0; i < m; ++i) qy += (ydd[i] - y_c[i]) * (ydd[i] - y_c[i]);
            return p * (sy - ay * std::exp(-qy / wy));
        }
    }
    return 0.0;
}

void Potential::gradient(double r, const double* ydd, int m, double& dr, double* dydd) const {
    switch (family) {
        case Family::constant:
            dr = 0.0;
            for (int i = 0; i < m; ++i) dydd[i] = 0.0;
            return;
        case Family::gaussian_bump: {
            double q = (r - r_c) * (r - r_c);
            for (int i = 0; i < m; ++i) q += (ydd[i] - y_c[i]) * (ydd[i] - y_c[i]);
            double e = b * std::exp(-q / w);
            dr = -2.0 * (r - r_c) / w * e;
            for (int i = 0; i < m; ++i) dydd[i] = -2.0 * (ydd[i] - y_c[i]) / w * e;
            return;
        }
        case Family::saddle: {
            double er = std::exp(-(r - r_c) * (r - r_c) / w);
            double p = a + er;
            double dp = -2.0 * (r - r_c) / w * er;
            double qy = 0.0;
            for (int i = 0; i < m; ++i) qy += (ydd[i] - y_c[i]) * (ydd[i] - y_c[i]);
            double ey = std::exp(-qy / wy);
            double q = sy - ay * ey;
            dr = dp * q;
            for (int i = 0; i < m; ++i) dydd[i] = p * 2.0 * ay * (ydd[i] - y_c[i]) / wy * ey;
            return;
        }
    }
}

double Potential::value_at(const Vec& y, int N) const {
    double r = radial_part(y);
    return value(r, y.data() + 3, N - 3);
}

Potential Potential::constant(double c) {
    Potential V;
    V.family = Family::constant;
    V.a = c;
    return V;
}

Potential Potential::gaussian_bump(double a, double b, double r_c, double w) {
    Potential V;
    V.family = Family::gaussian_bump;
    V.a = a;
    V.b = b;
    V.r_c = r_c;
    V.w = w;
    return V;
}

Potential Potential::saddle() {
    Potential V;
    V.family = Family::saddle;
    V.a = 0.2;
    V.r_c = 1.3;
    V.w = 1.0;
    V.sy = 1.5;
    V.ay = 1.0;
    V.wy = 1.0;
    return V;
}

std::string Potential::family_name(Family f) {
    switch (f) {
        case Family::constant: return "constant";
        case Family::gaussian_bump: return "gaussian_bump";
        case Family::saddle: return "saddle";
    }
    return "?";
}

Potential::Family Potential::family_from_name(const std::string& name) {
    if (name == "constant") return Family::constant;
    if (name == "gaussian_bump") return Family::gaussian_bump;
    if (name == "saddle") return Family::saddle;
    throw std::invalid_argument("unknown potential family: " + name);
}

double weighted_potential(const Potential& V, double s, double r, const double* ydd, int m) {
    return std::pow(r, 2.0 * s) * V.value(r, ydd, m);
}

void weighted_potential_gradient(const Potential& V, double s, double r, const double* ydd, int m,
                                 double& dr, double* dydd) {
    double rv = std::pow(r, 2.0 * s);
    double dvr;
    V.gradient(r, ydd, m, dvr, dydd);
    double v = V.value(r, ydd, m);
    dr = 2.0 * s * std::pow(r, 2.0 * s - 1.0) * v + rv * dvr;
    for (int i = 0; i < m; ++i) dydd[i] *= rv;
}

}  // namespace fracbubble
