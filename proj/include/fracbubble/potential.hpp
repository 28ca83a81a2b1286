#pragma once

#include <array>
#include <string>

#include "fracbubble/common.hpp"

namespace fracbubble {

// Cylindrical potential V = V(r, y'') with r = |y'|, y'' in R^(N-3).
// Three built-in families:
//   constant       V = a
//   gaussian_bump  V = a + b exp(-((r-r_c)^2 + |y''-y_c|^2)/w)
//   saddle         V = (a + exp(-(r-r_c)^2/w)) * (sy - ay exp(-|y''-y_c|^2/wy))
// The saddle family gives r^(2s)V a radial maximum crossed with a y''-minimum
// for suitable parameters (defaults below do, for s in the windows used here).
struct Potential {
    enum class Family { constant, gaussian_bump, saddle };

    Family family = Family::gaussian_bump;
    double a = 0.0;
    double b = 1.0;
    double r_c = 1.0;
    double w = 1.0;
    double sy = 1.5;
    double ay = 1.0;
    double wy = 1.0;
    std::array<double, kMaxDim - 3> y_c{};

    double value(double r, const double* ydd, int m) const;
    // gradient: dr receives dV/dr, dydd[0..m) receives dV/dy''_i
    void gradient(double r, const double* ydd, int m, double& dr, double* dydd) const;

    // helpers on full points y in R^N
    double value_at(const Vec& y, int N) const;

    static Potential constant(double c);
    static Potential gaussian_bump(double a, double b, double r_c, double w);
    static Potential saddle();

    static std::string family_name(Family f);
    static Family family_from_name(const std::string& name);
};

// g(r,y'') = r^(2s) V and its gradient; the location system solved by the
// critical-point finder.
double weighted_potential(const Potential& V, double s, double r, const double* ydd, int m);
void weighted_potential_gradient(const Potential& V, double s, double r, const double* ydd, int m,
                                 double& dr, double* dydd);

}  // namespace fracbubble
