#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracbubble {

// Points live in R^N with 5 <= N <= 8; slots beyond N stay zero.
constexpr int kMaxDim = 8;
using Vec = std::array<double, kMaxDim>;

inline Vec zero_vec() { return Vec{}; }

inline double dot(const Vec& a, const Vec& b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

inline double dist2(const Vec& a, const Vec& b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double dist(const Vec& a, const Vec& b, int n) { return std::sqrt(dist2(a, b, n)); }

inline double norm2(const Vec& a, int n) { return dot(a, a, n); }

// Cylindrical split y = (y', y'') with y' the first three coordinates.
inline double radial_part(const Vec& y) {
    return std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
}

// Compensated accumulator for long sums (ring sums run up to k = 1e6 terms).
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// Thrown when s falls outside the admissible window for the given dimension.
class AdmissibilityError : public std::domain_error {
  public:
    AdmissibilityError(int N, double s, double lo, double hi)
        : std::domain_error("s = " + std::to_string(s) + " outside admissible window (" +
                            std::to_string(lo) + ", " + std::to_string(hi) + ") for N = " +
                            std::to_string(N)),
          s_lo(lo),
          s_hi(hi) {}
    double s_lo;
    double s_hi;
};

// Thrown when (lambda, h) violates the scaling window for the given k.
class RegimeError : public std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown when quadrature refinement fails to settle; carries the last two estimates.
class AccuracyError : public std::runtime_error {
  public:
    AccuracyError(const std::string& what, double prev, double last)
        : std::runtime_error(what + " (successive estimates " + std::to_string(prev) + ", " +
                             std::to_string(last) + ")"),
          previous(prev),
          latest(last) {}
    double previous;
    double latest;
};

}  // namespace fracbubble
