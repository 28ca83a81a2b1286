#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fracbubble/bubble.hpp"
#include "fracbubble/constants.hpp"
#include "fracbubble/params.hpp"
#include "fracbubble/potential.hpp"
#include "fracbubble/rng.hpp"

namespace fracbubble {

struct McSpec {
    uint64_t n = 1ull << 20;  // total samples (rounded down to a multiple of shards)
    int shards = 64;
    uint64_t seed = 1;
};

struct McResult {
    double value = 0.0;
    double err = 0.0;  // standard error of the mean, from shard spread
    uint64_t n = 0;
};

// Importance-sampling radius proposal with density proportional to
// r^(N-1) (1 + r^2)^(-beta), tabulated on the compactified axis t = r/(1+r)
// as a monotone cubic CDF (2048 knots, exact knot derivatives, slope-limited),
// with an exact power-law tail branch beyond r = 2047. Sampling inverts the
// interpolant; density() returns the derivative of the same interpolant, so
// the sampled law and the reported density agree to machine precision and the
// estimator stays unbiased regardless of interpolation error.
class RadialTable {
public:
    RadialTable(int N, double beta);

    double sample_radius(double u) const;  // u in [0,1)
    double density(double r) const;        // N-dimensional pdf value at radius r
    int dim() const { return N_; }

private:
    double cdf_unnormalized(int seg, double x) const;
    double pdf_unnormalized_t(int seg, double x) const;

    int N_;
    double beta_;
    double t_max_, r_max_, dt_;
    std::vector<double> F_;  // cumulative mass at knots
    std::vector<double> d_;  // knot derivatives dF/dt (slope-limited)
    double mass_table_ = 0.0, mass_tail_ = 0.0, total_ = 0.0;
    double omega_;
};

// cached table lookup (tables are immutable once built)
const RadialTable& radial_table(int N, double beta);

struct MixtureComponent {
    Vec center = zero_vec();
    double lambda = 1.0;
    const RadialTable* table = nullptr;
};

// Equal-weight mixture of bubble-local radial proposals.
class MixtureProposal {
public:
    MixtureProposal(int N, std::vector<MixtureComponent> comps);
    Vec sample(Rng& rng) const;
    double density(const Vec& y) const;
    int dim() const { return N_; }

private:
    int N_;
    std::vector<MixtureComponent> comps_;
};

// Shard-deterministic Monte Carlo driver: per-shard RNG stream derived from
// (seed, shard index), shard means combined in fixed order, so the result is
// byte-identical for any worker count (FRACBUBBLE_WORKERS). one_sample draws
// whatever it needs from the shard RNG and returns one estimator value.
McResult mc_shard_run(const std::function<double(Rng&)>& one_sample, const McSpec& spec);

// importance-sampling integral of f over R^N with the given proposal
McResult mc_integrate(const std::function<double(const Vec&)>& f, const MixtureProposal& q,
                      const McSpec& spec);

int mc_worker_count();

// integral of U_a^(2s*-1) U_b; lambda-free function of lambda |x_a - x_b|
McResult interaction_integral_mc(const PhysicalParams& prm, const Bubble& a, const Bubble& b,
                                 const McSpec& spec);
// leading-order target A5 / (lambda d)^(N-2s)
double interaction_pair_asymptotic(const PhysicalParams& prm, const InteractionConstants& ic,
                                   const Bubble& a, const Bubble& b);

// integral of U_a^(2s*-2) U_b dU_a/dcenter_axis
McResult interaction_gradient_mc(const PhysicalParams& prm, const Bubble& a, const Bubble& b,
                                 int axis, const McSpec& spec);
// leading-order target A6 (x_b - x_a)_axis / (lambda^(N-2s) d^(N-2s+2))
double interaction_gradient_asymptotic(const PhysicalParams& prm, const InteractionConstants& ic,
                                       const Bubble& a, const Bubble& b, int axis);

// integral of V U_a^2
McResult potential_mass_mc(const PhysicalParams& prm, const Potential& V, const Bubble& a,
                           const McSpec& spec);

// integral of (eta sum U)^(2s*) over R^N
McResult field_crit_power_mc(const ApproxSolution& Z, const McSpec& spec);
// integral of V (eta sum U)^2
McResult field_potential_mass_mc(const ApproxSolution& Z, const Potential& V, const McSpec& spec);

}  // namespace fracbubble
