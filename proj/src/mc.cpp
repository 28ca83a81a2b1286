#include "fracbubble/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "fracbubble/special.hpp"

namespace fracbubble {

namespace {
constexpr int kKnots = 2048;
}

RadialTable::RadialTable(int N, double beta) : N_(N), beta_(beta) {
    if (2.0 * beta <= N) throw std::invalid_argument("RadialTable: beta must exceed N/2");
    t_max_ = 1.0 - 1.0 / kKnots;
    r_max_ = t_max_ / (1.0 - t_max_);
    dt_ = t_max_ / (kKnots - 1);
    omega_ = sphere_area(N);

    auto m = [&](double t) {
        double r = t / (1.0 - t);
        return std::pow(r, N - 1.0) * std::pow(1.0 + r * r, -beta) / ((1.0 - t) * (1.0 - t));
    };

    F_.assign(kKnots, 0.0);
    d_.assign(kKnots, 0.0);
    for (int i = 0; i < kKnots; ++i) d_[i] = m(i * dt_);
    const GaussRule& g = gauss_legendre(8);
    KahanSum acc;
    for (int i = 0; i + 1 < kKnots; ++i) {
        double a = i * dt_, b = (i + 1) * dt_;
        for (size_t j = 0; j < g.node.size(); ++j)
            acc.add(0.5 * (b - a) * g.weight[j] * m(0.5 * (a + b) + 0.5 * (b - a) * g.node[j]));
        F_[i + 1] = acc.value();
    }
    // slope limiting keeps each Hermite segment monotone (alpha, beta <= 3)
    for (int i = 0; i < kKnots; ++i) {
        double lim = 3.0 * std::min(i > 0 ? (F_[i] - F_[i - 1]) / dt_ : 1e300,
                                    i + 1 < kKnots ? (F_[i + 1] - F_[i]) / dt_ : 1e300);
        if (d_[i] > lim) d_[i] = lim;
    }
    mass_table_ = F_[kKnots - 1];
    mass_tail_ = std::pow(r_max_, N - 2.0 * beta) / (2.0 * beta - N);
    total_ = mass_table_ + mass_tail_;
}

double RadialTable::cdf_unnormalized(int seg, double x) const {
    double h00 = x * x * (2.0 * x - 3.0) + 1.0;
    double h10 = x * (x * (x - 2.0) + 1.0);
    double h01 = x * x * (3.0 - 2.0 * x);
    double h11 = x * x * (x - 1.0);
    return F_[seg] * h00 + dt_ * d_[seg] * h10 + F_[seg + 1] * h01 + dt_ * d_[seg + 1] * h11;
}

double RadialTable::pdf_unnormalized_t(int seg, double x) const {
    double g00 = 6.0 * x * (x - 1.0);
    double g10 = x * (3.0 * x - 4.0) + 1.0;
    double g01 = -6.0 * x * (x - 1.0);
    double g11 = x * (3.0 * x - 2.0);
    return (F_[seg] * g00 + dt_ * d_[seg] * g10 + F_[seg + 1] * g01 + dt_ * d_[seg + 1] * g11) / dt_;
}

double RadialTable::sample_radius(double u) const {
    double target = u * total_;
    if (target >= mass_table_) {
        double up = (target - mass_table_) / mass_tail_;
        up = std::min(up, 1.0 - 1e-16);
        return r_max_ * std::pow(1.0 - up, 1.0 / (N_ - 2.0 * beta_));
    }
    int lo = 0, hi = kKnots - 1;
    while (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        if (F_[mid] <= target)
            lo = mid;
        else
            hi = mid;
    }
    // invert the Hermite segment: Newton with bisection safeguard
    double a = 0.0, b = 1.0, x = 0.5;
    for (int it = 0; it < 60; ++it) {
        double fx = cdf_unnormalized(lo, x) - target;
        if (fx > 0.0)
            b = x;
        else
            a = x;
        double dfx = pdf_unnormalized_t(lo, x) * dt_;
        double xn = (dfx > 0.0) ? x - fx / dfx : 0.5 * (a + b);
        if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
        if (std::abs(xn - x) < 1e-15) {
            x = xn;
            break;
        }
        x = xn;
    }
    double t = (lo + x) * dt_;
    double r = t / (1.0 - t);
    return std::max(r, 1e-12);
}

double RadialTable::density(double r) const {
    if (r <= 0.0) return 0.0;
    if (r > r_max_) return std::pow(r, -2.0 * beta_) / (total_ * omega_);
    double t = r / (1.0 + r);
    int seg = std::min(static_cast<int>(t / dt_), kKnots - 2);
    double x = t / dt_ - seg;
    double mt = pdf_unnormalized_t(seg, x) * (1.0 - t) * (1.0 - t);
    return mt / (total_ * omega_ * std::pow(r, N_ - 1.0));
}

const RadialTable& radial_table(int N, double beta) {
    static std::mutex mu;
    static std::map<std::pair<int, long long>, std::unique_ptr<RadialTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(N, static_cast<long long>(beta * 1e9));
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<RadialTable>(N, beta)).first;
    return *it->second;
}

MixtureProposal::MixtureProposal(int N, std::vector<MixtureComponent> comps)
    : N_(N), comps_(std::move(comps)) {
    if (comps_.empty()) throw std::invalid_argument("MixtureProposal: no components");
}

Vec MixtureProposal::sample(Rng& rng) const {
    size_t idx = 0;
    if (comps_.size() > 1)
        idx = std::min(comps_.size() - 1,
                       static_cast<size_t>(rng.uniform() * static_cast<double>(comps_.size())));
    const MixtureComponent& c = comps_[idx];
    double r = c.table->sample_radius(rng.uniform());
    Vec th = rng.sphere_direction(N_);
    Vec y = c.center;
    for (int i = 0; i < N_; ++i) y[i] += (r / c.lambda) * th[i];
    return y;
}

double MixtureProposal::density(const Vec& y) const {
    KahanSum s;
    for (const MixtureComponent& c : comps_) {
        double r = c.lambda * dist(y, c.center, N_);
        s.add(std::pow(c.lambda, static_cast<double>(N_)) * c.table->density(r));
    }
    return s.value() / static_cast<double>(comps_.size());
}

int mc_worker_count() {
    const char* env = std::getenv("FRACBUBBLE_WORKERS");
    if (!env) return 1;
    int w = std::atoi(env);
    return std::clamp(w, 1, 64);
}

McResult mc_shard_run(const std::function<double(Rng&)>& one_sample, const McSpec& spec) {
    const int S = std::max(1, spec.shards);
    const uint64_t per = std::max<uint64_t>(1, spec.n / static_cast<uint64_t>(S));
    std::vector<double> means(S, 0.0);

    auto run_shard = [&](int i) {
        Rng rng(derive_seed(spec.seed, static_cast<uint64_t>(i)));
        KahanSum acc;
        for (uint64_t j = 0; j < per; ++j) acc.add(one_sample(rng));
        means[i] = acc.value() / static_cast<double>(per);
    };

    const int W = std::min(mc_worker_count(), S);
    if (W <= 1) {
        for (int i = 0; i < S; ++i) run_shard(i);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < W; ++w)
            pool.emplace_back([&, w]() {
                for (int i = w; i < S; i += W) run_shard(i);
            });
        for (auto& t : pool) t.join();
    }

    KahanSum msum;
    for (int i = 0; i < S; ++i) msum.add(means[i]);
    double mean = msum.value() / S;
    double err = 0.0;
    if (S > 1) {
        KahanSum vsum;
        for (int i = 0; i < S; ++i) vsum.add((means[i] - mean) * (means[i] - mean));
        err = std::sqrt(vsum.value() / (static_cast<double>(S) * (S - 1.0)));
    }
    return McResult{mean, err, per * static_cast<uint64_t>(S)};
}

McResult mc_integrate(const std::function<double(const Vec&)>& f, const MixtureProposal& q,
                      const McSpec& spec) {
    return mc_shard_run(
        [&](Rng& rng) {
            Vec y = q.sample(rng);
            return f(y) / q.density(y);
        },
        spec);
}

namespace {

// unit bubble (center 0, lambda 1) helpers in local coordinates
double unit_bubble(const PhysicalParams& prm, const Vec& z) {
    return prm.C_N * std::pow(1.0 + dot(z, z, prm.N), -0.5 * prm.gamma);
}

double unit_bubble_partial(const PhysicalParams& prm, const Vec& z, int axis) {
    double q = 1.0 + dot(z, z, prm.N);
    return -prm.gamma * prm.C_N * z[axis] * std::pow(q, -0.5 * prm.gamma - 1.0);
}

Vec separation_local(const PhysicalParams& prm, const Bubble& a, const Bubble& b) {
    Vec w = zero_vec();
    for (int i = 0; i < prm.N; ++i) w[i] = a.lambda * (b.center[i] - a.center[i]);
    return w;
}

}  // namespace

McResult interaction_integral_mc(const PhysicalParams& prm, const Bubble& a, const Bubble& b,
                                 const McSpec& spec) {
    if (a.lambda != b.lambda)
        throw std::invalid_argument("interaction_integral_mc: equal lambdas expected");
    const Vec w = separation_local(prm, a, b);
    const double p1 = prm.two_s_star - 1.0;
    const RadialTable& tab_sharp = radial_table(prm.N, 0.5 * (prm.N + 2.0 * prm.s));
    const RadialTable& tab_wide = radial_table(prm.N, 0.5 * prm.N + 1.0);
    MixtureProposal q(prm.N, {MixtureComponent{zero_vec(), 1.0, &tab_sharp},
                              MixtureComponent{w, 1.0, &tab_wide}});
    auto f = [&](const Vec& z) {
        Vec zw = z;
        for (int i = 0; i < prm.N; ++i) zw[i] -= w[i];
        return std::pow(unit_bubble(prm, z), p1) * unit_bubble(prm, zw);
    };
    return mc_integrate(f, q, spec);
}

double interaction_pair_asymptotic(const PhysicalParams& prm, const InteractionConstants& ic,
                                   const Bubble& a, const Bubble& b) {
    double d = dist(a.center, b.center, prm.N);
    return ic.A5 * std::pow(a.lambda * d, -prm.gamma);
}

McResult interaction_gradient_mc(const PhysicalParams& prm, const Bubble& a, const Bubble& b,
                                 int axis, const McSpec& spec) {
    if (a.lambda != b.lambda)
        throw std::invalid_argument("interaction_gradient_mc: equal lambdas expected");
    const Vec w = separation_local(prm, a, b);
    const double p2 = prm.two_s_star - 2.0;
    const RadialTable& tab_sharp = radial_table(prm.N, 0.5 * (prm.N + 2.0 * prm.s));
    const RadialTable& tab_wide = radial_table(prm.N, 0.5 * prm.N + 1.0);
    MixtureProposal q(prm.N, {MixtureComponent{zero_vec(), 1.0, &tab_sharp},
                              MixtureComponent{w, 1.0, &tab_wide}});
    const double lam = a.lambda;
    auto f = [&](const Vec& z) {
        Vec zw = z;
        for (int i = 0; i < prm.N; ++i) zw[i] -= w[i];
        // d/dcenter = -d/dargument brings the extra minus and one lambda power
        return -lam * std::pow(unit_bubble(prm, z), p2) * unit_bubble(prm, zw) *
               unit_bubble_partial(prm, z, axis);
    };
    return mc_integrate(f, q, spec);
}

double interaction_gradient_asymptotic(const PhysicalParams& prm, const InteractionConstants& ic,
                                       const Bubble& a, const Bubble& b, int axis) {
    double d = dist(a.center, b.center, prm.N);
    return ic.A6 * (b.center[axis] - a.center[axis]) /
           (std::pow(a.lambda, prm.gamma) * std::pow(d, prm.gamma + 2.0));
}

McResult potential_mass_mc(const PhysicalParams& prm, const Potential& V, const Bubble& a,
                           const McSpec& spec) {
    const RadialTable& tab = radial_table(prm.N, prm.gamma);
    MixtureProposal q(prm.N, {MixtureComponent{zero_vec(), 1.0, &tab}});
    const double lam = a.lambda;
    auto f = [&](const Vec& z) {
        Vec y = a.center;
        for (int i = 0; i < prm.N; ++i) y[i] += z[i] / lam;
        double u = unit_bubble(prm, z);
        return V.value_at(y, prm.N) * u * u;
    };
    McResult res = mc_integrate(f, q, spec);
    double scale = std::pow(lam, -2.0 * prm.s);
    res.value *= scale;
    res.err *= scale;
    return res;
}

namespace {

MixtureProposal field_proposal(const ApproxSolution& Z, double beta) {
    const RadialTable& tab = radial_table(Z.prm.N, beta);
    std::vector<MixtureComponent> comps;
    comps.reserve(Z.bubbles.size());
    for (const Bubble& b : Z.bubbles) comps.push_back(MixtureComponent{b.center, b.lambda, &tab});
    return MixtureProposal(Z.prm.N, std::move(comps));
}

}  // namespace

McResult field_crit_power_mc(const ApproxSolution& Z, const McSpec& spec) {
    MixtureProposal q = field_proposal(Z, static_cast<double>(Z.prm.N));
    auto f = [&](const Vec& y) { return std::pow(Z.eval(y), Z.prm.two_s_star); };
    return mc_integrate(f, q, spec);
}

McResult field_potential_mass_mc(const ApproxSolution& Z, const Potential& V, const McSpec& spec) {
    MixtureProposal q = field_proposal(Z, Z.prm.gamma);
    auto f = [&](const Vec& y) {
        double u = Z.eval(y);
        return V.value_at(y, Z.prm.N) * u * u;
    };
    return mc_integrate(f, q, spec);
}

}  // namespace fracbubble
