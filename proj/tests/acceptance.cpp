// End-to-end acceptance run: eight quantitative criteria covering the bubble
// identity, lattice and interaction asymptotics, the energy expansion and its
// gradients, the reduced system, residual decay, Pohozaev concentration, and
// byte-level determinism of the CLI. One PASS/FAIL line per criterion; the
// process exits nonzero if any criterion fails. Tolerances are pinned here.
//
// Usage: acceptance [path-to-cli]   (the CLI path enables criterion 8's
// subprocess checks; without it that criterion runs in-process only)

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "fracbubble/energy.hpp"
#include "fracbubble/frac_laplacian.hpp"
#include "fracbubble/lattice.hpp"
#include "fracbubble/pohozaev.hpp"
#include "fracbubble/report.hpp"

using namespace fracbubble;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const char* what, const std::string& detail) {
  std::printf("ACCEPTANCE %d %s  %s: %s\n", idx, pass ? "PASS" : "FAIL", what, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

const std::pair<int, double> kPairs[] = {{6, 0.9}, {5, 0.8}};

// ---------------------------------------------------------------- criterion 1
// The bubble solves its equation: (-Lap)^s U = U^(2s*-1) pointwise, checked by
// the deterministic radial quadrature at 10 points per parameter pair.
void criterion_bubble_identity() {
  const double tol = 1e-3;
  double worst = 0.0;
  bool ok = true;
  for (auto [N, s] : kPairs) {
    const PhysicalParams p = make_params(N, s);
    Bubble b;
    b.lambda = 1.0;
    std::vector<Vec> pts;
    const double dirs[10][3] = {{0, 0, 0},      {0.5, 0, 0},   {1, 0, 0},    {0, 1.5, 0},
                                {1, 1, 1},      {2, 0, 0},     {0, 0, 2.5},  {1.7, -1.7, 0},
                                {0.3, 0.4, -1}, {3, 0, 0}};
    for (const auto& d : dirs) {
      Vec y = zero_vec();
      y[0] = d[0];
      y[1] = d[1];
      y[2] = d[2];
      pts.push_back(y);
    }
    const double err = bubble_pde_max_rel_error(p, b, pts, PvQuadratureSpec{});
    if (err > worst) worst = err;
    if (!(err < tol)) ok = false;
  }
  report(1, ok, "bubble identity",
         fmt("max rel residual %.3e over 10 points x 2 pairs (tol %.0e)", worst, tol));
}

// ---------------------------------------------------------------- criterion 2
// Lattice sums against their leading closed forms: same-side within 2% at
// k = 200 with >= 3x shrink from k = 256 to 512; cross-side within 5% at
// k h >= 20.
void criterion_lattice() {
  bool ok = true;
  std::string detail;
  for (auto [N, s] : kPairs) {
    const PhysicalParams p = make_params(N, s);
    const InteractionConstants ic = compute_interaction_constants(p);

    CylinderConfig c200;
    c200.k = 200;
    c200.h = 0.1;
    c200.r = 1.0;
    const double e_same = ring_sum_report(p, ic, c200, RingSum::same_pow_gamma).rel_err;
    if (!(e_same < 0.02)) ok = false;

    CylinderConfig c256 = c200, c512 = c200;
    c256.k = 256;
    c512.k = 512;
    const double shrink = ring_sum_report(p, ic, c256, RingSum::same_pow_gamma).rel_err /
                          ring_sum_report(p, ic, c512, RingSum::same_pow_gamma).rel_err;
    if (!(shrink >= 3.0)) ok = false;

    CylinderConfig ccross;
    ccross.k = 400;
    ccross.h = 0.05;  // k h = 20
    ccross.r = 1.0;
    const double e_cross = ring_sum_report(p, ic, ccross, RingSum::cross_pow_gamma).rel_err;
    if (!(e_cross < 0.05)) ok = false;

    if (!detail.empty()) detail += "; ";
    detail += fmt("N=%d: same %.2e (tol 2e-2), shrink %.2fx (>=3), cross %.2e (tol 5e-2)", N,
                  e_same, shrink, e_cross);
  }
  report(2, ok, "lattice asymptotics", detail);
}

// ---------------------------------------------------------------- criterion 3
// Pair interaction integrals at lambda d = 50 against the A5/A6 closed forms,
// >= 1e6 Monte Carlo samples.
void criterion_interactions() {
  bool ok = true;
  std::string detail;
  McSpec spec;
  spec.n = 1ull << 20;  // 1,048,576 samples
  spec.seed = 314;
  for (auto [N, s] : kPairs) {
    const PhysicalParams p = make_params(N, s);
    const InteractionConstants ic = compute_interaction_constants(p);
    Bubble a, b;
    a.lambda = b.lambda = 10.0;
    b.center[0] = 5.0;  // lambda d = 50

    const McResult G = interaction_integral_mc(p, a, b, spec);
    const double Gt = interaction_pair_asymptotic(p, ic, a, b);
    const bool okG = std::fabs(G.value - Gt) < 0.05 * std::fabs(Gt) + 3.0 * G.err;

    const McResult H = interaction_gradient_mc(p, a, b, 0, spec);
    const double Ht = interaction_gradient_asymptotic(p, ic, a, b, 0);
    const bool okH = std::fabs(H.value - Ht) < 0.07 * std::fabs(Ht) + 3.0 * H.err;

    if (!(okG && okH)) ok = false;
    if (!detail.empty()) detail += "; ";
    detail += fmt("N=%d: pair rel %.2e (tol 5e-2), grad rel %.2e (tol 7e-2), n=%llu", N,
                  rel(G.value, Gt), rel(H.value, Ht), (unsigned long long)G.n);
  }
  report(3, ok, "interaction asymptotics", detail);
}

// ---------------------------------------------------------------- criterion 4
// Energy expansion at k = 8 in regime scaling: the direct-oracle interaction
// part (pair integrals by MC, summed over the lattice) against the expansion's
// interaction terms assembled from the exact ring sums; gradient formulas
// against finite differences of the expansion.
void criterion_energy() {
  bool ok = true;
  std::string detail;
  for (auto [N, s] : kPairs) {
    const PhysicalParams p = make_params(N, s);
    const InteractionConstants ic = compute_interaction_constants(p);
    const Potential V = Potential::gaussian_bump(0.0, 1.0, 1.0, 1.0);

    CylinderConfig cfg;
    cfg.k = 8;
    cfg.lambda = std::pow(8.0, p.lambda_exp);  // multiplier 1: inside the window
    cfg.h = std::pow(8.0, -p.h_exp);
    cfg.r = find_critical_point(p, V, 1.3, {0, 0, 0}).r;

    // net interaction energy = -k sum over partners of bubble 1 of the pair
    // integral; MC route vs exact-ring-sum route (both per unit A5 scaling)
    McSpec spec;
    spec.n = 1ull << 18;
    spec.seed = 99;
    double inter_mc = 0.0, var_mc = 0.0;
    const auto pts = generate_points(p, cfg);
    uint64_t seed_i = 0;
    for (std::size_t j = 1; j < pts.size(); ++j) {
      Bubble a, b;
      a.lambda = b.lambda = cfg.lambda;
      a.center = pts[0];
      b.center = pts[j];
      McSpec sj = spec;
      sj.seed = derive_seed(spec.seed, ++seed_i);
      const McResult g = interaction_integral_mc(p, a, b, sj);
      inter_mc += g.value;
      var_mc += g.err * g.err;
    }
    inter_mc *= -double(cfg.k);
    const double err_mc = double(cfg.k) * std::sqrt(var_mc);

    const double sums = ring_sum_exact(p, cfg, RingSum::same_pow_gamma) +
                        ring_sum_exact(p, cfg, RingSum::cross_pow_gamma);
    const double inter_lattice = -double(cfg.k) * ic.A5 * sums / std::pow(cfg.lambda, p.gamma);

    const bool ok_inter =
        std::fabs(inter_mc - inter_lattice) < 0.05 * std::fabs(inter_lattice) + 3.0 * err_mc;

    // gradient formulas vs central differences of the expansion's varying
    // terms (the k B0 constant cancels exactly in the derivative)
    auto varying = [&](const CylinderConfig& c) {
      const ReducedEnergy e = reduced_energy(p, ic, V, c);
      return e.potential + e.same_ring + e.cross_ring;
    };
    auto rings = [&](const CylinderConfig& c) {
      const ReducedEnergy e = reduced_energy(p, ic, V, c);
      return e.same_ring + e.cross_ring;
    };
    double fd_rel_l, fd_rel_h;
    {
      const double dl = 1e-5 * cfg.lambda;
      CylinderConfig cp = cfg, cm = cfg;
      cp.lambda += dl;
      cm.lambda -= dl;
      const double fd = (varying(cp) - varying(cm)) / (2.0 * dl);
      fd_rel_l = rel(reduced_grad_lambda(p, ic, V, cfg), fd);
    }
    {
      const double dh = 1e-5;
      CylinderConfig cp = cfg, cm = cfg;
      cp.h += dh;
      cm.h -= dh;
      const double fd = (rings(cp) - rings(cm)) / (2.0 * dh);
      fd_rel_h = rel(reduced_grad_h(p, ic, V, cfg), fd);
    }
    const bool ok_grad = fd_rel_l < 1e-8 && fd_rel_h < 1e-8;

    if (!(ok_inter && ok_grad)) ok = false;
    if (!detail.empty()) detail += "; ";
    detail += fmt("N=%d: interaction rel %.2e+/-%.1e (tol 5e-2+3sig), grad_l fd %.1e, grad_h fd %.1e (tol 1e-8)",
                  N, rel(inter_mc, inter_lattice), err_mc / std::fabs(inter_lattice), fd_rel_l,
                  fd_rel_h);
  }
  report(4, ok, "energy expansion", detail);
}

// ---------------------------------------------------------------- criterion 5
// Reduced system: closed form vs Newton to 1e-10; scaling-law slopes of the
// solved configurations exact to 1e-10; bump critical radius against its
// quadratic-root closed form to 1e-8 of the Newton result.
void criterion_reduced_system() {
  bool ok = true;
  std::string detail;
  for (auto [N, s] : kPairs) {
    const PhysicalParams p = make_params(N, s);
    const InteractionConstants ic = compute_interaction_constants(p);
    const Potential V = Potential::gaussian_bump(0.0, 1.0, 1.0, 1.0);

    const CriticalPoint cp = find_critical_point(p, V, 1.4, {0.05, 0, 0});
    const double rstar_closed = (1.0 + std::sqrt(1.0 + 4.0 * s)) / 2.0;
    const bool ok_rstar = cp.converged && rel(cp.r, rstar_closed) < 1e-8;

    const ReducedRoots closed = solve_reduced_system(p, ic, cp.r, cp.V);
    double worst_t = 0.0;
    for (auto st : {std::pair{0.5, 0.05}, std::pair{1.5, 0.5}}) {
      const ReducedRoots nr = solve_reduced_system_newton(p, ic, cp.r, cp.V, st.first, st.second);
      worst_t = std::max(worst_t, rel(nr.t1, closed.t1));
      worst_t = std::max(worst_t, rel(nr.t2, closed.t2));
    }
    const bool ok_newton = worst_t < 1e-10;

    // slope exactness of the solved scaling laws lambda(k), h(k)
    std::vector<double> ks, ls, hs;
    for (int k : {8, 16, 32, 64, 128}) {
      const CylinderConfig cfg = config_from_roots(p, closed, k, cp.r, cp.ydd);
      ks.push_back(k);
      ls.push_back(cfg.lambda);
      hs.push_back(cfg.h);
    }
    const double sl = fit_loglog_slope(ks, ls);
    const double sh = fit_loglog_slope(ks, hs);
    const bool ok_slope =
        std::fabs(sl - p.lambda_exp) < 1e-10 && std::fabs(sh + p.h_exp) < 1e-10;

    if (!(ok_rstar && ok_newton && ok_slope)) ok = false;
    if (!detail.empty()) detail += "; ";
    detail += fmt("N=%d: rstar rel %.1e (tol 1e-8), newton %.1e (tol 1e-10), slopes %.1e/%.1e (tol 1e-10)",
                  N, rel(cp.r, rstar_closed), worst_t, std::fabs(sl - p.lambda_exp),
                  std::fabs(sh + p.h_exp));
  }
  report(5, ok, "reduced system", detail);
}

// ---------------------------------------------------------------- criterion 6
// Residual decay: the weighted sup of the local residual over the solved
// configurations falls with lambda at least like lambda^(-(2s+1)/2 + 0.1).
void criterion_residual_decay() {
  const PhysicalParams p = make_params(6, 0.9, 0.05, 2.0, 0.5, 2.0);
  const InteractionConstants ic = compute_interaction_constants(p);
  const Potential V = Potential::gaussian_bump(0.0, 1.0, 1.0, 1.0);
  const CriticalPoint cp = find_critical_point(p, V, 1.4, {0, 0, 0});

  McSpec spec;
  spec.n = 1ull << 14;
  spec.shards = 32;
  spec.seed = 12;

  const std::vector<int> ks = {8, 16, 32, 64};
  const auto rows = residual_norm_trend(p, ic, V, ks, cp.r, cp.ydd, 1.0, spec);

  std::vector<double> lambdas, sups;
  std::string per_k;
  for (const auto& r : rows) {
    lambdas.push_back(r.lambda);
    sups.push_back(r.sup_weighted);
    per_k += fmt(" k=%d:%.3e", r.k, r.sup_weighted);
  }
  const double slope = fit_loglog_slope(lambdas, sups);
  const double bound = -(2.0 * p.s + 1.0) / 2.0 + 0.1;  // -1.3 at s = 0.9
  const bool ok = slope <= bound;
  report(6, ok, "residual decay",
         fmt("slope %.3f vs bound %.3f;%s", slope, bound, per_k.c_str()));
}

// ---------------------------------------------------------------- criterion 7
// Pohozaev concentration at lambda = 1e3, k = 8: mass concentration with
// g == 1 within 10%, and normalized volume integrals at the critical point
// at most 10% of their off-critical values (displacement 0.2).
void criterion_pohozaev() {
  const PhysicalParams p = make_params(6, 0.9, 0.01, 50.0, 0.25, 2.0);
  const InteractionConstants ic = compute_interaction_constants(p);
  const Potential V = Potential::gaussian_bump(0.0, 1.0, 1.0, 1.0);
  const CriticalPoint cp = find_critical_point(p, V, 1.4, {0, 0, 0});
  const ReducedRoots roots = solve_reduced_system(p, ic, cp.r, cp.V);

  CylinderConfig cfg = config_from_roots(p, roots, 8, cp.r, cp.ydd);
  cfg.lambda = 1e3;  // deep concentration; multiplier ~26 inside the widened window
  check_regime(p, cfg.k, cfg.lambda, cfg.h);

  McSpec spec;
  spec.n = 1ull << 19;
  spec.seed = 2027;

  const ApproxSolution Z = make_approx_solution(p, cfg, true);
  TorusBall B;
  B.r0 = cfg.r;
  B.y0dd = cfg.ydd;
  B.rho = 3.5 * Z.eta.sigma;

  // g == 1: mass of Z^2 in the trace ball vs 2k lambda^(-2s) B1
  const McResult mass =
      concentration_integral_mc(Z, [](const Vec&) { return 1.0; }, B, spec);
  const double mass_want = 2.0 * cfg.k * std::pow(cfg.lambda, -2.0 * p.s) * ic.B1;
  const double mass_rel = rel(mass.value, mass_want);
  const bool ok_mass = mass_rel < 0.10;

  // normalized scaling-mode volume integral: critical vs displaced in r
  auto normalized = [&](const CylinderConfig& c, PohozaevMode mode, int axis) {
    const ApproxSolution Zc = make_approx_solution(p, c, true);
    TorusBall Bc;
    Bc.r0 = c.r;
    Bc.y0dd = c.ydd;
    Bc.rho = 3.5 * Zc.eta.sigma;
    const McResult m = pohozaev_volume_mc(Zc, V, Bc, mode, axis, spec);
    return std::pow(c.lambda, 2.0 * p.s) * m.value / c.k;
  };
  const double at_crit = normalized(cfg, PohozaevMode::scaling, 0);
  CylinderConfig disp = cfg;
  disp.r = cfg.r + 0.2;
  const double at_disp = normalized(disp, PohozaevMode::scaling, 0);
  const bool ok_scaling = std::fabs(at_crit) <= 0.10 * std::fabs(at_disp);

  // axis mode: displaced 0.2 along a y'' coordinate (the bump is y''-even, so
  // the axis integrand vanishes identically on the axis; displacement makes
  // the comparison meaningful)
  CylinderConfig dispy = cfg;
  dispy.ydd[0] = 0.2;
  const double axis_crit = normalized(cfg, PohozaevMode::axis, 0);
  const double axis_disp = normalized(dispy, PohozaevMode::axis, 0);
  const bool ok_axis = std::fabs(axis_crit) <= 0.10 * std::fabs(axis_disp);

  const bool ok = ok_mass && ok_scaling && ok_axis;
  report(7, ok, "pohozaev concentration",
         fmt("mass rel %.2e (tol 1e-1); scaling crit/disp %.2e/%.2e; axis crit/disp %.2e/%.2e (ratio tol 1e-1)",
             mass_rel, at_crit, at_disp, axis_crit, axis_disp));
}

// ---------------------------------------------------------------- criterion 8
// Determinism: identical seeds give byte-identical results in-process and, if
// the CLI path was supplied, byte-identical CSV outputs from the `all`
// command, independent of worker count.
std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool dirs_identical(const std::filesystem::path& a, const std::filesystem::path& b,
                    std::string& why) {
  namespace fs = std::filesystem;
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(a))
    if (e.is_regular_file()) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  if (names.empty()) {
    why = "no files in " + a.string();
    return false;
  }
  for (const auto& n : names) {
    if (!fs::exists(b / n)) {
      why = "missing " + n;
      return false;
    }
    if (slurp(a / n) != slurp(b / n)) {
      why = "differs: " + n;
      return false;
    }
  }
  return true;
}

void criterion_determinism(const char* cli_path) {
  bool ok = true;
  std::string detail;

  // in-process: every stochastic routine repeated bitwise
  {
    const PhysicalParams p = make_params(6, 0.9);
    Bubble a, b;
    a.lambda = b.lambda = 4.0;
    b.center[0] = 2.0;
    McSpec spec;
    spec.n = 1ull << 16;
    spec.seed = 5150;

    const McResult r1 = interaction_integral_mc(p, a, b, spec);
    setenv("FRACBUBBLE_WORKERS", "8", 1);
    const McResult r8 = interaction_integral_mc(p, a, b, spec);
    unsetenv("FRACBUBBLE_WORKERS");
    const bool same = r1.value == r8.value && r1.err == r8.err;
    if (!same) ok = false;
    detail += fmt("in-process workers 1 vs 8 %s", same ? "bitwise equal" : "DIFFER");
  }

  if (cli_path != nullptr) {
    namespace fs = std::filesystem;
    const fs::path base = "acceptance_cli_determinism";
    fs::remove_all(base);
    fs::create_directories(base);

    const std::string cfg_path = (base / "config.json").string();
    {
      RunConfig rc;
      rc.k = 4;
      rc.k_list = {4, 8};
      rc.mc_n = 1ull << 14;
      rc.mc_shards = 16;
      rc.residual_point_n = 1ull << 10;
      rc.seed = 424242;
      std::ofstream out(cfg_path, std::ios::binary);
      out << run_config_json(rc);
    }
    auto run = [&](const std::string& out_dir, int workers) {
      std::string cmd = "FRACBUBBLE_WORKERS=" + std::to_string(workers) + " \"" +
                        std::string(cli_path) + "\" all --config " + cfg_path + " --out " +
                        out_dir + " > " + out_dir + "_log.txt 2>&1";
      const int st = std::system(cmd.c_str());
      return (st >= 0 && WIFEXITED(st)) ? WEXITSTATUS(st) : -1;
    };
    const int rc1 = run((base / "run1").string(), 1);
    const int rc2 = run((base / "run2").string(), 1);
    const int rc8 = run((base / "run8").string(), 8);

    std::string why;
    // exit 1 means a numeric gate missed at this reduced sample budget; the
    // artifact set is still complete, and determinism demands identical codes
    bool cli_ok = rc1 >= 0 && rc1 <= 1 && rc2 == rc1 && rc8 == rc1;
    if (!cli_ok) {
      why = fmt("cli exit codes %d/%d/%d", rc1, rc2, rc8);
    } else {
      cli_ok = dirs_identical(base / "run1", base / "run2", why) &&
               dirs_identical(base / "run1", base / "run8", why);
    }
    if (!cli_ok) ok = false;
    detail += cli_ok ? "; cli `all` x2 and workers 1 vs 8 byte-identical"
                     : ("; cli determinism FAILED (" + why + ")");
  } else {
    detail += "; cli path not supplied, subprocess check skipped";
  }

  report(8, ok, "determinism", detail);
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli = argc > 1 ? argv[1] : nullptr;
  criterion_bubble_identity();
  criterion_lattice();
  criterion_interactions();
  criterion_energy();
  criterion_reduced_system();
  criterion_residual_decay();
  criterion_pohozaev();
  criterion_determinism(cli);
  if (g_failures > 0) {
    std::printf("ACCEPTANCE SUMMARY: %d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("ACCEPTANCE SUMMARY: all 8 criteria passed\n");
  return 0;
}
