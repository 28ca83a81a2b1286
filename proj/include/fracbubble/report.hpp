#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracbubble/params.hpp"

namespace fracbubble {

// Run configuration, JSON round-trippable. Unknown keys in a config file are
// rejected so typos fail loudly instead of silently using defaults.
struct RunConfig {
    int N = 6;
    double s = 0.9;
    double L0 = 0.5, L1 = 2.0, M0 = 0.5, M1 = 2.0;
    uint64_t seed = 1;

    std::string potential = "gaussian_bump";
    double pot_a = 0.0, pot_b = 1.0, pot_rc = 1.0, pot_w = 1.0;

    int k = 8;
    double lambda_multiplier = 1.0;
    double sigma_factor = 0.09;   // cutoff width relative to the ring radius
    double rho_factor = 3.5;      // trace-ball radius in units of the cutoff width
    std::vector<int> k_list = {8, 16, 32, 64};
    std::vector<std::string> suites;  // subset of the suite names; empty = all

    uint64_t mc_n = 1ull << 18;
    int mc_shards = 64;
    uint64_t residual_point_n = 1ull << 14;

    std::string out_dir = "out";
};

RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config_json(const std::string& text);
std::string run_config_json(const RunConfig& rc);
uint64_t config_hash(const RunConfig& rc);  // FNV-1a over the canonical JSON

PhysicalParams params_from_config(const RunConfig& rc);

// CSV with all doubles printed as %.17g so runs are byte-comparable
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void add(const std::vector<std::string>& row);
    std::string& cell(size_t row, size_t col);
    static std::string num(double v);
    void write(const std::string& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct PlotSeries {
    std::string name;
    std::vector<double> x, y;
};

// minimal hand-rolled log-log scatter/line plot; guide_slope draws a dashed
// power-law reference through the first point of the first series (0 = off)
void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<PlotSeries>& series, double guide_slope = 0.0);

// One quantitative check row as emitted by the CLI: estimate vs target with
// either a relative tolerance, an absolute sigma allowance, or both.
struct CheckRow {
    std::string name;
    double est = 0.0;
    double target = 0.0;
    double rel_err = 0.0;
    double stderr_est = 0.0;  // 0 for deterministic routes
    double tol_rel = 0.0;
    std::string route;  // closed_form | quadrature | mc | asymptotic | lattice
    bool pass = false;
};

CheckRow make_check(const std::string& name, double est, double target, double tol_rel,
                    double stderr_est, const std::string& route, double n_sigma = 3.0);
void append_check_csv(CsvWriter& csv, const CheckRow& row);
std::vector<std::string> check_csv_header();

void write_manifest(const std::string& path, const RunConfig& rc, const PhysicalParams& prm,
                    const std::vector<std::string>& artifacts,
                    const std::vector<std::pair<std::string, double>>& tolerances = {});

bool ensure_dir(const std::string& path);

}  // namespace fracbubble
