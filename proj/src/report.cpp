#include "fracbubble/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fracbubble {

using nlohmann::json;

namespace {

json config_to_json(const RunConfig& rc) {
    json j;
    j["N"] = rc.N;
    j["s"] = rc.s;
    j["L0"] = rc.L0;
    j["L1"] = rc.L1;
    j["M0"] = rc.M0;
    j["M1"] = rc.M1;
    j["seed"] = rc.seed;
    j["potential"] = rc.potential;
    j["pot_a"] = rc.pot_a;
    j["pot_b"] = rc.pot_b;
    j["pot_rc"] = rc.pot_rc;
    j["pot_w"] = rc.pot_w;
    j["k"] = rc.k;
    j["lambda_multiplier"] = rc.lambda_multiplier;
    j["sigma_factor"] = rc.sigma_factor;
    j["rho_factor"] = rc.rho_factor;
    j["k_list"] = rc.k_list;
    j["suites"] = rc.suites;
    j["mc_n"] = rc.mc_n;
    j["mc_shards"] = rc.mc_shards;
    j["residual_point_n"] = rc.residual_point_n;
    j["out_dir"] = rc.out_dir;
    return j;
}

}  // namespace

std::string run_config_json(const RunConfig& rc) { return config_to_json(rc).dump(2) + "\n"; }

RunConfig parse_run_config_json(const std::string& text) {
    json j = json::parse(text);
    RunConfig rc;
    json canon = config_to_json(rc);
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!canon.contains(it.key()))
            throw std::invalid_argument("config: unknown key '" + it.key() + "'");
    rc.N = j.value("N", rc.N);
    rc.s = j.value("s", rc.s);
    rc.L0 = j.value("L0", rc.L0);
    rc.L1 = j.value("L1", rc.L1);
    rc.M0 = j.value("M0", rc.M0);
    rc.M1 = j.value("M1", rc.M1);
    rc.seed = j.value("seed", rc.seed);
    rc.potential = j.value("potential", rc.potential);
    rc.pot_a = j.value("pot_a", rc.pot_a);
    rc.pot_b = j.value("pot_b", rc.pot_b);
    rc.pot_rc = j.value("pot_rc", rc.pot_rc);
    rc.pot_w = j.value("pot_w", rc.pot_w);
    rc.k = j.value("k", rc.k);
    rc.lambda_multiplier = j.value("lambda_multiplier", rc.lambda_multiplier);
    rc.sigma_factor = j.value("sigma_factor", rc.sigma_factor);
    rc.rho_factor = j.value("rho_factor", rc.rho_factor);
    if (j.contains("k_list")) rc.k_list = j["k_list"].get<std::vector<int>>();
    if (j.contains("suites")) rc.suites = j["suites"].get<std::vector<std::string>>();
    rc.mc_n = j.value("mc_n", rc.mc_n);
    rc.mc_shards = j.value("mc_shards", rc.mc_shards);
    rc.residual_point_n = j.value("residual_point_n", rc.residual_point_n);
    rc.out_dir = j.value("out_dir", rc.out_dir);
    return rc;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config_json(ss.str());
}

uint64_t config_hash(const RunConfig& rc) {
    std::string canon = config_to_json(rc).dump();  // keys sorted by nlohmann
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

PhysicalParams params_from_config(const RunConfig& rc) {
    return make_params(rc.N, rc.s, rc.L0, rc.L1, rc.M0, rc.M1);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add(const std::vector<std::string>& row) {
    if (row.size() != header_.size())
        throw std::invalid_argument("CsvWriter: row width mismatch");
    rows_.push_back(row);
}

std::string& CsvWriter::cell(size_t row, size_t col) { return rows_.at(row).at(col); }

std::string CsvWriter::num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("CsvWriter: cannot open " + path);
    for (size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
    out << "\n";
    for (const auto& r : rows_) {
        for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << "\n";
    }
}

namespace {

double nice_log(double v) { return std::log10(std::max(v, 1e-300)); }

}  // namespace

void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<PlotSeries>& series, double guide_slope) {
    const int W = 720, H = 520, ML = 70, MR = 30, MT = 50, MB = 60;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& sr : series)
        for (size_t i = 0; i < sr.x.size(); ++i) {
            x0 = std::min(x0, nice_log(sr.x[i]));
            x1 = std::max(x1, nice_log(sr.x[i]));
            y0 = std::min(y0, nice_log(std::abs(sr.y[i])));
            y1 = std::max(y1, nice_log(std::abs(sr.y[i])));
        }
    if (x1 <= x0) x1 = x0 + 1.0;
    if (y1 <= y0) y1 = y0 + 1.0;
    double padx = 0.06 * (x1 - x0), pady = 0.08 * (y1 - y0);
    x0 -= padx;
    x1 += padx;
    y0 -= pady;
    y1 += pady;
    auto px = [&](double lx) { return ML + (lx - x0) / (x1 - x0) * (W - ML - MR); };
    auto py = [&](double ly) { return H - MB - (ly - y0) / (y1 - y0) * (H - MT - MB); };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("svg: cannot open " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
        << "</text>\n";
    // frame and decade grid
    out << "<rect x='" << ML << "' y='" << MT << "' width='" << (W - ML - MR) << "' height='"
        << (H - MT - MB) << "' fill='none' stroke='black'/>\n";
    for (int d = static_cast<int>(std::ceil(x0)); d <= static_cast<int>(std::floor(x1)); ++d) {
        out << "<line x1='" << px(d) << "' y1='" << MT << "' x2='" << px(d) << "' y2='" << (H - MB)
            << "' stroke='#dddddd'/>\n";
        out << "<text x='" << px(d) << "' y='" << (H - MB + 18)
            << "' text-anchor='middle' font-size='11'>1e" << d << "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(y0)); d <= static_cast<int>(std::floor(y1)); ++d) {
        out << "<line x1='" << ML << "' y1='" << py(d) << "' x2='" << (W - MR) << "' y2='" << py(d)
            << "' stroke='#dddddd'/>\n";
        out << "<text x='" << (ML - 8) << "' y='" << (py(d) + 4)
            << "' text-anchor='end' font-size='11'>1e" << d << "</text>\n";
    }
    out << "<text x='" << (ML + (W - ML - MR) / 2) << "' y='" << (H - 14)
        << "' text-anchor='middle' font-size='13'>" << xlabel << "</text>\n";
    out << "<text x='18' y='" << (MT + (H - MT - MB) / 2)
        << "' text-anchor='middle' font-size='13' transform='rotate(-90 18 "
        << (MT + (H - MT - MB) / 2) << ")'>" << ylabel << "</text>\n";

    if (guide_slope != 0.0 && !series.empty() && !series[0].x.empty()) {
        double gx0 = nice_log(series[0].x.front());
        double gy0 = nice_log(std::abs(series[0].y.front()));
        double gx1 = nice_log(series[0].x.back());
        double gy1 = gy0 + guide_slope * (gx1 - gx0);
        out << "<line x1='" << px(gx0) << "' y1='" << py(gy0) << "' x2='" << px(gx1) << "' y2='"
            << py(gy1) << "' stroke='#888888' stroke-dasharray='6,4'/>\n";
        out << "<text x='" << (px(gx1) - 4) << "' y='" << (py(gy1) - 6)
            << "' text-anchor='end' font-size='11' fill='#666666'>slope " << guide_slope
            << "</text>\n";
    }
    int ci = 0;
    for (const auto& sr : series) {
        const char* col = colors[ci % 6];
        out << "<polyline fill='none' stroke='" << col << "' stroke-width='1.5' points='";
        for (size_t i = 0; i < sr.x.size(); ++i)
            out << px(nice_log(sr.x[i])) << "," << py(nice_log(std::abs(sr.y[i]))) << " ";
        out << "'/>\n";
        for (size_t i = 0; i < sr.x.size(); ++i)
            out << "<circle cx='" << px(nice_log(sr.x[i])) << "' cy='"
                << py(nice_log(std::abs(sr.y[i]))) << "' r='3' fill='" << col << "'/>\n";
        out << "<text x='" << (W - MR - 6) << "' y='" << (MT + 16 + 16 * ci)
            << "' text-anchor='end' font-size='12' fill='" << col << "'>" << sr.name
            << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

CheckRow make_check(const std::string& name, double est, double target, double tol_rel,
                    double stderr_est, const std::string& route, double n_sigma) {
    CheckRow row;
    row.name = name;
    row.est = est;
    row.target = target;
    row.stderr_est = stderr_est;
    row.tol_rel = tol_rel;
    row.route = route;
    double denom = std::max(std::abs(target), 1e-300);
    row.rel_err = std::abs(est - target) / denom;
    row.pass = std::abs(est - target) <= tol_rel * denom + n_sigma * stderr_est;
    return row;
}

std::vector<std::string> check_csv_header() {
    return {"name", "est", "target", "rel_err", "stderr", "tol_rel", "route", "pass"};
}

void append_check_csv(CsvWriter& csv, const CheckRow& row) {
    csv.add({row.name, CsvWriter::num(row.est), CsvWriter::num(row.target),
             CsvWriter::num(row.rel_err), CsvWriter::num(row.stderr_est),
             CsvWriter::num(row.tol_rel), row.route, row.pass ? "1" : "0"});
}

void write_manifest(const std::string& path, const RunConfig& rc, const PhysicalParams& prm,
                    const std::vector<std::string>& artifacts,
                    const std::vector<std::pair<std::string, double>>& tolerances) {
    json j;
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(config_hash(rc)));
    j["config_hash_fnv64"] = hex;
    j["tool_version"] = "fracbubble 1.0.0";
    j["seed"] = rc.seed;
    if (!tolerances.empty()) {
        json t;
        for (const auto& [name, tol] : tolerances) t[name] = tol;
        j["tolerances"] = t;
    }
    j["config"] = json::parse(run_config_json(rc));
    j["params"] = {{"N", prm.N},
                   {"s", prm.s},
                   {"gamma", prm.gamma},
                   {"two_s_star", prm.two_s_star},
                   {"tau", prm.tau},
                   {"C_N", prm.C_N},
                   {"c_Ns", prm.c_Ns},
                   {"s_window", {prm.s_lo, prm.s_hi}},
                   {"lambda_exp", prm.lambda_exp},
                   {"h_exp", prm.h_exp}};
    j["cutoff_profile"] = "quintic_smoothstep_v1";
    j["notes"] = {
        {"cross_ring_density",
         "A2 is defined from the quadrature value of the half-line decay integral "
         "int_0^inf (1+t^2)^(-g/2) dt = B(1/2,(g-1)/2)/2; the doubled Gamma-quotient "
         "variant equals 2x this and is not used."},
        {"lambda_window",
         "configs built from the reduced-system roots may need L0 below the 0.5 default "
         "since the lambda multiplier t2 is small (about 0.17 for the canonical bump)."}};
    j["artifacts"] = artifacts;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("manifest: cannot open " + path);
    out << j.dump(2) << "\n";
}

bool ensure_dir(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    return !ec;
}

}  // namespace fracbubble
