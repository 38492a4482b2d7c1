// Command-line front end: tau scans, zero sets, curve samples, verification
// battery, and asymptotic extraction, emitted as plot-ready CSV/JSON.
//
// Exit codes: 0 success, 1 verification failure, 2 bad input, 3 numerical
// breakdown.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "p4/geometry.hpp"
#include "p4/io.hpp"
#include "p4/orthopoly.hpp"
#include "p4/quadrature.hpp"
#include "p4/tau.hpp"
#include "p4/zeros.hpp"

using nlohmann::json;
using namespace p4;

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(2) << "\n";
}

json curve_to_json_meta(const CurveSample& c) {
  return json{{"points", c.points.size()},
              {"closed", c.closed},
              {"components", c.components}};
}

void write_curve_csv(const std::string& path, const CurveSample& c) {
  std::vector<std::vector<double>> rows;
  rows.reserve(c.points.size());
  for (size_t i = 0; i < c.points.size(); ++i) {
    const cplx d = (i < c.density.size()) ? c.density[i] : cplx(0.0, 0.0);
    rows.push_back({c.points[i].real(), c.points[i].imag(),
                    i < c.residuals.size() ? c.residuals[i] : 0.0, d.real(), d.imag()});
  }
  write_csv(path, {"re", "im", "residual", "density_re", "density_im"}, rows);
}

int cmd_tau(double gamma, int n, double s_min, double s_max, double step, double eps_override,
            bool has_eps, int threads, const std::string& out) {
  TauSeries series;
  if (has_eps) {
    series.gamma = gamma;
    series.n = n;
    const QuadratureRule rule = gauss_hermite(2 * n, 0.5);
    for (double s = s_min; s <= s_max + 0.5 * step; s += step) {
      TauResult r = tau_eval(TauParams{s, gamma, n, eps_override}, rule);
      series.s_grid.push_back(s);
      series.tau_values.push_back(r.value);
      series.atan_tau.push_back(std::atan(r.value));
    }
  } else {
    series = tau_scan(gamma, n, s_min, s_max, step, threads);
  }
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < series.s_grid.size(); ++i)
    rows.push_back({series.s_grid[i], series.tau_values[i], series.atan_tau[i]});
  write_csv(out, {"s", "tau", "atan_tau"}, rows);

  json sidecar{{"gamma", gamma}, {"n", n}, {"step", step}, {"brackets", json::array()}};
  for (const auto& [lo, hi] : series.brackets)
    sidecar["brackets"].push_back({{"s_lo", lo}, {"s_hi", hi}});
  write_json(out + ".brackets.json", sidecar);
  std::cout << "tau: " << series.s_grid.size() << " grid points, " << series.brackets.size()
            << " sign changes -> " << out << "\n";
  return 0;
}

int cmd_curve(bool szego, bool lemniscate, bool c_hat, double gamma_r_value, int d, double t,
              double tc, double z0, int M, const std::string& out) {
  const int selected = int(szego) + int(lemniscate) + int(c_hat) + int(gamma_r_value > 0.0);
  if (selected != 1)
    throw std::invalid_argument("curve: pick exactly one of --szego / --lemniscate / --c-hat / --gamma-r");
  CurveSample c;
  if (szego) {
    c = szego_curve_z(M);
  } else if (gamma_r_value > 0.0) {
    c = curve_gamma_r(gamma_r_value, z0, M);
  } else if (lemniscate) {
    c = lemniscate_boundary(t, tc, d, M);
  } else {
    c = unfold_curve(szego_curve_z(M), tc, d);
  }
  write_curve_csv(out, c);
  std::cout << "curve: " << c.points.size() << " points (" << c.components
            << " component(s)) -> " << out << "\n";
  return 0;
}

int cmd_zeros(int d, int ell, int k, double z0, double t, double T, bool critical, int digits,
              bool unfold, int M, const std::string& out_prefix) {
  double gamma, z0_eff, t_eff;
  if (critical || z0 > 0.0) {
    gamma = double(d - ell - 1) / d;
    z0_eff = critical ? 1.0 : z0;
    t_eff = (t > 0.0) ? t : 1.0;
  } else {
    ModelParams mp{d, ell, t, T, k};
    mp.validate();
    gamma = mp.gamma();
    z0_eff = mp.z0();
    t_eff = t;
  }
  const OrthoResult r = monic_orthogonal(k, z0_eff, gamma, digits);
  ZeroSet zs = polynomial_roots(r.poly);
  zs.k = k;
  zs.gamma = gamma;
  zs.z0 = z0_eff;

  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < zs.roots.size(); ++i)
    rows.push_back({zs.roots[i].real(), zs.roots[i].imag(), zs.residuals[i]});
  write_csv(out_prefix + "_roots.csv", {"re", "im", "residual"}, rows);

  const CurveSample curve = curve_gamma_r(std::min(1.0, z0_eff), z0_eff, M);
  write_curve_csv(out_prefix + "_gamma1.csv", curve);

  json poly{{"degree", r.poly.degree},
            {"k", k},
            {"z0", z0_eff},
            {"gamma", gamma},
            {"digits", r.digits},
            {"resolution", r.resolution},
            {"orthogonality_residual", r.orthogonality_residual},
            {"coefficients", json::array()}};
  for (const cplx& c : r.poly.coeffs) poly["coefficients"].push_back({c.real(), c.imag()});
  write_json(out_prefix + "_poly.json", poly);

  json stats{{"k", k},       {"gamma", gamma},
             {"z0", z0_eff}, {"digits", r.digits},
             {"resolution", r.resolution}, {"orthogonality_residual", r.orthogonality_residual}};
  const auto dist = zero_curve_distance(zs, curve);
  stats["distance"] = {{"max", dist.max_distance},
                       {"mean", dist.mean_distance},
                       {"max_exterior", dist.max_exterior_distance},
                       {"roots_used", dist.used.size()}};
  if (z0_eff == 1.0 && k >= 10) {
    const auto zu = extract_ZU(r.poly, k, gamma, z0_eff);
    try {
      const auto corrected = corrected_zero_curve(k, gamma, zu.estimate, M);
      write_curve_csv(out_prefix + "_corrected.csv", corrected);
      const auto dist_c = zero_curve_distance(zs, corrected);
      stats["corrected_distance"] = {{"max", dist_c.max_distance}, {"mean", dist_c.mean_distance}};
      stats["corrected_curve"] = curve_to_json_meta(corrected);
    } catch (const numerical_error& e) {
      stats["corrected_curve"] = {{"error", e.what()}};
    }
  }
  if (unfold) {
    const auto lam = unfold_zero_set(zs, t_eff, d, ell);
    std::vector<std::vector<double>> lrows;
    for (size_t i = 0; i < lam.roots.size(); ++i)
      lrows.push_back({lam.roots[i].real(), lam.roots[i].imag(), lam.residuals[i]});
    write_csv(out_prefix + "_roots_lambda.csv", {"re", "im", "residual"}, lrows);
  }
  write_json(out_prefix + "_stats.json", stats);
  std::cout << "zeros: k=" << k << " gamma=" << gamma << " max|root|="
            << [&] {
                 double m = 0;
                 for (auto& z : zs.roots) m = std::max(m, std::abs(z));
                 return m;
               }()
            << " -> " << out_prefix << "_*.csv\n";
  return 0;
}

int cmd_extract(int d, int ell, const std::vector<int>& k_list, double scaling,
                const std::string& out) {
  const double gamma = double(d - ell - 1) / d;
  std::vector<std::vector<double>> rows;
  cplx prev_h, prev_zu;
  double prev_gap_h = 0.0, prev_gap_zu = 0.0;
  bool have_prev = false;
  for (int k : k_list) {
    const double z0 = std::sqrt(double(k)) / (std::sqrt(double(k)) + scaling);
    const OrthoResult r = monic_orthogonal(k, z0, gamma);
    const auto h = extract_H(r.poly, k, gamma, z0);
    const auto zu = extract_ZU(r.poly, k, gamma, z0);
    double gap_h = 0.0, gap_zu = 0.0;
    if (have_prev) {
      gap_h = std::abs(h.estimate - prev_h);
      gap_zu = std::abs(zu.estimate - prev_zu);
    }
    rows.push_back({double(k), scaling, h.estimate.real(), h.estimate.imag(), h.dispersion,
                    zu.estimate.real(), zu.estimate.imag(), zu.dispersion, gap_h, gap_zu});
    prev_h = h.estimate;
    prev_zu = zu.estimate;
    prev_gap_h = gap_h;
    prev_gap_zu = gap_zu;
    have_prev = true;
  }
  (void)prev_gap_h;
  (void)prev_gap_zu;
  write_csv(out,
            {"k", "scaling", "H_re", "H_im", "H_dispersion", "ZU_re", "ZU_im", "ZU_dispersion",
             "H_gap", "ZU_gap"},
            rows);
  std::cout << "extract: " << rows.size() << " rows -> " << out << "\n";
  return 0;
}

struct Check {
  std::string name;
  bool pass;
  double measured;
  double tolerance;
};

int cmd_verify(const std::string& only, const std::string& out) {
  std::vector<Check> checks;
  auto want = [&](const std::string& name) { return only.empty() || only == name; };

  if (want("quadrature")) {
    double worst = 0.0;
    for (int m = 1; m <= 50; ++m) {
      const auto rule = gauss_hermite(m, 0.5);
      for (int p = 0; p <= 2 * m - 1; ++p) {
        const double got = integrate(rule, [p](double x) { return std::pow(x, p); });
        const double scale = std::exp(std::lgamma(0.5 * (p + 1)) - 0.5 * (p + 1) * std::log(0.5));
        const double exact = (p % 2 == 1) ? 0.0 : scale;
        worst = std::max(worst, std::abs(got - exact) / scale);
      }
    }
    checks.push_back({"quadrature", worst < 1e-10, worst, 1e-10});
  }
  if (want("s0")) {
    const double s0 = pole_free_threshold();
    const double err = std::abs(s0 + 0.7701449782);
    checks.push_back({"s0", err < 1e-9, err, 1e-9});
  }
  if (want("tau-limit")) {
    const double err = std::abs(tau(TauParams::with_default_epsilon(-8.0, 0.5, 30)) - 1.0);
    checks.push_back({"tau-limit", err < 1e-6, err, 1e-6});
  }
  if (want("nu-hat")) {
    const auto curve = szego_curve_z(256);
    const double mass_err = std::abs(nu_hat_mass(curve) - 1.0);
    double min_density = 0.0;
    for (const cplx& rho : curve.density) min_density = std::min(min_density, rho.real());
    const bool ok = mass_err < 1e-8 && min_density > -1e-8;
    checks.push_back({"nu-hat", ok, std::max(mass_err, -min_density), 1e-8});
  }
  if (want("planar-contour")) {
    double worst = 0.0;
    auto one = [](cplx) { return cplx(1.0, 0.0); };
    for (double gamma : {0.25, 0.5, 0.75})
      for (double t : {0.3, 1.0})
        for (int j = 0; j <= 5; ++j) {
          const cplx left = planar_moment(one, j, gamma, 1.0, t);
          const cplx right = contour_rhs(one, j, gamma, 1.0, t);
          worst = std::max(worst, std::abs(left - right) / std::abs(right));
        }
    checks.push_back({"planar-contour", worst < 1e-6, worst, 1e-6});
  }
  if (want("hankel")) {
    bool ok = true;
    double smallest = 1e300;
    for (double gamma : {0.25, 0.5})
      for (int k : {1, 2, 3}) {
        const auto seq = complex_moments(k, 1.0, gamma, std::max(2 * k - 2, 0), {}, 0, 50);
        try {
          const cplx det = hankel_det(seq, k);
          smallest = std::min(smallest, std::abs(det));
        } catch (const numerical_error&) {
          ok = false;
        }
      }
    checks.push_back({"hankel", ok && smallest > 0.0, smallest, 0.0});
  }

  json report{{"checks", json::array()}};
  bool all = true;
  for (const auto& c : checks) {
    report["checks"].push_back(
        {{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}, {"tolerance", c.tolerance}});
    all = all && c.pass;
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " (measured " << c.measured << ")\n";
  }
  report["all_pass"] = all;
  if (!out.empty()) write_json(out, report);
  return all ? 0 : 1;
}

int cmd_seed_figures(const std::string& outdir, int threads) {
  std::filesystem::create_directories(outdir);
  // tau scans at the pinned resolutions.
  cmd_tau(0.1, 30, -8.0, 8.0, 0.02, 0.0, false, threads, join_path(outdir, "tau_g01_n30.csv"));
  cmd_tau(0.5, 30, -8.0, 8.0, 0.02, 0.0, false, threads, join_path(outdir, "tau_g05_n30.csv"));
  cmd_tau(0.1, 80, -8.0, 8.0, 0.02, 0.0, false, threads, join_path(outdir, "tau_g01_n80.csv"));
  cmd_tau(0.5, 80, -8.0, 8.0, 0.02, 0.0, false, threads, join_path(outdir, "tau_g05_n80.csv"));
  cmd_tau(0.1, 150, -5.0, 30.0, 0.05, 0.0, false, threads,
          join_path(outdir, "tau_g01_n150_extended.csv"));
  // Support boundary in the three regimes (d = 3).
  write_curve_csv(join_path(outdir, "support_subcritical.csv"), lemniscate_boundary(0.7, 1.0, 3, 512));
  write_curve_csv(join_path(outdir, "support_critical.csv"), lemniscate_boundary(1.0, 1.0, 3, 512));
  write_curve_csv(join_path(outdir, "support_supercritical.csv"), lemniscate_boundary(1.3, 1.0, 3, 512));
  // Critical support boundary and the level curve C-hat, d = 5.
  write_curve_csv(join_path(outdir, "support_critical_d5.csv"), lemniscate_boundary(1.0, 1.0, 5, 512));
  write_curve_csv(join_path(outdir, "chat_d5.csv"), unfold_curve(szego_curve_z(512), 1.0, 5));
  // The contour family Gamma_r.
  for (double r : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    std::ostringstream name;
    name << "contour_family_r" << int(r * 10) << ".csv";
    write_curve_csv(join_path(outdir, name.str()), curve_gamma_r(r, 1.0, 512));
  }
  // Zeros of pi_k with the Szego curve and corrected curve overlays.
  for (int k : {40, 60, 70}) {
    std::ostringstream prefix;
    prefix << "zeros_k" << k;
    cmd_zeros(3, 0, k, 1.0, 2.0, 0.0, false, 0, false, 1024, join_path(outdir, prefix.str()));
  }
  std::cout << "seed-figures: datasets written to " << outdir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Painleve IV tau-function, planar orthogonal polynomials, and critical curves"};
  app.set_config("--config");
  app.require_subcommand(0, 1);

  std::string outdir = ".";
  app.add_option("--outdir", outdir, "output directory")->envname("P4_OUTDIR");
  int threads = 1;
  app.add_option("--threads", threads, "worker pool size for scans");
  bool seed_figures = false;
  app.add_flag("--seed-figures", seed_figures, "regenerate every figure dataset and exit");

  // tau
  auto* tau_cmd = app.add_subcommand("tau", "tau(s, gamma, n) on an s-grid");
  double gamma = 0.1, s_min = -8.0, s_max = 8.0, step = 0.02, eps_override = 0.0;
  int n = 30;
  bool has_eps = false;
  std::string tau_out = "tau.csv";
  tau_cmd->add_option("--gamma", gamma, "gamma in [0,1)")->check(CLI::Range(0.0, 0.999999));
  tau_cmd->add_option("--n", n, "nodes on the negative axis")->check(CLI::PositiveNumber);
  tau_cmd->add_option("--s-min", s_min);
  tau_cmd->add_option("--s-max", s_max);
  tau_cmd->add_option("--step", step)->check(CLI::PositiveNumber);
  tau_cmd->add_option("--epsilon", eps_override, "override the max(0,-s) contour shift")
      ->check(CLI::NonNegativeNumber)
      ->each([&](const std::string&) { has_eps = true; });
  tau_cmd->add_option("--out", tau_out, "output CSV path");

  // zeros
  auto* zeros_cmd = app.add_subcommand("zeros", "roots of pi_k with curve overlays");
  int d = 3, ell = 0, k = 40, digits = 0, curve_m = 1024;
  double z0 = 0.0, t_param = 2.0, big_t = 0.0;
  bool critical = false, unfold = false;
  zeros_cmd->add_option("--d", d)->check(CLI::Range(2, 64));
  zeros_cmd->add_option("--ell", ell)->check(CLI::NonNegativeNumber);
  zeros_cmd->add_option("--k", k)->check(CLI::PositiveNumber);
  zeros_cmd->add_option("--z0", z0, "z0 directly (else from --t/--T)");
  zeros_cmd->add_option("--t", t_param, "potential strength t");
  zeros_cmd->add_option("--T", big_t, "temperature T");
  zeros_cmd->add_flag("--critical", critical, "force z0 = 1");
  zeros_cmd->add_option("--digits", digits, "working precision (0 = auto)");
  zeros_cmd->add_flag("--unfold", unfold, "emit lambda-plane roots too");
  zeros_cmd->add_option("-M,--curve-points", curve_m);
  std::string zeros_out = "zeros";
  zeros_cmd->add_option("--out", zeros_out, "output path prefix");

  // curve
  auto* curve_cmd = app.add_subcommand("curve", "emit one curve sample as CSV");
  bool szego = false, lemn = false, c_hat = false;
  double gamma_r_val = 0.0, tc = 1.0, curve_z0 = 1.0, curve_t = 1.0;
  int curve_d = 5, m_points = 512;
  curve_cmd->add_flag("--szego", szego, "Szego curve in z coordinates");
  curve_cmd->add_flag("--lemniscate", lemn, "support boundary |lambda^d - t| = t_c");
  curve_cmd->add_flag("--c-hat", c_hat, "critical curve pulled back to the lambda plane");
  curve_cmd->add_option("--gamma-r", gamma_r_val, "Gamma_r member (value of r)");
  curve_cmd->add_option("--d", curve_d);
  curve_cmd->add_option("--t", curve_t);
  curve_cmd->add_option("--tc", tc);
  curve_cmd->add_option("--z0", curve_z0);
  curve_cmd->add_option("-M,--points", m_points);
  std::string curve_out = "curve.csv";
  curve_cmd->add_option("--out", curve_out);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the verification battery");
  std::string only, verify_out = "verify.json";
  verify_cmd->add_option("--only", only,
                         "one of: quadrature, s0, tau-limit, nu-hat, planar-contour, hankel");
  verify_cmd->add_option("--out", verify_out);

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "H and Z/U extraction table");
  std::vector<int> k_list{40, 60, 70};
  double scaling = 0.0;
  int ex_d = 3, ex_ell = 0;
  extract_cmd->add_option("--d", ex_d)->check(CLI::Range(2, 64));
  extract_cmd->add_option("--ell", ex_ell);
  extract_cmd->add_option("--k-list", k_list)->delimiter(',');
  extract_cmd->add_option("--scaling", scaling, "double-scaling parameter S");
  std::string extract_out = "extract.csv";
  extract_cmd->add_option("--out", extract_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return (code == 0) ? 0 : 2;
  }

  try {
    if (seed_figures) return cmd_seed_figures(outdir, threads);
    if (tau_cmd->parsed())
      return cmd_tau(gamma, n, s_min, s_max, step, eps_override, has_eps, threads,
                     join_path(outdir, tau_out));
    if (zeros_cmd->parsed())
      return cmd_zeros(d, ell, k, critical ? 1.0 : z0, t_param, big_t, critical, digits, unfold,
                       curve_m, join_path(outdir, zeros_out));
    if (curve_cmd->parsed())
      return cmd_curve(szego, lemn, c_hat, gamma_r_val, curve_d, curve_t, tc, curve_z0, m_points,
                       join_path(outdir, curve_out));
    if (verify_cmd->parsed()) return cmd_verify(only, join_path(outdir, verify_out));
    if (extract_cmd->parsed()) return cmd_extract(ex_d, ex_ell, k_list, scaling,
                                                  join_path(outdir, extract_out));
    std::cout << app.help();
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (bad input): " << e.what() << "\n";
    return 2;
  } catch (const numerical_error& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
