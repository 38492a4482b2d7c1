// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with the measured quantities. Criteria 8 and 11 carry sub-checks that
// are known to fail on exact mathematics (see the README); they are
// asserted verbatim regardless.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "doctest.h"
#include "p4/geometry.hpp"
#include "p4/orthopoly.hpp"
#include "p4/quadrature.hpp"
#include "p4/tau.hpp"
#include "p4/zeros.hpp"

using namespace p4;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CriticalInstance {
  OrthoResult ortho;
  ZeroSet zeros;
  DistanceStats stats;
  AsymptoticExtract h, zu;
  double build_seconds = 0.0;
};

// d = 3, ell = 0, z0 = 1 instances shared by criteria 8 and 9.
const CriticalInstance& critical_d3(int k) {
  static std::map<int, CriticalInstance> cache;
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  const auto t0 = std::chrono::steady_clock::now();
  CriticalInstance inst;
  inst.ortho = monic_orthogonal(k, 1.0, 2.0 / 3.0);
  inst.zeros = polynomial_roots(inst.ortho.poly);
  inst.zeros.k = k;
  inst.zeros.gamma = 2.0 / 3.0;
  inst.zeros.z0 = 1.0;
  static const CurveSample curve = szego_curve_z(2048);
  inst.stats = zero_curve_distance(inst.zeros, curve);
  inst.h = extract_H(inst.ortho.poly, k, 2.0 / 3.0, 1.0);
  inst.zu = extract_ZU(inst.ortho.poly, k, 2.0 / 3.0, 1.0);
  inst.build_seconds = seconds_since(t0);
  return cache.emplace(k, std::move(inst)).first->second;
}

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  (%s)\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

}  // namespace

TEST_CASE("c01 pole-free threshold") {
  const auto t0 = std::chrono::steady_clock::now();
  const double s0 = pole_free_threshold();
  const double elapsed = seconds_since(t0);
  const double err = std::abs(s0 + 0.7701449782);
  const bool pass = err < 1e-9 && elapsed < 1.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "s0 = %.10f, |err| = %.3e, %.3f s", s0, err, elapsed);
  report(1, pass, buf);
  CHECK(err < 1e-9);
  CHECK(elapsed < 1.0);
}

TEST_CASE("c02 tau limit and positivity") {
  const auto t0 = std::chrono::steady_clock::now();
  const double s0 = pole_free_threshold();
  double worst_limit = 0.0, min_tau = 1e300;
  for (double gamma : {0.1, 0.5, 0.9}) {
    const QuadratureRule rule = gauss_hermite(60, 0.5);
    worst_limit = std::max(
        worst_limit,
        std::abs(tau_eval(TauParams::with_default_epsilon(-8.0, gamma, 30), rule).value - 1.0));
    for (double s = -8.0; s <= s0; s += 0.05)
      min_tau = std::min(min_tau,
                         tau_eval(TauParams::with_default_epsilon(s, gamma, 30), rule).value);
  }
  const double elapsed = seconds_since(t0);
  const bool pass = worst_limit < 1e-6 && min_tau > 0.0 && elapsed < 60.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "|tau(-8)-1| <= %.3e, min tau = %.6f, %.1f s",
                worst_limit, min_tau, elapsed);
  report(2, pass, buf);
  CHECK(worst_limit < 1e-6);
  CHECK(min_tau > 0.0);
  CHECK(elapsed < 60.0);
}

TEST_CASE("c03 tau realness on the n = 80 scan") {
  const QuadratureRule rule = gauss_hermite(160, 0.5);
  double worst = 0.0;
  for (double s = -4.0; s <= 4.001; s += 0.1)
    worst = std::max(worst,
                     tau_eval(TauParams::with_default_epsilon(s, 0.1, 80), rule).max_rel_imag);
  const bool pass = worst < 1e-10;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "max relative imaginary part = %.3e", worst);
  report(3, pass, buf);
  CHECK(worst < 1e-10);
}

TEST_CASE("c04 cross-resolution first zero location") {
  const auto t0 = std::chrono::steady_clock::now();
  const double s0 = pole_free_threshold();
  auto first_zero = [&](int n) {
    const auto series = tau_scan(0.1, n, s0, 10.0, 0.05);
    REQUIRE(!series.brackets.empty());
    return refine_tau_zero(0.1, n, series.brackets.front());
  };
  const double z30 = first_zero(30);
  const double z80 = first_zero(80);
  const double elapsed = seconds_since(t0);
  const bool pass = std::abs(z30 - z80) < 0.1 && elapsed < 300.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "first zero: n=30 -> %.6f, n=80 -> %.6f, %.1f s",
                z30, z80, elapsed);
  report(4, pass, buf);
  CHECK(std::abs(z30 - z80) < 0.1);
  CHECK(elapsed < 300.0);
}

TEST_CASE("c05 planar <-> contour identity battery") {
  const auto t0 = std::chrono::steady_clock::now();
  auto one = [](cplx) { return cplx(1.0, 0.0); };
  double worst = 0.0;
  for (double gamma : {0.25, 0.5, 0.75})
    for (double t : {0.3, 1.0})
      for (int j = 0; j <= 5; ++j) {
        const cplx left = planar_moment(one, j, gamma, 1.0, t);
        const cplx right = contour_rhs(one, j, gamma, 1.0, t);
        worst = std::max(worst, std::abs(left - right) / std::abs(right));
      }
  const double elapsed = seconds_since(t0);
  const bool pass = worst < 1e-6 && elapsed < 120.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "worst relative error = %.3e, %.1f s", worst, elapsed);
  report(5, pass, buf);
  CHECK(worst < 1e-6);
  CHECK(elapsed < 120.0);
}

TEST_CASE("c06 nu-hat probability measure") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto curve = szego_curve_z(256);
  const double mass_err = std::abs(nu_hat_mass(curve) - 1.0);
  double min_density = 0.0;
  for (const cplx& rho : curve.density) min_density = std::min(min_density, rho.real());
  const double elapsed = seconds_since(t0);
  const bool pass = mass_err < 1e-8 && min_density > -1e-8 && elapsed < 1.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "|mass - 1| = %.3e, min density = %.3e, %.3f s",
                mass_err, min_density, elapsed);
  report(6, pass, buf);
  CHECK(mass_err < 1e-8);
  CHECK(min_density > -1e-8);
  CHECK(elapsed < 1.0);
}

TEST_CASE("c07 exact critical factorization") {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int d : {2, 3})
    for (int k : {1, 2, 3, 4})
      for (double t_c : {1.0, std::sqrt(2.0)}) {
        const auto ortho = monic_orthogonal(k, 1.0, 0.0, 50);
        const auto pn = unfold_polynomial(ortho.poly, t_c, d, d - 1);
        std::vector<cplx> expect(pn.degree + 1, cplx(0.0, 0.0));
        double c = 1.0;
        for (int i = 0; i <= k; ++i) {
          expect[i * d + d - 1] = c * std::pow(-t_c, k - i);
          c = c * (k - i) / (i + 1.0);
        }
        double scale = 0.0;
        for (const auto& e : expect) scale = std::max(scale, std::abs(e));
        for (int m = 0; m <= pn.degree; ++m) {
          const double denom = std::abs(expect[m]) > 0.0 ? std::abs(expect[m]) : scale;
          worst = std::max(worst, std::abs(pn.coeffs[m] - expect[m]) / denom);
        }
      }
  const double elapsed = seconds_since(t0);
  const bool pass = worst < 1e-9 && elapsed < 10.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "worst coefficient error = %.3e, %.1f s", worst, elapsed);
  report(7, pass, buf);
  CHECK(worst < 1e-9);
  CHECK(elapsed < 10.0);
}

TEST_CASE("c08 critical zero sets") {
  const auto t0 = std::chrono::steady_clock::now();
  double c_fit = 0.0;
  double max_mod = 0.0;
  bool contained = true, nonincreasing = true, envelope = true;
  double prev_dist = 1e300;
  char buf[256];
  std::string detail;
  for (int k : {40, 60, 70}) {
    const auto& inst = critical_d3(k);
    for (const cplx& z : inst.zeros.roots) max_mod = std::max(max_mod, std::abs(z));
    contained = contained && max_mod <= 1.05;
    const double bound_base = std::log(double(k)) / k;
    if (k == 40) c_fit = inst.stats.max_distance / bound_base;
    if (inst.stats.max_distance > prev_dist) nonincreasing = false;
    if (inst.stats.max_distance > c_fit * bound_base + 1e-15) envelope = false;
    prev_dist = inst.stats.max_distance;
    std::snprintf(buf, sizeof(buf), "k=%d max_dist=%.4f C*logk/k=%.4f; ", k,
                  inst.stats.max_distance, c_fit * bound_base);
    detail += buf;
  }
  const double elapsed = seconds_since(t0);
  const bool pass = contained && nonincreasing && envelope && elapsed < 600.0;
  std::snprintf(buf, sizeof(buf), "max|z| = %.4f, %.0f s", max_mod, elapsed);
  report(8, pass, detail + buf);
  CHECK(contained);
  CHECK(nonincreasing);
  // Known-failing sub-check: the maximum is attained by the zeros nearest the
  // corner, which approach it at the partial-sum rate sqrt(log k / k) in this
  // k range, so the k = 40 fit of C undershoots at 60 and 70.
  CHECK(envelope);
  CHECK(elapsed < 600.0);
}

TEST_CASE("family invariants over k in {40, 60, 70}") {
  // Exterior void: no roots outside Gamma_1 beyond 5 log k / k, and the
  // extraction dispersions shrink as k grows.
  double prev_disp_h = 1e300, prev_disp_zu = 1e300;
  for (int k : {40, 60, 70}) {
    const auto& inst = critical_d3(k);
    CHECK(inst.stats.max_exterior_distance <= 5.0 * std::log(double(k)) / k);
    const double dh = inst.h.dispersion / std::abs(inst.h.estimate);
    const double dzu = inst.zu.dispersion / std::abs(inst.zu.estimate);
    CHECK(dh < prev_disp_h);
    CHECK(dzu < prev_disp_zu);
    prev_disp_h = dh;
    prev_disp_zu = dzu;
  }
}

TEST_CASE("c09 extraction consistency") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& i40 = critical_d3(40);
  const auto& i60 = critical_d3(60);
  const auto& i70 = critical_d3(70);

  const double disp_h = i60.h.dispersion / std::abs(i60.h.estimate);
  const double disp_zu = i60.zu.dispersion / std::abs(i60.zu.estimate);
  const double gap_h_1 = std::abs(i60.h.estimate - i40.h.estimate);
  const double gap_h_2 = std::abs(i70.h.estimate - i60.h.estimate);
  const double gap_zu_1 = std::abs(i60.zu.estimate - i40.zu.estimate);
  const double gap_zu_2 = std::abs(i70.zu.estimate - i60.zu.estimate);

  // Fixed probe point: theta = 2, 95% of the Gamma_1 radius, k = 60.
  const double theta = 2.0;
  const cplx z = std::polar(0.95 * gamma_r_radius(theta, 1.0, 1.0), theta);
  const double recon = omega1_reconstruction_error(i60.ortho.poly, 60, 2.0 / 3.0, 1.0, z,
                                                   i60.h.estimate, i60.zu.estimate);
  const double elapsed = seconds_since(t0);
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "dispersions %.1f%% / %.1f%%, gaps H %.4f->%.4f, ZU %.4f->%.4f, "
                "omega1 error %.3f, %.0f s",
                100 * disp_h, 100 * disp_zu, gap_h_1, gap_h_2, gap_zu_1, gap_zu_2, recon,
                elapsed);
  const bool pass = disp_h < 0.15 && disp_zu < 0.15 && gap_h_2 < gap_h_1 &&
                    gap_zu_2 < gap_zu_1 && recon < 0.10 && elapsed < 600.0;
  report(9, pass, buf);
  CHECK(disp_h < 0.15);
  CHECK(disp_zu < 0.15);
  CHECK(gap_h_2 < gap_h_1);
  CHECK(gap_zu_2 < gap_zu_1);
  CHECK(recon < 0.10);
  CHECK(elapsed < 600.0);
}

TEST_CASE("c10 quadrature exactness") {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double lambda : {1.0, 0.5}) {
    for (int m = 1; m <= 50; ++m) {
      const auto rule = gauss_hermite(m, lambda);
      for (int p = 0; p <= 2 * m - 1; ++p) {
        const double got = integrate(rule, [p](double x) { return std::pow(x, p); });
        const double scale =
            std::exp(std::lgamma(0.5 * (p + 1)) - 0.5 * (p + 1) * std::log(lambda));
        const double exact = (p % 2 == 1) ? 0.0 : scale;
        worst = std::max(worst, std::abs(got - exact) / scale);
      }
    }
  }
  const double elapsed = seconds_since(t0);
  const bool pass = worst < 1e-10 && elapsed < 30.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "worst relative error = %.3e, %.2f s", worst, elapsed);
  report(10, pass, buf);
  CHECK(worst < 1e-10);
  CHECK(elapsed < 30.0);
}

TEST_CASE("c11 conformal normal form") {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_residual = 0.0;
  for (double z0 : {0.9, 1.0, 1.1}) {
    const double a = a_of(z0);
    for (double rad : {0.05, 0.15, 0.25})
      for (int i = 0; i < 32; ++i) {
        const cplx z = 1.0 + std::polar(rad, 2.0 * pi * i / 32.0);
        const cplx zeta = conformal_zeta(z, z0);
        worst_residual =
            std::max(worst_residual, std::abs(phi_cont(z, z0) - 0.5 * zeta * zeta - a * zeta));
      }
  }
  const double a_at_1 = a_of(1.0);
  const double series_defect = std::abs(a_of(1.01) + 0.01);
  const double elapsed = seconds_since(t0);
  const bool pass =
      worst_residual < 1e-12 && a_at_1 == 0.0 && series_defect < 1e-5 && elapsed < 1.0;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "residual %.2e, A(1) = %g, |A(1.01)+0.01| = %.3e, %.3f s", worst_residual,
                a_at_1, series_defect, elapsed);
  report(11, pass, buf);
  CHECK(worst_residual < 1e-12);
  CHECK(a_at_1 == 0.0);
  // Known-failing sub-check: the exact A(z0) carries a (2/3) delta^2 term, so
  // the defect is 6.6e-5; the 1e-5 tolerance descends from a misprinted
  // series. The residual check above pins A to ~4e-12, leaving no freedom.
  CHECK(series_defect < 1e-5);
  CHECK(elapsed < 1.0);
}
