#include "p4/tau.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

namespace p4 {

void TauParams::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("TauParams: gamma must be in [0,1)");
  if (n < 1) throw std::invalid_argument("TauParams: n must be >= 1");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("TauParams: epsilon must be >= 0");
  if (!std::isfinite(s)) throw std::invalid_argument("TauParams: s must be finite");
}

Eigen::MatrixXcd assemble_a_matrix(const TauParams& p, const QuadratureRule& rule) {
  p.validate();
  const int n = p.n;
  const int m = 2 * n;
  if (rule.order != m) throw std::invalid_argument("assemble_a_matrix: rule order must be 2n");
  int negatives = 0;
  for (double x : rule.nodes) negatives += (x < 0.0);
  if (negatives != n) throw std::invalid_argument("assemble_a_matrix: expected n negative nodes");
  if (p.epsilon == 0.0) {
    for (double x : rule.nodes)
      if (x == 0.0)
        throw numerical_error("assemble_a_matrix: node on the branch cut (epsilon = 0, x = 0)");
  }

  const double s = p.s, g = p.gamma, eps = p.epsilon;
  Eigen::MatrixXcd a(n, m);
  for (int j = 0; j < n; ++j) {
    const double xj = rule.nodes[j];  // ascending, so the first n are negative
    const double row = std::pow(std::abs(xj), 0.5 * g) * std::sqrt(rule.weights[j]) *
                       std::exp(-0.5 * s * xj);
    for (int l = 0; l < m; ++l) {
      const double xl = rule.nodes[l];
      const cplx denom(xj - eps, -xl);
      if (std::abs(denom) < 1e-14)
        throw numerical_error("assemble_a_matrix: contours intersect (denominator ~ 0)");
      const cplx col = std::pow(cplx(eps, xl), -0.5 * g) *
                       std::polar(std::sqrt(rule.weights[l]), 0.5 * xl * (s + eps));
      a(j, l) = row * col / denom;
    }
  }
  return a;
}

Eigen::MatrixXcd kernel_matrix(const TauParams& p, const QuadratureRule& rule) {
  const Eigen::MatrixXcd a = assemble_a_matrix(p, rule);
  const double c = std::exp(0.5 * p.epsilon * p.epsilon + p.s * p.epsilon) *
                   std::sin(pi * p.gamma) / (2.0 * pi * pi);
  return c * (a * a.transpose());
}

TauResult tau_eval(const TauParams& p, const QuadratureRule& rule) {
  const Eigen::MatrixXcd h = kernel_matrix(p, rule);
  const double max_abs = h.cwiseAbs().maxCoeff();
  const double max_imag = h.imag().cwiseAbs().maxCoeff();
  TauResult r;
  r.max_rel_imag = (max_abs > 0.0) ? max_imag / max_abs : 0.0;
  if (r.max_rel_imag > 1e-10)
    throw numerical_error("tau: kernel imaginary part " + std::to_string(r.max_rel_imag) +
                          " relative exceeds 1e-10 (branch/contour bug)");

  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(p.n, p.n) - h.real();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(d);
  int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
  double log_abs = 0.0;
  for (int i = 0; i < p.n; ++i) {
    const double u = lu.matrixLU()(i, i);
    if (u == 0.0) {
      r.sign = 0;
      r.log_abs = -std::numeric_limits<double>::infinity();
      r.value = 0.0;
      return r;
    }
    if (u < 0.0) sign = -sign;
    log_abs += std::log(std::abs(u));
  }
  r.sign = sign;
  r.log_abs = log_abs;
  r.value = sign * std::exp(log_abs);
  return r;
}

TauResult tau_eval(const TauParams& p) {
  p.validate();
  return tau_eval(p, gauss_hermite(2 * p.n, 0.5));
}

double tau(const TauParams& p) { return tau_eval(p).value; }

TauSeries tau_scan(double gamma, int n, double s_min, double s_max, double step, int threads) {
  if (!(s_min < s_max) || !(step > 0.0)) throw std::invalid_argument("tau_scan: bad grid");
  TauSeries series;
  series.gamma = gamma;
  series.n = n;
  for (double s = s_min; s <= s_max + 0.5 * step; s += step) series.s_grid.push_back(s);
  const size_t count = series.s_grid.size();
  series.tau_values.resize(count);
  series.atan_tau.resize(count);

  const QuadratureRule rule = gauss_hermite(2 * n, 0.5);
  const int workers = std::max(1, threads);
  auto run_range = [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      TauResult r = tau_eval(TauParams::with_default_epsilon(series.s_grid[i], gamma, n), rule);
      series.tau_values[i] = r.value;
      series.atan_tau[i] = std::atan(r.value);
    }
  };
  if (workers == 1) {
    run_range(0, count);
  } else {
    std::vector<std::future<void>> jobs;
    const size_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const size_t lo = std::min(count, w * chunk);
      const size_t hi = std::min(count, lo + chunk);
      if (lo < hi) jobs.push_back(std::async(std::launch::async, run_range, lo, hi));
    }
    for (auto& j : jobs) j.get();
  }

  for (size_t i = 0; i + 1 < count; ++i) {
    const double a = series.tau_values[i], b = series.tau_values[i + 1];
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0))
      series.brackets.emplace_back(series.s_grid[i], series.s_grid[i + 1]);
  }
  return series;
}

double refine_tau_zero(double gamma, int n, std::pair<double, double> bracket) {
  const QuadratureRule rule = gauss_hermite(2 * n, 0.5);
  auto f = [&](double s) {
    return tau_eval(TauParams::with_default_epsilon(s, gamma, n), rule).value;
  };
  return bisect(f, bracket.first, bracket.second, 1e-8);
}

NormBound norm_bound(double s, double gamma) {
  if (!(s < 0.0)) throw std::invalid_argument("norm_bound: requires s < 0");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("norm_bound: gamma in (0,1)");
  NormBound b;
  const double decay = std::exp(-0.5 * s * s);
  b.exact = std::sin(pi * gamma) / pi * std::sqrt(2.0 * pi) * decay / std::pow(-s, 1.0 + gamma);
  const double c = std::sqrt(2.0 / pi);
  b.relaxed = (s >= -1.0) ? c * decay / (s * s) : c * decay / (-s);
  return b;
}

double pole_free_threshold() {
  auto f = [](double s) { return std::sqrt(2.0 / pi) * std::exp(-0.5 * s * s) / (s * s) - 1.0; };
  return bisect(f, -1.0, -1e-3, 1e-10);
}

double operator_norm_estimate(const TauParams& p) {
  const Eigen::MatrixXcd h = kernel_matrix(p, gauss_hermite(2 * p.n, 0.5));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(h.real());
  return svd.singularValues()(0);
}

}  // namespace p4
