#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "p4/numerics.hpp"
#include "p4/quadrature.hpp"

namespace p4 {

/// Parameters of one tau evaluation: tau(s, gamma, n) = det(Id - F_n) where
/// F_n is the Nystrom discretization of the kernel on R_- built from a
/// 2n-point Gauss-Hermite rule with scale 1/2. epsilon shifts the vertical
/// contour i*R to i*R + epsilon; the determinant is independent of epsilon
/// (Cauchy), the default max(0, -s) keeps the contours apart.
struct TauParams {
  double s = 0.0;
  double gamma = 0.0;
  int n = 1;
  double epsilon = 0.0;

  static TauParams with_default_epsilon(double s, double gamma, int n) {
    return TauParams{s, gamma, n, std::max(0.0, -s)};
  }
  void validate() const;
};

struct TauResult {
  double value = 1.0;    // sign * exp(log_abs); +-inf if it overflows
  double log_abs = 0.0;  // log |tau|
  int sign = 1;          // sign of tau (0 only if the LU hits an exact zero)
  double max_rel_imag = 0.0;  // max |Im| / max |entry| of the discretized kernel
};

/// The n x 2n matrix A with entries
///   A(j,l) = |x_j|^{g/2} sqrt(w_j) e^{-s x_j / 2}
///            (i x_l + eps)^{-g/2} e^{i x_l (s+eps)/2} sqrt(w_l) / (x_j - eps - i x_l),
/// x_j over the n negative nodes, x_l over all 2n nodes, principal powers.
Eigen::MatrixXcd assemble_a_matrix(const TauParams& p, const QuadratureRule& rule);

/// c * A A^T (plain transpose) with c = e^{eps^2/2 + s eps} sin(pi gamma) / (2 pi^2).
/// This is the Nystrom matrix whose determinant complement gives tau.
Eigen::MatrixXcd kernel_matrix(const TauParams& p, const QuadratureRule& rule);

/// tau(s, gamma, n) = det(Id_n - kernel). The kernel is provably real; the
/// imaginary parts are asserted below 1e-10 relative and discarded, and the
/// determinant is accumulated as log|det| plus sign so deep scans cannot
/// underflow. The one-argument form builds the 2n-node rule itself.
TauResult tau_eval(const TauParams& p, const QuadratureRule& rule);
TauResult tau_eval(const TauParams& p);
double tau(const TauParams& p);

struct TauSeries {
  double gamma = 0.0;
  int n = 0;
  std::vector<double> s_grid;
  std::vector<double> tau_values;
  std::vector<double> atan_tau;
  std::vector<std::pair<double, double>> brackets;  // sign changes (s_lo, s_hi)
};

/// tau on an ascending grid with the default epsilon policy. Grid points are
/// distributed over `threads` workers and collected in index order, so the
/// output is deterministic for any parallelism degree.
TauSeries tau_scan(double gamma, int n, double s_min, double s_max, double step,
                   int threads = 1);

/// Bisection of the tau sign inside a bracket from tau_scan down to width 1e-8.
double refine_tau_zero(double gamma, int n, std::pair<double, double> bracket);

/// Operator-norm bound of the kernel for s < 0 (the estimate chain ending in
///   |||F||| <= (sin(pi gamma)/pi) sqrt(2 pi) e^{-s^2/2} / |s|^{1+gamma},
/// relaxed piecewise to (sqrt2/sqrt pi) e^{-s^2/2} / s^2 on [-1,0) and
/// (sqrt2/sqrt pi) e^{-s^2/2} / |s| for s < -1).
struct NormBound {
  double exact = 0.0;
  double relaxed = 0.0;
};
NormBound norm_bound(double s, double gamma);

/// Root s0 of (sqrt2/sqrt pi) e^{-s^2/2} / s^2 = 1 on (-1, 0), to 1e-10.
/// Below s0 the bound certifies tau != 0 (pole-free Painleve IV solution).
double pole_free_threshold();

/// Largest singular value of the discretized kernel matrix; must sit below
/// norm_bound(s, gamma).relaxed for s < 0.
double operator_norm_estimate(const TauParams& p);

}  // namespace p4
