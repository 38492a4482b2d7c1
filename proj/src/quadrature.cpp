#include "p4/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace p4 {
namespace {

// Orthonormal Hermite recurrence (weight exp(-x^2)):
//   h_{j+1}(x) = x sqrt(2/(j+1)) h_j(x) - sqrt(j/(j+1)) h_{j-1}(x),
// h'_m(x) = sqrt(2m) h_{m-1}(x). Values are carried with a power-of-two
// rescale so the recurrence survives the e^{x^2/2} growth at any m.
struct HermitePair {
  double hm;       // rescaled h_m(x)
  double hm1;      // rescaled h_{m-1}(x)
  double log_rescale;  // natural log of the factor divided out
};

HermitePair orthonormal_hermite(int m, double x) {
  constexpr double kBig = 1e140;
  constexpr double kShrink = 1e-140;
  double pjm1 = 0.0;
  double pj = 0.75112554446494248286;  // pi^{-1/4}
  double log_rescale = 0.0;
  for (int j = 0; j < m; ++j) {
    double pj1 = x * std::sqrt(2.0 / (j + 1)) * pj - std::sqrt(double(j) / (j + 1)) * pjm1;
    pjm1 = pj;
    pj = pj1;
    if (std::abs(pj) > kBig) {
      pj *= kShrink;
      pjm1 *= kShrink;
      log_rescale += std::log(kBig);
    }
  }
  return {pj, pjm1, log_rescale};
}

// Christoffel number: w = 1 / sum_{j<m} h_j(x)^2, accumulated with the same
// rescale bookkeeping as the recurrence itself.
double log_christoffel_weight(int m, double x) {
  constexpr double kBig = 1e140;
  constexpr double kShrink = 1e-140;
  double pjm1 = 0.0;
  double pj = 0.75112554446494248286;
  double log_rescale = 0.0;
  double sum = pj * pj;
  for (int j = 0; j < m - 1; ++j) {
    double pj1 = x * std::sqrt(2.0 / (j + 1)) * pj - std::sqrt(double(j) / (j + 1)) * pjm1;
    pjm1 = pj;
    pj = pj1;
    if (std::abs(pj) > kBig) {
      pj *= kShrink;
      pjm1 *= kShrink;
      sum *= kShrink * kShrink;
      log_rescale += std::log(kBig);
    }
    sum += pj * pj;
  }
  return -(2.0 * log_rescale + std::log(sum));
}

}  // namespace

QuadratureRule gauss_hermite(int m, double lambda) {
  if (m < 1 || m > 2000) throw std::invalid_argument("gauss_hermite: order out of range [1, 2000]");
  if (!(lambda > 0.0)) throw std::invalid_argument("gauss_hermite: scale must be positive");

  // Jacobi matrix for monic Hermite: zero diagonal, off-diagonal sqrt(j/2).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(std::max(m - 1, 1));
  for (int j = 1; j < m; ++j) sub[j - 1] = std::sqrt(0.5 * j);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(std::max(m - 1, 0)), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numerical_error("gauss_hermite: tridiagonal eigensolver failed");

  std::vector<double> x(m);
  for (int i = 0; i < m; ++i) x[i] = es.eigenvalues()[i];
  std::sort(x.begin(), x.end());

  // Newton polish on the orthonormal recurrence.
  for (int i = 0; i < m; ++i) {
    double xi = x[i];
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      HermitePair h = orthonormal_hermite(m, xi);
      double deriv = std::sqrt(2.0 * m) * h.hm1;
      if (deriv == 0.0) break;
      double step = h.hm / deriv;
      xi -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(xi))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      HermitePair h = orthonormal_hermite(m, xi);
      throw numerical_error("gauss_hermite: Newton polish failed at root index " +
                            std::to_string(i) + ", residual " + std::to_string(h.hm));
    }
    x[i] = xi;
  }

  // Enforce the +/- symmetry exactly by mirroring the averaged halves.
  for (int i = 0; i < m / 2; ++i) {
    double v = 0.5 * (std::abs(x[i]) + std::abs(x[m - 1 - i]));
    x[i] = -v;
    x[m - 1 - i] = v;
  }
  if (m % 2 == 1) x[m / 2] = 0.0;

  QuadratureRule rule;
  rule.order = m;
  rule.scale = lambda;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const double sqrt_lambda = std::sqrt(lambda);
  for (int i = 0; i <= (m - 1) / 2; ++i) {
    double w = std::exp(log_christoffel_weight(m, x[i]) - 0.5 * std::log(lambda));
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
    rule.nodes[i] = x[i] / sqrt_lambda;
    rule.nodes[m - 1 - i] = x[m - 1 - i] / sqrt_lambda;
  }
  return rule;
}

double log_weight_explicit(int m, double lambda, double node) {
  // log of 2^{m-1} m! sqrt(pi) / (sqrt(lambda) m^2 H_{m-1}(sqrt(lambda) x)^2)
  // with H the physicists' Hermite polynomial, via a rescaled recurrence.
  const double u = std::sqrt(lambda) * node;
  constexpr double kBig = 1e140;
  constexpr double kShrink = 1e-140;
  double pjm1 = 0.0, pj = 1.0, log_rescale = 0.0;
  for (int j = 0; j < m - 1; ++j) {
    double pj1 = 2.0 * u * pj - 2.0 * j * pjm1;
    pjm1 = pj;
    pj = pj1;
    if (std::abs(pj) > kBig) {
      pj *= kShrink;
      pjm1 *= kShrink;
      log_rescale += std::log(kBig);
    }
  }
  const double log_abs_h = log_rescale + std::log(std::abs(pj));
  return (m - 1) * std::log(2.0) + std::lgamma(m + 1.0) + 0.5 * std::log(pi) -
         0.5 * std::log(lambda) - 2.0 * std::log(double(m)) - 2.0 * log_abs_h;
}

void QuadratureRule::validate() const {
  const int m = order;
  if (static_cast<int>(nodes.size()) != m || static_cast<int>(weights.size()) != m)
    throw numerical_error("QuadratureRule: size mismatch");
  for (int i = 0; i + 1 < m; ++i)
    if (!(nodes[i] < nodes[i + 1])) throw numerical_error("QuadratureRule: nodes not ascending");
  for (int i = 0; i < m; ++i) {
    if (std::abs(nodes[i] + nodes[m - 1 - i]) > 1e-13)
      throw numerical_error("QuadratureRule: nodes not symmetric");
    if (!(weights[i] > 0.0))
      throw numerical_error("QuadratureRule: nonpositive weight at index " + std::to_string(i));
    double rel = std::abs(weights[i] - weights[m - 1 - i]) / weights[i];
    if (rel > 1e-13) throw numerical_error("QuadratureRule: weights not symmetric");
  }
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += weights[i];
  const double expect = std::sqrt(pi / scale);
  if (std::abs(sum - expect) > 1e-12 * expect)
    throw numerical_error("QuadratureRule: weight sum violates sqrt(pi/scale)");
}

}  // namespace p4
