#pragma once

#include <type_traits>
#include <vector>

#include "p4/numerics.hpp"

namespace p4 {

/// Scaled Gauss-Hermite rule: sum_i f(x_i) w_i approximates
/// int f(x) exp(-scale * x^2) dx. Nodes are the roots of H_m(sqrt(scale) x),
/// ascending and symmetric about 0; weights are positive and symmetric.
struct QuadratureRule {
  int order = 0;
  double scale = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Checks the structural invariants (symmetry, positivity, weight sum).
  /// Throws numerical_error on violation. Weight positivity is only
  /// enforceable while the extreme weights ~exp(-2m) stay above the
  /// double-precision underflow threshold (order <~ 350).
  void validate() const;
};

/// Builds the m-point rule for weight exp(-lambda x^2). Nodes come from the
/// symmetric tridiagonal (Golub-Welsch) eigenproblem, polished by Newton on
/// the orthonormal recurrence; weights are Christoffel numbers computed with
/// running rescaling so the construction is stable up to m ~ 2000.
QuadratureRule gauss_hermite(int m, double lambda);

/// log of the classical explicit weight formula
///   w_i = 2^{m-1} m! sqrt(pi) / (sqrt(lambda) m^2 H_{m-1}(sqrt(lambda) x_i)^2),
/// evaluated entirely in log space. Used to cross-verify the Christoffel
/// weights; raw factorials overflow long before m = 150.
double log_weight_explicit(int m, double lambda, double node);

/// sum_i f(x_i) w_i with f : double -> complex (or double). Throws
/// numerical_error naming the node if f is non-finite there.
template <typename F>
auto integrate(const QuadratureRule& rule, F&& f) {
  using R = std::invoke_result_t<F, double>;
  R acc{};
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    R v = f(rule.nodes[i]);
    if constexpr (std::is_same_v<R, cplx>) {
      if (!finite(v))
        throw numerical_error("integrate: non-finite integrand at node " + std::to_string(i) +
                              " (x = " + std::to_string(rule.nodes[i]) + ")");
    } else {
      if (!std::isfinite(v))
        throw numerical_error("integrate: non-finite integrand at node " + std::to_string(i) +
                              " (x = " + std::to_string(rule.nodes[i]) + ")");
    }
    acc += v * rule.weights[i];
  }
  return acc;
}

}  // namespace p4
