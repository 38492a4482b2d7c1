#pragma once

#include <functional>
#include <vector>

#include "p4/numerics.hpp"

namespace p4 {

/// Complex moments nu_j = contour-int z^j w_k(z) dz of the contour weight
///   w_k(z) = z^{-k} e^{-k z / z0} (z / (z-1))^gamma
/// on a circle enclosing 0 and 1. `digits` is the working precision the
/// moments were computed at (16 = double); values are stored down-converted.
struct MomentSequence {
  double gamma = 0.0;
  int k = 0;
  double z0 = 1.0;
  int digits = 16;
  int resolution = 0;  // trapezoid points that passed the doubling certificate
  std::vector<cplx> values;  // nu_0 .. nu_{j_max}
};

struct ContourSpec {
  cplx center{0.5, 0.0};
  double radius = 2.5;
};

/// Monic polynomial sum c_m z^m with c_degree = 1 (stored in coeffs too).
/// Horner evaluation is the canonical one.
struct MonicPolynomial {
  int degree = 0;
  std::vector<cplx> coeffs;  // size degree+1, coeffs[degree] == 1

  cplx eval(cplx z) const;
  /// sum |c_m| |z|^m, the conditioning scale of eval at z.
  double eval_scale(cplx z) const;
};

/// Diagnostics attached to a pipeline-produced polynomial.
struct OrthoResult {
  MonicPolynomial poly;
  double gamma = 0.0;
  double z0 = 1.0;
  int k = 0;
  int digits = 16;
  int resolution = 0;
  /// max_j |contour-int pi_k z^j w_k dz| / max_j |nu_j| over j < k.
  double orthogonality_residual = 0.0;
};

/// w_k evaluated with the principal branch of Log(z/(z-1)); analytic on
/// C \ [0,1], -> 1 normalization at infinity built in. Throws on the cut.
cplx weight_w(cplx z, int k, double z0, double gamma);

/// Trapezoid moments on the circle with an M -> 2M doubling certificate
/// (each nu_j stable to 1e-11 relative, or to the working precision's
/// capability when digits > 16). digits = 0 picks a precision from k.
MomentSequence complex_moments(int k, double z0, double gamma, int j_max,
                               ContourSpec contour = {}, int M = 0, int digits = 0);

/// Hankel determinant det[nu_{i+j}]_{i,j<k} from stored moments (double
/// arithmetic; meant for small k where double is exact enough).
cplx hankel_det(const MomentSequence& moments, int k);

/// Solves the Hankel system for the monic orthogonal polynomial pi_k and
/// verifies the orthogonality residual < 1e-8 * max |nu| before returning.
/// The solve runs at `digits` working precision end to end (moments are not
/// down-converted in between); digits = 0 picks a preset from k.
OrthoResult monic_orthogonal(int k, double z0, double gamma, int digits = 0,
                             ContourSpec contour = {});

/// Planar moment int_C q(u) conj(u)^j |u|^{-2 gamma} e^{-N(|u|^2 - t u - t conj(u))} dA(u)
/// by angular trapezoid x radial Gauss-Legendre after the substitution
/// rho = sigma^{1/(2-2gamma)} that absorbs the |u|^{-2 gamma} singularity.
/// Resolutions double until two consecutive levels agree to 1e-7 relative.
cplx planar_moment(const std::function<cplx(cplx)>& q, int j, double gamma, double N,
                   double t);

/// Right-hand side of the planar<->contour identity:
///   pi Gamma(j - gamma + 1) / N^{j-gamma+1} * (1/2 pi i)
///     contour-int q(u) e^{N t u} (u - t)^{-(j+1)} (1 - t/u)^gamma du
/// on a circle enclosing 0 and t, principal branch off [0, t].
cplx contour_rhs(const std::function<cplx(cplx)>& q, int j, double gamma, double N,
                 double t);

/// Unfolds pi_k back to the lambda plane:
///   q_k(u) = (-1)^k t^k pi_k(1 - u/t),   p_n(lambda) = lambda^ell q_k(lambda^d),
/// n = k d + ell. Only exponents congruent to ell mod d appear.
MonicPolynomial unfold_polynomial(const MonicPolynomial& pik, double t, int d, int ell);

/// Residue-calculus closed form for gamma = 0:
///   nu_j = 2 pi i (-k/z0)^{k-1-j} / (k-1-j)!  for j <= k-1, else 0.
cplx moment_gamma0_oracle(int j, int k, double z0);

}  // namespace p4
