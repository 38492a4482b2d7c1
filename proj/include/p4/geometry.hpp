#pragma once

#include <vector>

#include "p4/numerics.hpp"

namespace p4 {

/// One orthogonal-polynomial instance of the planar model with potential
/// |lambda|^{2d} - t (lambda^d + conj(lambda)^d) at temperature T.
struct ModelParams {
  int d = 2;       // symmetry order, >= 2
  int ell = 0;     // residue class of the degree, 0 <= ell <= d-1
  double t = 1.0;  // potential strength, > 0
  double T = 1.0;  // temperature, > 0
  int k = 1;       // reduced degree, n = k d + ell

  int n() const { return k * d + ell; }
  double N() const { return (n() - ell) / T; }
  double gamma() const { return double(d - ell - 1) / d; }
  double t_c() const { return std::sqrt(T / d); }
  double z0() const { return t_c() * t_c() / (t * t); }
  /// Double-scaling parameter sqrt(k) (t^2/t_c^2 - 1).
  double scaling() const { return std::sqrt(double(k)) * (t * t / (t_c() * t_c()) - 1.0); }
  void validate() const;
};

/// Ordered discretization of an implicit level curve. For multi-component
/// curves the points of each component are contiguous
/// (points.size() == components * points per component).
struct CurveSample {
  std::vector<cplx> points;
  std::vector<double> residuals;  // |defining equation| at each point
  std::vector<cplx> density;      // d nu / d s where applicable, else empty
  bool closed = true;
  int components = 1;
};

/// phi_hat(lambda) = log(t_c - lambda^d) + lambda^d / t_c - log t_c,
/// principal log. Throws if t_c - lambda^d lands on the cut (-inf, 0].
cplx phi_hat(cplx lambda, double t_c, int d);

/// The phase function of the g-function for the contour family Gamma_r,
///   interior:  log z - z/z0 - log r + r/z0,
///   exterior:  z/z0 - log z + log r - r/z0,
/// and g itself (z/z0 + ell_hat inside, log z outside, ell_hat = log r - r/z0).
enum class Side { interior, exterior };
cplx g_function(cplx z, double r, double z0);
cplx phi(cplx z, double r, double z0);
cplx g_on_side(cplx z, double r, double z0, Side side);
cplx phi_on_side(cplx z, double r, double z0, Side side);
Side side_of_gamma_r(cplx z, double r, double z0, double tol = 1e-12);

/// Gamma_r = { Re phi(z; r) = 0, |z| <= z0 } traced radially (the curves are
/// star-shaped about the origin). Fills analytic-tangent densities
/// phi'(z) z'(theta) / (2 pi i |z'|), phi'(z) = 1/z - 1/z0.
CurveSample curve_gamma_r(double r, double z0, int M);

/// The Szego curve |z e^{1-z}| = 1, |z| <= 1: Gamma_r at r = z0 = 1.
CurveSample szego_curve_z(int M);

/// Solves the radial equation log rho - rho cos(theta)/z0 = log r - r/z0
/// for rho in (0, z0]. Exposed for interior tests.
double gamma_r_radius(double theta, double r, double z0);

/// Pullback of a z-plane curve under z = 1 - lambda^d / t_c: the d sheets
/// lambda = omega^m (t_c (1 - z))^{1/d}. Residuals are |Re phi_hat(lambda)|.
CurveSample unfold_curve(const CurveSample& zcurve, double t_c, int d);

/// The lemniscate |lambda^d - t| = t_c bounding the eigenvalue support:
/// one component when t <= t_c, d components when t > t_c.
CurveSample lemniscate_boundary(double t, double t_c, int d, int M);

/// Total mass (1/2 pi i) contour-int (1/z - 1) dz over a closed z-plane
/// sample of the critical curve. Chords of 1/z are integrated in closed form
/// (principal log ratios), which makes the result exact up to roundoff even
/// though the Szego curve has a corner at z = 1.
cplx nu_hat_mass(const CurveSample& zcurve);

/// Same mass computed in the lambda plane: (1/2 pi i d) contour-int d(phi_hat)
/// over all d sheets, with branch continuity tracked chord by chord.
cplx nu_hat_mass_lambda(const CurveSample& lambda_curve, double t_c, int d);

/// The analytic continuation phi(z; z0) = (z-1)/z0 - log z from the exterior,
/// its critical value at z = z0, and the normal form of Proposition-style
/// conformal coordinates: phi = zeta^2/2 + A zeta with zeta(1; z0) = 0,
/// zeta'(1; z0) > 0, A(1) = 0.
cplx phi_cont(cplx z, double z0);
double phi_critical(double z0);
/// A(z0) = -sign(z0 - 1) sqrt(-2 phi_critical(z0)); series -delta + (2/3) delta^2 + ...
double a_of(double z0);
cplx conformal_zeta(cplx z, double z0);

/// sqrt(k) (t^2 / t_c^2 - 1). To first order this equals sqrt(k) * A(z0) at
/// z0 = t_c^2/t^2 (A ~ -delta and S ~ -sqrt(k) delta agree with the same sign).
double scaling_parameter(int k, double t, double t_c);

}  // namespace p4
