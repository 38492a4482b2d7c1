#pragma once

#include <vector>

#include "p4/geometry.hpp"
#include "p4/orthopoly.hpp"

namespace p4 {

/// All complex roots of one polynomial, with per-root residuals
/// |p(root)| / sum_m |c_m| |root|^m.
struct ZeroSet {
  int k = 0;
  double gamma = 0.0;
  double z0 = 1.0;
  std::vector<cplx> roots;
  std::vector<double> residuals;
  /// Groups of root indices closer than 1e-6 to each other (multiplicities).
  std::vector<std::vector<int>> clusters;
};

/// Companion-matrix eigenvalues (after a geometric-mean rescale of the
/// variable) polished by Newton on the Horner form. Designed for the reduced
/// polynomials (degree <= ~80).
ZeroSet polynomial_roots(const MonicPolynomial& p);

/// Roots of p_n(lambda) = lambda^ell q_k(lambda^d) from the roots of pi_k:
/// lambda = omega^m (t (1 - z_i))^{1/d} plus an ell-fold zero at the origin.
/// The d-fold rotational symmetry is exact by construction.
ZeroSet unfold_zero_set(const ZeroSet& zk, double t, int d, int ell);

struct DistanceStats {
  std::vector<double> distances;     // to the curve polyline, excluded roots skipped
  std::vector<double> phi_residual;  // |Re phi(root; r=1)| per used root
  std::vector<int> used;             // indices of roots outside the exclusion disk
  double max_distance = 0.0;
  double mean_distance = 0.0;
  /// Largest polyline distance among roots radially outside the curve (0 if none).
  double max_exterior_distance = 0.0;
};

/// Distances from the roots to a Gamma_{r=1} sample. Roots within
/// `exclusion_radius` of z = 1 are skipped (the local-parametrix disk).
DistanceStats zero_curve_distance(const ZeroSet& zs, const CurveSample& curve,
                                  double exclusion_radius = 0.2);

enum class CorrectedForm {
  re_phi,         // level of Re phi(z; 1) = log|z| - Re z + 1
  abs_z_minus_1,  // alternative reading: log|z| - |z - 1|
};

/// The O(log k / k)-corrected zero curve: level set of
///   LHS(z) = -(1/2+gamma) * log k / k
///            + (1/k) log( |z/(z-1)|^gamma * |zu| / |z-1| ),
/// traced radially at z0 = 1. Lies strictly inside Gamma_{r=1}. The log|z-1|
/// term empties the level set on rays near theta = 0, so the result is
/// sometimes an open arc (closed = false) skirting the excluded disk around
/// z = 1. The abs_z_minus_1 reading is exposed for comparison; it admits no
/// level set near the curve at these parameters. re_phi is the default.
CurveSample corrected_zero_curve(int k, double gamma, cplx zu_ratio, int M,
                                 CorrectedForm form = CorrectedForm::re_phi);

/// H / (Z/U) extraction from the expansions outside / inside Gamma_{r=1}:
///   exterior: pi_k(z) = z^k (1 - 1/z)^gamma (1 + H / (sqrt k (z-1)) + O(1/k))
///   interior: pi_k(z) = e^{k(z/z0 + ell_hat)} (-Z / (U (z-1) k^{1/2+gamma}) + O(1/k))
/// Estimates are averaged over the fixed sample set; the dispersion (RMS
/// deviation over samples) and the samples themselves are reported.
struct AsymptoticExtract {
  int k = 0;
  double scaling = 0.0;  // the double-scaling parameter of the instance
  cplx estimate;
  double dispersion = 0.0;
  std::vector<cplx> samples;
  std::vector<cplx> per_sample;
};

/// Default exterior samples: |z| = 1.6 at angles (2i+1) pi / 8.
std::vector<cplx> default_exterior_samples();
/// Default interior samples: x +- 0.05 i, x in {0.35, 0.42, 0.48, 0.55}.
std::vector<cplx> default_interior_samples();

AsymptoticExtract extract_H(const MonicPolynomial& pik, int k, double gamma, double z0,
                            const std::vector<cplx>& z_samples = default_exterior_samples());
AsymptoticExtract extract_ZU(const MonicPolynomial& pik, int k, double gamma, double z0,
                             const std::vector<cplx>& z_samples = default_interior_samples());

/// Relative error of the two-term reconstruction of pi_k at a point of the
/// intermediate region (inside Gamma_{r=1}, near it):
///   e^{k g}((z-1)/z)^gamma [ e^{k phi}(1 + H/(sqrt k (z-1)))
///                            - (Z/U) ((z-1)/z)^{-gamma} / ((z-1) k^{1/2+gamma}) ].
double omega1_reconstruction_error(const MonicPolynomial& pik, int k, double gamma, double z0,
                                   cplx z, cplx h_est, cplx zu_est);

}  // namespace p4
