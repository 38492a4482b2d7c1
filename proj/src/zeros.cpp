#include "p4/zeros.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace p4 {

ZeroSet polynomial_roots(const MonicPolynomial& p) {
  const int k = p.degree;
  if (k < 1) throw std::invalid_argument("polynomial_roots: degree must be >= 1");
  for (const cplx& c : p.coeffs)
    if (!finite(c)) throw std::invalid_argument("polynomial_roots: non-finite coefficient");

  // Rescale the variable by the geometric mean of the root moduli so the
  // companion matrix is well balanced: z = alpha y, alpha = |c_0|^{1/k}.
  double alpha = std::pow(std::max(std::abs(p.coeffs[0]), 1e-300), 1.0 / k);
  if (!(alpha > 1e-12) || !(alpha < 1e12)) alpha = 1.0;
  std::vector<cplx> b(k + 1);
  double ap = 1.0;  // alpha^{m-k} built downward
  for (int m = k; m >= 0; --m) {
    b[m] = p.coeffs[m] * ap;
    ap /= alpha;
  }

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(k, k);
  for (int i = 1; i < k; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < k; ++i) comp(i, k - 1) = -b[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success)
    throw numerical_error("polynomial_roots: companion eigensolver failed");

  ZeroSet zs;
  zs.k = k;
  zs.roots.resize(k);
  zs.residuals.resize(k);
  for (int i = 0; i < k; ++i) {
    cplx z = alpha * es.eigenvalues()[i];
    // Newton polish on the original coefficients.
    for (int it = 0; it < 50; ++it) {
      cplx v = p.coeffs[k], dv(0.0, 0.0);
      for (int m = k - 1; m >= 0; --m) {
        dv = dv * z + v;
        v = v * z + p.coeffs[m];
      }
      if (dv == cplx(0.0, 0.0)) break;
      const cplx step = v / dv;
      z -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    zs.roots[i] = z;
    const double scale = p.eval_scale(z);
    zs.residuals[i] = std::abs(p.eval(z)) / (scale > 0.0 ? scale : 1.0);
  }
  std::sort(zs.roots.begin(), zs.roots.end(), [](const cplx& a, const cplx& b2) {
    return (a.real() != b2.real()) ? a.real() < b2.real() : a.imag() < b2.imag();
  });
  // Multiplicity clusters: greedy grouping at 1e-6.
  std::vector<int> owner(k, -1);
  for (int i = 0; i < k; ++i) {
    if (owner[i] >= 0) continue;
    std::vector<int> group{i};
    for (int j2 = i + 1; j2 < k; ++j2)
      if (owner[j2] < 0 && std::abs(zs.roots[i] - zs.roots[j2]) < 1e-6) {
        owner[j2] = i;
        group.push_back(j2);
      }
    if (group.size() > 1) zs.clusters.push_back(std::move(group));
  }
  return zs;
}

ZeroSet unfold_zero_set(const ZeroSet& zk, double t, int d, int ell) {
  if (d < 1 || ell < 0 || ell >= d) throw std::invalid_argument("unfold_zero_set: bad (d, ell)");
  if (!(t > 0.0)) throw std::invalid_argument("unfold_zero_set: t must be positive");
  ZeroSet out;
  out.k = zk.k;
  out.gamma = zk.gamma;
  out.z0 = zk.z0;
  for (int m = 0; m < ell; ++m) {
    out.roots.push_back(cplx(0.0, 0.0));
    out.residuals.push_back(0.0);
  }
  for (size_t i = 0; i < zk.roots.size(); ++i) {
    const cplx u = t * (1.0 - zk.roots[i]);
    const cplx base = std::pow(u, 1.0 / d);
    for (int m = 0; m < d; ++m) {
      out.roots.push_back(std::polar(1.0, 2.0 * pi * m / d) * base);
      out.residuals.push_back(zk.residuals.empty() ? 0.0 : zk.residuals[i]);
    }
  }
  return out;
}

namespace {

double point_to_polyline(const cplx& pt, const std::vector<cplx>& poly, bool closed) {
  double best = std::numeric_limits<double>::infinity();
  const size_t m = poly.size();
  const size_t segs = closed ? m : m - 1;
  for (size_t i = 0; i < segs; ++i) {
    const cplx a = poly[i];
    const cplx b = poly[(i + 1) % m];
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    double t = 0.0;
    if (len2 > 0.0) {
      t = ((pt - a) * std::conj(ab)).real() / len2;
      t = std::clamp(t, 0.0, 1.0);
    }
    best = std::min(best, std::abs(pt - (a + t * ab)));
  }
  return best;
}

}  // namespace

DistanceStats zero_curve_distance(const ZeroSet& zs, const CurveSample& curve,
                                  double exclusion_radius) {
  if (curve.points.empty()) throw std::invalid_argument("zero_curve_distance: empty curve");
  DistanceStats stats;
  double sum = 0.0;
  for (size_t i = 0; i < zs.roots.size(); ++i) {
    const cplx z = zs.roots[i];
    if (std::abs(z - 1.0) < exclusion_radius) continue;
    const double dist = point_to_polyline(z, curve.points, curve.closed);
    stats.used.push_back(static_cast<int>(i));
    stats.distances.push_back(dist);
    stats.phi_residual.push_back(std::abs(phi_on_side(z, 1.0, zs.z0, Side::interior).real()));
    stats.max_distance = std::max(stats.max_distance, dist);
    sum += dist;
    const double rho_curve = gamma_r_radius(std::arg(z), 1.0, zs.z0);
    if (std::abs(z) > rho_curve)
      stats.max_exterior_distance = std::max(stats.max_exterior_distance, dist);
  }
  if (!stats.distances.empty()) stats.mean_distance = sum / stats.distances.size();
  return stats;
}

namespace {

double corrected_level(const cplx& z, int k, double gamma, double abs_zu, CorrectedForm form) {
  const double lhs = (form == CorrectedForm::re_phi)
                         ? std::log(std::abs(z)) - z.real() + 1.0
                         : std::log(std::abs(z)) - std::abs(z - 1.0);  // abs_z_minus_1
  // The log k prefactor carries the same k-power 1/2+gamma as the interior
  // expansion; root-fit experiments separate it cleanly from the (1+gamma)/2
  // alternative (mean root distance 1e-3 vs 1e-2 at k = 60).
  const double rhs = -(0.5 + gamma) * std::log(double(k)) / k +
                     (gamma * std::log(std::abs(z / (z - 1.0))) +
                      std::log(abs_zu / std::abs(z - 1.0))) / k;
  return lhs - rhs;
}

}  // namespace

CurveSample corrected_zero_curve(int k, double gamma, cplx zu_ratio, int M, CorrectedForm form) {
  if (k < 10) throw std::invalid_argument("corrected_zero_curve: k must be >= 10");
  if (M < 16) throw std::invalid_argument("corrected_zero_curve: M must be >= 16");
  const double abs_zu = std::abs(zu_ratio);
  if (!(abs_zu > 0.0)) throw std::invalid_argument("corrected_zero_curve: zu_ratio must be nonzero");

  // The (1/k) log(1/|z-1|) term pushes the level set off a neighbourhood of
  // z = 1, so rays close to theta = 0 may have no crossing: the corrected
  // curve is generally an open arc avoiding the local-parametrix disk.
  std::vector<cplx> pts(M);
  std::vector<double> res(M);
  std::vector<bool> found(M, false);
  int n_found = 0;
  for (int j = 0; j < M; ++j) {
    const double theta = -pi + 2.0 * pi * j / M;
    const double rho_outer = gamma_r_radius(theta, 1.0, 1.0);
    auto level = [&](double rho) {
      return corrected_level(std::polar(rho, theta), k, gamma, abs_zu, form);
    };
    const int scan = 400;
    double hi = rho_outer * (1.0 - 1e-12);
    double prev_rho = hi, prev_val = level(hi);
    for (int s = 1; s <= scan; ++s) {
      const double rho = hi * std::exp(-8.0 * double(s) / scan);
      const double val = level(rho);
      if ((val > 0.0) != (prev_val > 0.0)) {
        const double root = bisect(level, std::min(rho, prev_rho), std::max(rho, prev_rho), 1e-14);
        pts[j] = std::polar(root, theta);
        res[j] = std::abs(level(root));
        found[j] = true;
        ++n_found;
        if (!(root < rho_outer))
          throw numerical_error("corrected_zero_curve: point not inside Gamma_{r=1}");
        break;
      }
      prev_rho = rho;
      prev_val = val;
    }
  }
  if (n_found < M / 2)
    throw numerical_error("corrected_zero_curve: level set empty on most rays (k = " +
                          std::to_string(k) + " too small for the correction)");

  CurveSample curve;
  curve.components = 1;
  curve.closed = (n_found == M);
  if (curve.closed) {
    curve.points = std::move(pts);
    curve.residuals = std::move(res);
    return curve;
  }
  // Rotate so the arc starts right after the longest circular gap; the points
  // then form one contiguous open polyline.
  int gap_end = 0, best_len = -1;
  for (int j = 0; j < M; ++j) {
    if (found[j]) continue;
    int len = 0, i = j;
    while (!found[i % M] && len < M) {
      ++len;
      ++i;
    }
    if (len > best_len) {
      best_len = len;
      gap_end = i % M;
    }
  }
  for (int c = 0; c < M; ++c) {
    const int j = (gap_end + c) % M;
    if (!found[j]) continue;
    curve.points.push_back(pts[j]);
    curve.residuals.push_back(res[j]);
  }
  return curve;
}

std::vector<cplx> default_exterior_samples() {
  std::vector<cplx> out;
  for (int i = 0; i < 8; ++i) out.push_back(std::polar(1.6, (2.0 * i + 1.0) * pi / 8.0));
  return out;
}

std::vector<cplx> default_interior_samples() {
  std::vector<cplx> out;
  for (double x : {0.35, 0.42, 0.48, 0.55}) {
    out.emplace_back(x, 0.05);
    out.emplace_back(x, -0.05);
  }
  return out;
}

namespace {

AsymptoticExtract summarize(int k, std::vector<cplx> samples, std::vector<cplx> values) {
  AsymptoticExtract ex;
  ex.k = k;
  ex.samples = std::move(samples);
  ex.per_sample = std::move(values);
  cplx mean(0.0, 0.0);
  for (const cplx& v : ex.per_sample) mean += v;
  mean /= double(ex.per_sample.size());
  double var = 0.0;
  for (const cplx& v : ex.per_sample) var += std::norm(v - mean);
  ex.estimate = mean;
  ex.dispersion = std::sqrt(var / ex.per_sample.size());
  return ex;
}

}  // namespace

AsymptoticExtract extract_H(const MonicPolynomial& pik, int k, double gamma, double z0,
                            const std::vector<cplx>& z_samples) {
  if (z_samples.empty()) throw std::invalid_argument("extract_H: no samples");
  std::vector<cplx> values;
  values.reserve(z_samples.size());
  for (const cplx& z : z_samples) {
    if (side_of_gamma_r(z, 1.0, z0) != Side::exterior)
      throw std::invalid_argument("extract_H: sample not exterior to Gamma_{r=1}");
    // pi_k(z) z^{-k} (1 - 1/z)^{-gamma} - 1, evaluated via Horner in 1/z to
    // keep |z|^k out of the picture.
    cplx s(1.0, 0.0);  // sum c_m z^{m-k}, from the leading 1 downward
    const cplx zinv = 1.0 / z;
    cplx zp = zinv;
    for (int m = k - 1; m >= 0; --m) {
      s += pik.coeffs[m] * zp;
      zp *= zinv;
    }
    const cplx norm = std::exp(-gamma * std::log(1.0 - zinv));
    values.push_back(std::sqrt(double(k)) * (z - 1.0) * (s * norm - 1.0));
  }
  AsymptoticExtract ex = summarize(k, z_samples, std::move(values));
  return ex;
}

AsymptoticExtract extract_ZU(const MonicPolynomial& pik, int k, double gamma, double z0,
                             const std::vector<cplx>& z_samples) {
  if (z_samples.empty()) throw std::invalid_argument("extract_ZU: no samples");
  std::vector<cplx> values;
  values.reserve(z_samples.size());
  for (const cplx& z : z_samples) {
    if (side_of_gamma_r(z, 1.0, z0) != Side::interior)
      throw std::invalid_argument("extract_ZU: sample not interior to Gamma_{r=1}");
    const cplx g = g_on_side(z, 1.0, z0, Side::interior);  // z/z0 + ell_hat
    const cplx val = -pik.eval(z) * std::exp(-double(k) * g) * (z - 1.0) *
                     std::pow(double(k), 0.5 + gamma);
    values.push_back(val);
  }
  return summarize(k, z_samples, std::move(values));
}

double omega1_reconstruction_error(const MonicPolynomial& pik, int k, double gamma, double z0,
                                   cplx z, cplx h_est, cplx zu_est) {
  const cplx g = g_on_side(z, 1.0, z0, Side::interior);
  const cplx ph = phi_on_side(z, 1.0, z0, Side::interior);
  const cplx ratio = std::exp(gamma * std::log((z - 1.0) / z));
  const cplx term1 = std::exp(double(k) * ph) * (1.0 + h_est / (std::sqrt(double(k)) * (z - 1.0)));
  // The subleading term carries k^{-(1/2+gamma)}, matching the interior
  // expansion it must reduce to when e^{k phi} dies off.
  const cplx term2 = zu_est / ((z - 1.0) * std::pow(double(k), 0.5 + gamma)) / ratio;
  const cplx model = std::exp(double(k) * g) * ratio * (term1 - term2);
  const cplx actual = pik.eval(z);
  return std::abs(model - actual) / std::abs(actual);
}

}  // namespace p4
