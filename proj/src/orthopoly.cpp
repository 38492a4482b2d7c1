#include "p4/orthopoly.hpp"

#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <algorithm>
#include <cmath>

#include "p4/linalg.hpp"
#include "p4/quadrature.hpp"

namespace p4 {
namespace {

namespace bmp = boost::multiprecision;
using C50 = bmp::cpp_complex_50;
using C100 = bmp::cpp_complex_100;
using C200 = bmp::cpp_complex<200>;
using C300 = bmp::cpp_complex<300>;

template <typename C>
struct ctraits {
  using real = typename C::value_type;
  static constexpr int digits10 = std::numeric_limits<real>::digits10;
};
template <>
struct ctraits<cplx> {
  using real = double;
  static constexpr int digits10 = 16;
};

template <typename C>
double to_double(const typename ctraits<C>::real& x) {
  return static_cast<double>(x);
}

template <typename C>
cplx downconvert(const C& z) {
  return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

// w_k(z) = exp(-k log z - k z / z0 + gamma Log(z/(z-1))), principal branches.
// For integer k the z^{-k} factor is single-valued, so the principal log is
// safe even where the circle crosses the negative real axis.
template <typename C>
C weight_w_impl(const C& z, int k, const typename ctraits<C>::real& z0,
                const typename ctraits<C>::real& gamma) {
  using std::exp;
  using std::log;
  using R = typename ctraits<C>::real;
  const C one(R(1), R(0));
  return exp(C(R(-k), R(0)) * log(z) - (R(k) / z0) * z + C(gamma, R(0)) * log(z / (z - one)));
}

// One trapezoid pass: nu_j = sum_i z_i^j w(z_i) dz_i for j = 0..j_max, plus
// the positive majorants sum |z^j w dz| used by the stagnation certificate.
template <typename C>
void trapezoid_pass(int k, double z0_d, double gamma_d, int j_max, const ContourSpec& cs,
                    int M, std::vector<C>& nu, std::vector<typename ctraits<C>::real>& majorant) {
  using R = typename ctraits<C>::real;
  using std::abs;
  using std::cos;
  using std::sin;
  const R pi_r = boost::math::constants::pi<R>();
  const R z0(z0_d), gamma(gamma_d), radius(cs.radius);
  const C center(R(cs.center.real()), R(cs.center.imag()));
  nu.assign(j_max + 1, C(R(0), R(0)));
  majorant.assign(j_max + 1, R(0));
  for (int i = 0; i < M; ++i) {
    const R theta = (R(2) * pi_r * R(i)) / R(M);
    const C e(cos(theta), sin(theta));
    const C z = center + radius * e;
    const C dz = C(R(0), R(1)) * radius * e * (R(2) * pi_r / R(M));
    const C f = weight_w_impl<C>(z, k, z0, gamma) * dz;
    const R af = abs(f);
    const R az = abs(z);
    C zp(R(1), R(0));
    R azp(1);
    for (int j = 0; j <= j_max; ++j) {
      nu[j] += zp * f;
      majorant[j] += azp * af;
      zp *= z;
      azp *= az;
    }
  }
}

int preset_digits(int requested, int k) {
  int need = requested;
  if (need <= 0) need = 30 + 2 * k;  // covers the e^{~3.7k} trapezoid cancellation
  if (need <= 16) return 16;
  if (need <= 50) return 50;
  if (need <= 100) return 100;
  if (need <= 200) return 200;
  if (need <= 300) return 300;
  throw std::invalid_argument("orthopoly: requested precision above the 300-digit preset");
}

template <typename C>
struct MomentData {
  std::vector<C> nu;
  int resolution = 0;
};

template <typename C>
MomentData<C> moments_certified(int k, double z0, double gamma, int j_max,
                                const ContourSpec& cs, int M0) {
  using R = typename ctraits<C>::real;
  using std::abs;
  if (!(cs.radius > 0.0) || std::abs(cs.center - cplx(0.0, 0.0)) >= cs.radius ||
      std::abs(cs.center - cplx(1.0, 0.0)) >= cs.radius)
    throw std::invalid_argument("complex_moments: contour must enclose 0 and 1");
  const int digits = ctraits<C>::digits10;
  const double tol = (digits <= 16) ? 1e-11 : std::pow(10.0, -(digits - 25.0));
  // Moments equal to zero (or dwarfed by the cancellation in the trapezoid
  // sum) can only be pinned to roundoff of the majorant.
  const R floor_scale = pow(R(10), R(-(std::max(digits - 4, 10))));

  int M = std::max(64, M0);
  std::vector<C> nu_prev;
  std::vector<R> maj_prev;
  trapezoid_pass<C>(k, z0, gamma, j_max, cs, M, nu_prev, maj_prev);
  for (int pass = 0; pass < 7; ++pass) {
    std::vector<C> nu;
    std::vector<R> maj;
    trapezoid_pass<C>(k, z0, gamma, j_max, cs, 2 * M, nu, maj);
    bool ok = true;
    for (int j = 0; j <= j_max && ok; ++j) {
      const R delta = abs(nu[j] - nu_prev[j]);
      if (delta > R(tol) * abs(nu[j]) && delta > floor_scale * maj[j]) ok = false;
    }
    M *= 2;
    nu_prev = std::move(nu);
    maj_prev = std::move(maj);
    if (ok) return {std::move(nu_prev), M};
  }
  throw numerical_error("complex_moments: doubling certificate failed to stabilize");
}

template <typename C>
OrthoResult solve_orthogonal(int k, double z0, double gamma, const ContourSpec& cs) {
  using R = typename ctraits<C>::real;
  using std::abs;
  MomentData<C> md = moments_certified<C>(k, z0, gamma, 2 * k - 1, cs, 1024);
  const auto& nu = md.nu;

  // Normalize by the largest modulus: the raw moments span ~e^{2k} orders.
  R scale(0);
  for (const C& v : nu) scale = std::max(scale, abs(v));
  if (!(scale > 0)) throw numerical_error("monic_orthogonal: vanishing moment scale");

  DenseMatrix<C> h(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) h(i, j) = nu[i + j] / scale;
  std::vector<int> perm;
  auto mag = [](const C& v) { return abs(v); };
  DenseMatrix<C> lu = h;
  if (lu_factor(lu, perm, mag) == 0)
    throw numerical_error(
        "monic_orthogonal: Hankel solve hit a zero pivot; raise the working "
        "precision or reduce k");
  std::vector<C> rhs(k);
  for (int i = 0; i < k; ++i) rhs[i] = -nu[i + k] / scale;
  lu_solve(lu, perm, rhs);

  OrthoResult out;
  out.gamma = gamma;
  out.z0 = z0;
  out.k = k;
  out.digits = ctraits<C>::digits10;
  out.resolution = md.resolution;
  out.poly.degree = k;
  out.poly.coeffs.resize(k + 1);
  for (int m = 0; m < k; ++m) out.poly.coeffs[m] = downconvert(rhs[m]);
  out.poly.coeffs[k] = cplx(1.0, 0.0);

  // Independent orthogonality certificate: re-quadrature of
  // contour-int pi_k(z) z^j w_k(z) dz at the certified resolution, with the
  // polynomial evaluated by Horner in working precision.
  {
    using std::cos;
    using std::sin;
    const R pi_r = boost::math::constants::pi<R>();
    const R z0_r(z0), gamma_r(gamma), radius(cs.radius);
    const C center(R(cs.center.real()), R(cs.center.imag()));
    const int M = md.resolution;
    std::vector<C> res(k, C(R(0), R(0)));
    for (int i = 0; i < M; ++i) {
      const R theta = (R(2) * pi_r * R(i)) / R(M);
      const C e(cos(theta), sin(theta));
      const C z = center + radius * e;
      const C dz = C(R(0), R(1)) * radius * e * (R(2) * pi_r / R(M));
      C p(R(1), R(0));  // Horner from the leading 1
      for (int m = k - 1; m >= 0; --m) p = p * z + rhs[m];
      const C f = weight_w_impl<C>(z, k, z0_r, gamma_r) * dz;
      C zp(R(1), R(0));
      for (int j = 0; j < k; ++j) {
        res[j] += p * zp * f;
        zp *= z;
      }
    }
    R worst(0);
    for (int j = 0; j < k; ++j) worst = std::max(worst, abs(res[j]));
    out.orthogonality_residual = to_double<C>(worst / scale);
  }
  if (!(out.orthogonality_residual < 1e-8))
    throw numerical_error(
        "monic_orthogonal: orthogonality residual " +
        std::to_string(out.orthogonality_residual) +
        " exceeds 1e-8 of the moment scale; raise the working precision");
  return out;
}

}  // namespace

cplx weight_w(cplx z, int k, double z0, double gamma) {
  if (z.imag() == 0.0 && z.real() >= 0.0 && z.real() <= 1.0)
    throw std::invalid_argument("weight_w: z on the cut [0,1]");
  return weight_w_impl<cplx>(z, k, z0, gamma);
}

MomentSequence complex_moments(int k, double z0, double gamma, int j_max, ContourSpec contour,
                               int M, int digits) {
  if (k < 0 || j_max < 0) throw std::invalid_argument("complex_moments: bad k or j_max");
  const int d = preset_digits(digits == 0 ? 16 : digits, k);
  MomentSequence seq;
  seq.gamma = gamma;
  seq.k = k;
  seq.z0 = z0;
  seq.digits = d;
  const int m0 = (M > 0) ? M : 1024;
  auto fill = [&](auto tag) {
    using C = decltype(tag);
    MomentData<C> md = moments_certified<C>(k, z0, gamma, j_max, contour, m0);
    seq.resolution = md.resolution;
    seq.values.resize(j_max + 1);
    for (int j = 0; j <= j_max; ++j) seq.values[j] = downconvert(md.nu[j]);
  };
  switch (d) {
    case 16: fill(cplx{}); break;
    case 50: fill(C50{}); break;
    case 100: fill(C100{}); break;
    case 200: fill(C200{}); break;
    default: fill(C300{}); break;
  }
  return seq;
}

cplx hankel_det(const MomentSequence& moments, int k) {
  if (static_cast<int>(moments.values.size()) < 2 * k - 1)
    throw std::invalid_argument("hankel_det: need moments up to 2k-2");
  double scale = 0.0;
  for (int i = 0; i < 2 * k - 1; ++i) scale = std::max(scale, std::abs(moments.values[i]));
  DenseMatrix<cplx> h(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) h(i, j) = moments.values[i + j] / scale;
  const cplx det_scaled = lu_det(h, [](const cplx& v) { return std::abs(v); });
  const cplx det = det_scaled * std::pow(scale, k);
  if (!(std::abs(det_scaled) > 1e-10))
    throw numerical_error("hankel_det: determinant vanishes to working precision");
  return det;
}

OrthoResult monic_orthogonal(int k, double z0, double gamma, int digits, ContourSpec contour) {
  if (k < 1) throw std::invalid_argument("monic_orthogonal: k must be >= 1");
  const int d = preset_digits(digits, k);
  switch (d) {
    case 16: return solve_orthogonal<cplx>(k, z0, gamma, contour);
    case 50: return solve_orthogonal<C50>(k, z0, gamma, contour);
    case 100: return solve_orthogonal<C100>(k, z0, gamma, contour);
    case 200: return solve_orthogonal<C200>(k, z0, gamma, contour);
    default: return solve_orthogonal<C300>(k, z0, gamma, contour);
  }
}

cplx MonicPolynomial::eval(cplx z) const {
  cplx p = coeffs.empty() ? cplx(1.0, 0.0) : coeffs[degree];
  for (int m = degree - 1; m >= 0; --m) p = p * z + coeffs[m];
  return p;
}

double MonicPolynomial::eval_scale(cplx z) const {
  const double az = std::abs(z);
  double acc = 0.0, zp = 1.0;
  for (int m = 0; m <= degree; ++m) {
    acc += std::abs(coeffs[m]) * zp;
    zp *= az;
  }
  return acc;
}

namespace {

// Gauss-Legendre rule on [-1, 1]: tridiagonal eigenvalues plus Christoffel
// weights from the orthonormal recurrence.
struct LegendreRule {
  std::vector<double> nodes, weights;
};

LegendreRule gauss_legendre(int m) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(std::max(m - 1, 1));
  for (int j = 1; j < m; ++j) sub[j - 1] = j / std::sqrt(4.0 * j * j - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(std::max(m - 1, 0)), Eigen::EigenvaluesOnly);
  LegendreRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) rule.nodes[i] = es.eigenvalues()[i];
  std::sort(rule.nodes.begin(), rule.nodes.end());
  for (int i = 0; i < m; ++i) {
    const double x = rule.nodes[i];
    double pjm1 = 0.0, pj = std::sqrt(0.5), sum = pj * pj;
    for (int j = 0; j < m - 1; ++j) {
      const double a = std::sqrt((2.0 * j + 1.0) * (2.0 * j + 3.0)) / (j + 1.0);
      const double b = (j > 0) ? (j / (j + 1.0)) * std::sqrt((2.0 * j + 3.0) / (2.0 * j - 1.0)) : 0.0;
      const double pj1 = a * x * pj - b * pjm1;
      pjm1 = pj;
      pj = pj1;
      sum += pj * pj;
    }
    rule.weights[i] = 1.0 / sum;
  }
  return rule;
}

// One planar quadrature pass at a given angular x radial resolution.
// Returns {value, absolute majorant}.
std::pair<cplx, double> planar_pass(const std::function<cplx(cplx)>& q, int j, double gamma,
                                    double N, double t, int m_theta, int m_rho) {
  const double p = 2.0 - 2.0 * gamma;  // rho = sigma^{1/p}
  const double rho_max = std::abs(t) + std::sqrt(80.0 / N) + 1.0;
  const double sigma_max = std::pow(rho_max, p);
  const LegendreRule rad = gauss_legendre(m_rho);
  cplx acc(0.0, 0.0);
  double maj = 0.0;
  for (int it = 0; it < m_theta; ++it) {
    const double theta = 2.0 * pi * it / m_theta;
    const double ct = std::cos(theta);
    const cplx eith = std::polar(1.0, theta);
    cplx inner(0.0, 0.0);
    double inner_abs = 0.0;
    for (int ir = 0; ir < m_rho; ++ir) {
      const double sigma = 0.5 * sigma_max * (rad.nodes[ir] + 1.0);
      const double w = 0.5 * sigma_max * rad.weights[ir];
      const double rho = std::pow(sigma, 1.0 / p);
      const double radial = std::pow(rho, j) * std::exp(-N * rho * rho + 2.0 * N * t * rho * ct);
      const cplx val = q(rho * eith) * radial;
      inner += val * w;
      inner_abs += std::abs(val) * w;
    }
    const cplx ang = std::polar(1.0, -j * theta) * (2.0 * pi / m_theta);
    acc += inner * ang;
    maj += inner_abs * (2.0 * pi / m_theta);
  }
  return {acc / p, maj / p};
}

}  // namespace

cplx planar_moment(const std::function<cplx(cplx)>& q, int j, double gamma, double N, double t) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("planar_moment: gamma must be in (0,1)");
  if (!(N > 0.0)) throw std::invalid_argument("planar_moment: N must be positive");
  int m_theta = 64, m_rho = 96;
  auto [prev, prev_maj] = planar_pass(q, j, gamma, N, t, m_theta, m_rho);
  for (int level = 0; level < 6; ++level) {
    m_theta *= 2;
    m_rho *= 2;
    auto [cur, maj] = planar_pass(q, j, gamma, N, t, m_theta, m_rho);
    const double delta = std::abs(cur - prev);
    if (delta <= 1e-7 * std::abs(cur) || std::abs(cur) <= 1e-11 * maj) return cur;
    prev = cur;
    prev_maj = maj;
  }
  throw numerical_error("planar_moment: resolution certificate failed");
}

cplx contour_rhs(const std::function<cplx(cplx)>& q, int j, double gamma, double N, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("contour_rhs: t must be positive");
  const cplx center(0.5 * t, 0.0);
  const double radius = 0.5 * t + 1.5;
  auto pass = [&](int M) {
    cplx acc(0.0, 0.0);
    for (int i = 0; i < M; ++i) {
      const double theta = 2.0 * pi * i / M;
      const cplx e = std::polar(1.0, theta);
      const cplx u = center + radius * e;
      const cplx du = cplx(0.0, 1.0) * radius * e * (2.0 * pi / M);
      const cplx branch = std::exp(gamma * std::log(1.0 - t / u));
      acc += q(u) * std::exp(N * t * u) * branch / std::pow(u - t, j + 1) * du;
    }
    return acc / cplx(0.0, 2.0 * pi);
  };
  int M = 256;
  cplx prev = pass(M);
  for (int level = 0; level < 6; ++level) {
    M *= 2;
    const cplx cur = pass(M);
    if (std::abs(cur - prev) <= 1e-9 * std::abs(cur) + 1e-300) {
      const double prefactor = pi * std::tgamma(j - gamma + 1.0) / std::pow(N, j - gamma + 1.0);
      return prefactor * cur;
    }
    prev = cur;
  }
  throw numerical_error("contour_rhs: trapezoid certificate failed");
}

MonicPolynomial unfold_polynomial(const MonicPolynomial& pik, double t, int d, int ell) {
  if (d < 1 || ell < 0 || ell >= d) throw std::invalid_argument("unfold_polynomial: bad (d, ell)");
  if (!(t > 0.0)) throw std::invalid_argument("unfold_polynomial: t must be positive");
  const int k = pik.degree;
  // q_i = (-1)^{k+i} t^{k-i} sum_{m >= i} C(m, i) c_m
  std::vector<cplx> qc(k + 1, cplx(0.0, 0.0));
  for (int i = 0; i <= k; ++i) {
    cplx s(0.0, 0.0);
    double c = 1.0;  // C(i, i)
    for (int m = i; m <= k; ++m) {
      s += c * pik.coeffs[m];
      c = c * (m + 1) / (m + 1 - i);  // C(m+1, i)
    }
    const double sign = ((k + i) % 2 == 0) ? 1.0 : -1.0;
    qc[i] = sign * std::pow(t, k - i) * s;
  }
  MonicPolynomial pn;
  pn.degree = k * d + ell;
  pn.coeffs.assign(pn.degree + 1, cplx(0.0, 0.0));
  for (int i = 0; i <= k; ++i) pn.coeffs[i * d + ell] = qc[i];
  return pn;
}

cplx moment_gamma0_oracle(int j, int k, double z0) {
  if (j >= k) return cplx(0.0, 0.0);
  const int p = k - 1 - j;
  double term = 1.0;
  for (int i = 1; i <= p; ++i) term *= (-double(k) / z0) / i;
  return cplx(0.0, 2.0 * pi) * term;
}

}  // namespace p4
