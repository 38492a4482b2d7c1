#include "p4/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace p4 {

void ModelParams::validate() const {
  if (d < 2) throw std::invalid_argument("ModelParams: d must be >= 2");
  if (ell < 0 || ell >= d) throw std::invalid_argument("ModelParams: ell must be in [0, d-1]");
  if (!(t > 0.0) || !(T > 0.0)) throw std::invalid_argument("ModelParams: t, T must be positive");
  if (k < 1) throw std::invalid_argument("ModelParams: k must be >= 1");
}

cplx phi_hat(cplx lambda, double t_c, int d) {
  if (!(t_c > 0.0)) throw std::invalid_argument("phi_hat: t_c must be positive");
  cplx ld = std::pow(lambda, d);
  cplx v = t_c - ld;
  if (v == cplx(0.0, 0.0))
    throw std::invalid_argument("phi_hat: lambda^d = t_c is the branch point");
  // On the cut (v real negative) take the +i pi boundary value; Re phi_hat is
  // single-valued there, which is all the level-curve work uses.
  if (v.imag() == 0.0) v = cplx(v.real(), 0.0);
  return std::log(v) + ld / t_c - std::log(t_c);
}

namespace {

double ell_hat(double r, double z0) { return std::log(r) - r / z0; }

// Radial level function of Gamma_r along the ray at angle theta:
// h(rho) = log rho - rho cos(theta)/z0 - log r + r/z0, increasing on (0, z0].
double radial_level(double rho, double cos_theta, double r, double z0) {
  return std::log(rho) - rho * cos_theta / z0 - std::log(r) + r / z0;
}

}  // namespace

double gamma_r_radius(double theta, double r, double z0) {
  const double c = std::cos(theta);
  const double hi = z0;
  const double h_hi = radial_level(hi, c, r, z0);
  if (h_hi <= 0.0) return hi;  // only at the critical corner r = z0, theta = 0
  double lo = r * std::exp(-3.0 - r / z0);
  while (radial_level(lo, c, r, z0) >= 0.0) lo *= 0.5;
  auto f = [&](double rho) {
    return std::pair<double, double>{radial_level(rho, c, r, z0), 1.0 / rho - c / z0};
  };
  double rho = safeguarded_newton(f, lo, hi, std::min(r, 0.5 * (lo + hi)), 1e-15);
  if (std::abs(radial_level(rho, c, r, z0)) > 1e-12)
    throw numerical_error("gamma_r_radius: radial solve did not converge at theta = " +
                          std::to_string(theta));
  return rho;
}

CurveSample curve_gamma_r(double r, double z0, int M) {
  if (M < 16) throw std::invalid_argument("curve_gamma_r: M must be >= 16");
  if (!(z0 > 0.0) || !(r > 0.0) || r > z0)
    throw std::invalid_argument("curve_gamma_r: need 0 < r <= z0");
  CurveSample curve;
  curve.closed = true;
  curve.components = 1;
  curve.points.resize(M);
  curve.residuals.resize(M);
  curve.density.resize(M);
  for (int j = 0; j < M; ++j) {
    const double theta = -pi + 2.0 * pi * j / M;
    const double rho = gamma_r_radius(theta, r, z0);
    const cplx z = std::polar(rho, theta);
    curve.points[j] = z;
    curve.residuals[j] = std::abs(radial_level(rho, std::cos(theta), r, z0));
    // Analytic tangent: z'(theta) = (rho' + i rho) e^{i theta} with
    // rho' = -rho^2 sin(theta) / (z0 - rho cos(theta)); at the critical corner
    // (rho cos(theta) -> z0) the density vanishes with phi'(z) anyway.
    const double denom = z0 - rho * std::cos(theta);
    cplx density(0.0, 0.0);
    if (std::abs(denom) > 1e-14) {
      const double drho = -rho * rho * std::sin(theta) / denom;
      cplx tangent = cplx(drho, rho) * std::polar(1.0, theta);
      tangent /= std::abs(tangent);
      const cplx dphi = 1.0 / z - 1.0 / z0;
      density = dphi * tangent / cplx(0.0, 2.0 * pi);
    }
    curve.density[j] = density;
  }
  return curve;
}

CurveSample szego_curve_z(int M) { return curve_gamma_r(1.0, 1.0, M); }

Side side_of_gamma_r(cplx z, double r, double z0, double tol) {
  const double rho = std::abs(z);
  if (rho == 0.0) return Side::interior;
  const double h = radial_level(rho, std::cos(std::arg(z)), r, z0);
  if (std::abs(h) < tol)
    throw std::invalid_argument("side_of_gamma_r: point on the curve (ambiguous side)");
  return (h < 0.0 && rho <= z0) ? Side::interior : Side::exterior;
}

cplx g_on_side(cplx z, double r, double z0, Side side) {
  if (side == Side::interior) return z / z0 + ell_hat(r, z0);
  return std::log(z);
}

cplx phi_on_side(cplx z, double r, double z0, Side side) {
  if (side == Side::interior) return std::log(z) - z / z0 - ell_hat(r, z0);
  return z / z0 - std::log(z) + ell_hat(r, z0);
}

cplx g_function(cplx z, double r, double z0) {
  return g_on_side(z, r, z0, side_of_gamma_r(z, r, z0));
}

cplx phi(cplx z, double r, double z0) {
  return phi_on_side(z, r, z0, side_of_gamma_r(z, r, z0));
}

CurveSample unfold_curve(const CurveSample& zcurve, double t_c, int d) {
  if (d < 1) throw std::invalid_argument("unfold_curve: d must be >= 1");
  const size_t m = zcurve.points.size();
  CurveSample out;
  out.closed = zcurve.closed;
  out.components = d;
  out.points.resize(m * d);
  out.residuals.resize(m * d);
  for (int sheet = 0; sheet < d; ++sheet) {
    const cplx omega = std::polar(1.0, 2.0 * pi * sheet / d);
    for (size_t j = 0; j < m; ++j) {
      const cplx w = t_c * (1.0 - zcurve.points[j]);
      const cplx lambda = omega * std::pow(w, 1.0 / d);
      const size_t idx = sheet * m + j;
      out.points[idx] = lambda;
      out.residuals[idx] =
          (std::abs(w) == 0.0) ? 0.0 : std::abs(phi_hat(lambda, t_c, d).real());
      if (out.residuals[idx] > 1e-9)
        throw numerical_error("unfold_curve: pullback residual exceeds 1e-9");
    }
  }
  return out;
}

CurveSample lemniscate_boundary(double t, double t_c, int d, int M) {
  if (!(t > 0.0) || !(t_c > 0.0)) throw std::invalid_argument("lemniscate_boundary: t, t_c > 0");
  if (d < 1 || M < 16) throw std::invalid_argument("lemniscate_boundary: bad d or M");
  CurveSample out;
  out.closed = true;
  out.components = (t > t_c) ? d : 1;
  out.points.resize(static_cast<size_t>(M) * d);
  out.residuals.resize(static_cast<size_t>(M) * d);

  // u(psi) = t + t_c e^{i psi} with the argument unwrapped along psi, so the
  // d-th root stays continuous whether or not u winds around the origin.
  std::vector<double> mod(M), arg(M);
  double running = 0.0;
  bool seeded = false;
  for (int j = 0; j < M; ++j) {
    const double psi = -pi + 2.0 * pi * j / M;
    cplx u = t + t_c * std::polar(1.0, psi);
    if (std::abs(u) < 8.0 * std::numeric_limits<double>::epsilon() * (t + t_c))
      u = cplx(0.0, 0.0);  // t = t_c at psi = -pi up to the sin(pi) rounding
    mod[j] = std::abs(u);
    if (mod[j] == 0.0) {
      arg[j] = running;  // lambda = 0; the phase is irrelevant
      continue;
    }
    if (!seeded) {
      running = std::arg(u);
      seeded = true;
    } else {
      double delta = std::arg(u) - std::fmod(running, 2.0 * pi);
      delta = std::remainder(delta, 2.0 * pi);
      running += delta;
    }
    arg[j] = running;
  }
  for (int sheet = 0; sheet < d; ++sheet) {
    for (int j = 0; j < M; ++j) {
      const cplx lambda =
          std::polar(std::pow(mod[j], 1.0 / d), (arg[j] + 2.0 * pi * sheet) / d);
      const size_t idx = static_cast<size_t>(sheet) * M + j;
      out.points[idx] = lambda;
      out.residuals[idx] = std::abs(std::abs(std::pow(lambda, d) - t) - t_c);
    }
  }
  return out;
}

namespace {

// Winding-exact chord integral of f(z) = 1/z over one closed component.
cplx chordwise_log_integral(const std::vector<cplx>& pts, size_t lo, size_t hi) {
  cplx acc(0.0, 0.0);
  for (size_t j = lo; j < hi; ++j) {
    const cplx za = pts[j];
    const cplx zb = pts[(j + 1 == hi) ? lo : j + 1];
    acc += std::log(zb / za);  // principal; adjacent points never wrap
  }
  return acc;
}

}  // namespace

cplx nu_hat_mass(const CurveSample& zcurve) {
  if (!zcurve.closed) throw std::invalid_argument("nu_hat_mass: open curve");
  const auto& pts = zcurve.points;
  if (pts.size() < 3) throw std::invalid_argument("nu_hat_mass: too few points");
  // (1/2 pi i) [ closed-int dz/z  -  closed-int dz ]; the second chord sum
  // telescopes to zero over a closed polygon.
  cplx acc = chordwise_log_integral(pts, 0, pts.size());
  return acc / cplx(0.0, 2.0 * pi);
}

cplx nu_hat_mass_lambda(const CurveSample& lambda_curve, double t_c, int d) {
  if (!lambda_curve.closed) throw std::invalid_argument("nu_hat_mass_lambda: open curve");
  const auto& pts = lambda_curve.points;
  if (pts.empty() || pts.size() % lambda_curve.components != 0)
    throw std::invalid_argument("nu_hat_mass_lambda: inconsistent component layout");
  const size_t per = pts.size() / lambda_curve.components;
  cplx acc(0.0, 0.0);
  for (int c = 0; c < lambda_curve.components; ++c) {
    const size_t lo = c * per, hi = lo + per;
    for (size_t j = lo; j < hi; ++j) {
      const cplx la = pts[j];
      const cplx lb = pts[(j + 1 == hi) ? lo : j + 1];
      const cplx va = t_c - std::pow(la, d);
      const cplx vb = t_c - std::pow(lb, d);
      // d phi_hat = d log(t_c - lambda^d) + d(lambda^d)/t_c, chord-exact.
      acc += std::log(vb / va) + (std::pow(lb, d) - std::pow(la, d)) / t_c;
    }
  }
  return acc / cplx(0.0, 2.0 * pi * d);
}

cplx phi_cont(cplx z, double z0) { return (z - 1.0) / z0 - std::log(z); }

double phi_critical(double z0) {
  if (!(z0 > 0.0)) throw std::invalid_argument("phi_critical: z0 must be positive");
  return (z0 - 1.0) / z0 - std::log(z0);
}

double a_of(double z0) {
  const double cr = phi_critical(z0);
  const double mag = std::sqrt(std::max(0.0, -2.0 * cr));
  if (mag == 0.0) return 0.0;
  return (z0 > 1.0) ? -mag : mag;
}

cplx conformal_zeta(cplx z, double z0) {
  if (std::abs(z - 1.0) > 0.25 + 1e-12)
    throw std::invalid_argument("conformal_zeta: z outside the univalence disk");
  if (!(z0 > 0.7 && z0 < 1.3))
    throw std::invalid_argument("conformal_zeta: z0 outside (0.7, 1.3)");
  const double a = a_of(z0);
  // G(z) = (phi - phi_cr)/(z - z0)^2 = (u - log(1+u))/(u^2 z0^2), u = (z-z0)/z0.
  // Re G stays positive on the whole domain, so the principal square root is
  // analytic; the series form takes over where the direct quotient cancels.
  const cplx u = (z - cplx(z0)) / z0;
  cplx G;
  if (std::abs(u) < 0.25) {
    cplx term(0.5, 0.0), acc(0.5, 0.0), up(1.0, 0.0);
    for (int m = 1; m < 64; ++m) {
      up *= -u;
      term = up / double(m + 2);
      acc += term;
      if (std::abs(term) < 1e-18 * std::abs(acc)) break;
    }
    G = acc / (z0 * z0);
  } else {
    G = (u - std::log(1.0 + u)) / (u * u * z0 * z0);
  }
  const cplx S = (z - cplx(z0)) * std::sqrt(G);  // S^2 = phi - phi_cr, sqrt2 S(1) = A
  return std::sqrt(2.0) * S - a;
}

double scaling_parameter(int k, double t, double t_c) {
  if (k < 1 || !(t > 0.0) || !(t_c > 0.0))
    throw std::invalid_argument("scaling_parameter: bad arguments");
  return std::sqrt(double(k)) * (t * t / (t_c * t_c) - 1.0);
}

}  // namespace p4
