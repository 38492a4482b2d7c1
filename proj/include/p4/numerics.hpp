#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace p4 {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Thrown when a computation breaks down numerically (as opposed to bad
/// input, which uses std::invalid_argument). The CLI maps this to exit 3.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Bisection for a continuous function with a sign change on [lo, hi].
/// Returns the midpoint of the final bracket of width <= tol.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol, int max_iter = 200) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::invalid_argument("bisect: no sign change on bracket");
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Newton iteration on [lo, hi] falling back to bisection whenever the step
/// leaves the bracket. f must return {value, derivative}; the bracket must
/// contain a sign change.
template <typename F>
double safeguarded_newton(F&& f, double lo, double hi, double x0, double tol,
                          int max_iter = 100) {
  auto [flo, dlo] = f(lo);
  auto [fhi, dhi] = f(hi);
  (void)dlo;
  (void)dhi;
  if ((flo > 0) == (fhi > 0))
    throw std::invalid_argument("safeguarded_newton: no sign change on bracket");
  double x = x0;
  for (int it = 0; it < max_iter; ++it) {
    auto [fx, dfx] = f(x);
    if ((fx > 0) == (flo > 0)) lo = x; else hi = x;
    double step = (dfx != 0.0) ? fx / dfx : std::numeric_limits<double>::infinity();
    double xn = x - step;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) <= tol * (1.0 + std::abs(xn))) return xn;
    x = xn;
  }
  return x;
}

inline bool finite(const cplx& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace p4
