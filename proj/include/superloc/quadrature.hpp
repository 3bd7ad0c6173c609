#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "superloc/error.hpp"

namespace superloc::quad {

using Integrand = std::function<std::complex<double>(std::complex<double>)>;

struct Options {
  double abs_tol = 1e-8;   // absolute tolerance of the radial integral
  int angular_nodes = 64;  // periodic trapezoid; exact for harmonics below this order
  int max_depth = 40;
};

namespace detail {

inline std::complex<double> simpson(double h, std::complex<double> fa, std::complex<double> fm,
                                    std::complex<double> fb) {
  return (fa + 4.0 * fm + fb) * (h / 6.0);
}

inline std::complex<double> adapt(const std::function<std::complex<double>(double)>& f, double a,
                                  double b, std::complex<double> fa, std::complex<double> fm,
                                  std::complex<double> fb, std::complex<double> whole, double tol,
                                  int depth, const Options& opt, long& depth_failures) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  std::complex<double> flm = f(lm), frm = f(rm);
  std::complex<double> left = simpson(m - a, fa, flm, fm);
  std::complex<double> right = simpson(b - m, fm, frm, fb);
  std::complex<double> err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
  if (depth >= opt.max_depth) {
    ++depth_failures;
    return left + right + err / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, opt, depth_failures) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, opt, depth_failures);
}

}  // namespace detail

/// Adaptive Simpson integral of a complex-valued function over [a, b].
/// Throws Error(Numeric) when the tolerance is unreachable at max depth.
inline std::complex<double> integrate(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, const Options& opt = {}) {
  if (!(a < b)) return {0.0, 0.0};
  std::complex<double> fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  std::complex<double> whole = detail::simpson(b - a, fa, fm, fb);
  long depth_failures = 0;
  std::complex<double> out =
      detail::adapt(f, a, b, fa, fm, fb, whole, opt.abs_tol, 0, opt, depth_failures);
  if (depth_failures > 0)
    fail(ErrorCode::Numeric,
         "radial quadrature did not reach tolerance " + std::to_string(opt.abs_tol) + " on [" +
             std::to_string(a) + ", " + std::to_string(b) + "] (" +
             std::to_string(depth_failures) + " subintervals at depth limit)");
  return out;
}

/// Integral of F over the annulus eps < |z| < radius against dx dy,
/// on a polar tensor grid: fixed-node angular trapezoid, adaptive radius.
inline std::complex<double> annulus_integral(const Integrand& F, double eps, double radius,
                                             const Options& opt = {}) {
  if (!(eps >= 0.0) || !(radius > eps)) fail(ErrorCode::Numeric, "bad annulus bounds");
  const int n = opt.angular_nodes;
  auto ring = [&](double r) -> std::complex<double> {
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
      double phi = 2.0 * M_PI * k / n;
      acc += F(std::polar(r, phi));
    }
    return acc * (2.0 * M_PI / n) * r;
  };
  return integrate(ring, eps, radius, opt);
}

/// Limit of I(eps) as eps -> 0 from the last three samples of a trace with a
/// constant step ratio, fitting I = A + C eps^p.
inline std::complex<double> richardson(
    const std::vector<std::pair<double, std::complex<double>>>& trace) {
  if (trace.size() < 3) fail(ErrorCode::Numeric, "extrapolation needs at least three samples");
  auto [e1, i1] = trace[trace.size() - 3];
  auto [e2, i2] = trace[trace.size() - 2];
  auto [e3, i3] = trace[trace.size() - 1];
  double rho1 = e1 / e2, rho2 = e2 / e3;
  if (!(rho1 > 1.0) || std::abs(rho1 - rho2) > 1e-9 * rho1)
    fail(ErrorCode::Numeric, "extrapolation needs a constant decreasing step ratio");
  std::complex<double> d1 = i2 - i1, d2 = i3 - i2;
  if (std::abs(d2) < 1e-13) return i3;
  double p = std::log(std::abs(d1) / std::abs(d2)) / std::log(rho2);
  p = std::clamp(p, 0.25, 12.0);
  return i3 + d2 / (std::pow(rho2, p) - 1.0);
}

}  // namespace superloc::quad
