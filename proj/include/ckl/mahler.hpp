#pragma once

// Numerical Mahler measure of two-variable Laurent polynomials and the Ronkin
// function. Two independent routes with error control:
//   - mahler_quadrature: mean of log|P| over a half-shifted roots-of-unity
//     grid, extrapolated over grid doublings (works from any evaluator);
//   - mahler_jensen: Jensen's formula in w on each circle |z|=1, integrated
//     adaptively in the angle (needs coefficients; the precision workhorse).

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "ckl/laurent_poly.hpp"
#include "ckl/special_functions.hpp"

namespace ckl {

struct MahlerResult {
  double value = 0.0;
  std::string method;
  long long evaluations = 0;   // grid points or integrand evaluations used
  double error_estimate = 0.0;

  nlohmann::json to_json() const {
    return {{"value", value},
            {"method", method},
            {"evaluations", evaluations},
            {"error_estimate", error_estimate}};
  }
};

class MahlerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Mean of log |P(e^{X+i phi}, e^{Y+i psi})| over an N x N angular grid
// shifted by (sx, sy) cells; the shift keeps real torus zeros off the grid.
template <typename Eval>
double grid_mean_log(Eval&& P, int N, double sx, double sy, double X, double Y) {
  const double rx = std::exp(X), ry = std::exp(Y);
  double sum = 0.0;
  for (int p = 0; p < N; ++p) {
    const std::complex<double> z = std::polar(rx, 2.0 * kPi * (p + sx) / N);
    for (int q = 0; q < N; ++q) {
      const std::complex<double> w = std::polar(ry, 2.0 * kPi * (q + sy) / N);
      const double a = std::abs(P(z, w));
      if (!(a > 0.0) || !std::isfinite(a)) return std::numeric_limits<double>::quiet_NaN();
      sum += std::log(a);
    }
  }
  return sum / (double(N) * double(N));
}

// Roots of sum_k a_k w^k via the companion matrix, one Newton step to polish.
inline std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& a) {
  const int d = static_cast<int>(a.size()) - 1;
  if (d < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -a[i] / a[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw MahlerError("companion eigenvalue solve failed");
  std::vector<std::complex<double>> roots(d);
  for (int i = 0; i < d; ++i) {
    std::complex<double> r = es.eigenvalues()(i);
    std::complex<double> f = {0.0, 0.0}, df = {0.0, 0.0};
    for (int k = d; k >= 0; --k) {
      if (k < d) df = df * r + f;
      f = f * r + a[k];
    }
    if (std::abs(df) > 0.0) {
      const std::complex<double> polished = r - f / df;
      if (std::isfinite(polished.real()) && std::isfinite(polished.imag())) r = polished;
    }
    roots[i] = r;
  }
  return roots;
}

// Jensen's formula: the mean of log|Q| over |w|=1 for the one-variable slice
// Q(w) = P(z, w), equal to log|lead| + sum over roots of log^+ |r|.
inline double jensen_slice(const LaurentPoly2& p, std::complex<double> z) {
  std::vector<std::complex<double>> q = p.w_coefficients(z);
  double scale = 0.0;
  for (const auto& c : q) scale = std::max(scale, std::abs(c));
  if (!(scale > 0.0)) throw MahlerError("polynomial slice vanished identically");
  // Deflate negligible leading/trailing coefficients (degree drops at
  // special angles).
  int hi = static_cast<int>(q.size()) - 1, lo = 0;
  while (hi > 0 && std::abs(q[hi]) < 1e-13 * scale) --hi;
  while (lo < hi && std::abs(q[lo]) < 1e-13 * scale) ++lo;
  std::vector<std::complex<double>> a(q.begin() + lo, q.begin() + hi + 1);
  double out = std::log(std::abs(a.back()));
  for (const auto& r : poly_roots(a)) {
    const double m = std::abs(r);
    if (m > 1.0) out += std::log(m);
  }
  return out;
}

// Adaptive Simpson; the integrand has corner kinks where roots cross the
// unit circle, so fixed-step rules stall around 1e-6.
template <typename F>
double adaptive_simpson_rec(F&& f, double a, double fa, double b, double fb, double m, double fm,
                            double whole, double tol, int depth, long long& evals) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  evals += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, evals) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, evals);
}

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int initial_panels,
                        long long& evals) {
  double total = 0.0;
  const double h = (b - a) / initial_panels;
  for (int i = 0; i < initial_panels; ++i) {
    const double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
    const double f0 = f(x0), f1 = f(x1), fm = f(xm);
    evals += 3;
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += adaptive_simpson_rec(f, x0, f0, x1, f1, xm, fm, whole, tol / initial_panels, 40,
                                  evals);
  }
  return total;
}

}  // namespace detail

// Grid-mean Mahler measure from an evaluator. Extrapolates over N and 2N with
// an h^2 model; the error estimate is the extrapolation step itself.
template <typename Eval>
MahlerResult mahler_quadrature_eval(Eval&& P, int N = 512) {
  if (N < 4) throw MahlerError("grid too small");
  double s1 = detail::grid_mean_log(P, N, 0.5, 0.5, 0.0, 0.0);
  double s2 = detail::grid_mean_log(P, 2 * N, 0.5, 0.5, 0.0, 0.0);
  if (std::isnan(s1) || std::isnan(s2)) {
    // a zero landed exactly on the shifted grid: reshift once
    s1 = detail::grid_mean_log(P, N, 0.25, 0.37, 0.0, 0.0);
    s2 = detail::grid_mean_log(P, 2 * N, 0.25, 0.37, 0.0, 0.0);
    if (std::isnan(s1) || std::isnan(s2))
      throw MahlerError("log|P| not finite on two shifted grids");
  }
  MahlerResult r;
  r.method = "quadrature";
  r.value = s2 + (s2 - s1) / 3.0;
  r.evaluations = static_cast<long long>(N) * N * 5;
  r.error_estimate = std::max(std::abs(s2 - s1) / 3.0, 1e-12);
  return r;
}

inline MahlerResult mahler_quadrature(const LaurentPoly2& p, int N = 512) {
  auto eval = [&p](std::complex<double> z, std::complex<double> w) { return p.eval(z, w); };
  return mahler_quadrature_eval(eval, N);
}

// Jensen-route Mahler measure. `tol` is the absolute target for the angular
// integral; `initial_panels` seeds the adaptive subdivision.
inline MahlerResult mahler_jensen(const LaurentPoly2& p_in, double tol = 1e-9,
                                  int initial_panels = 64) {
  const LaurentPoly2 p = p_in.pruned(1e-12 * std::max(1.0, p_in.max_abs()));
  if (p.coeff.empty()) throw MahlerError("Mahler measure of the zero polynomial");
  MahlerResult r;
  r.method = "jensen";
  if (p.ni == 1 && p.nj == 1) {  // monomial
    r.value = std::log(std::abs(p.coeff[0]));
    r.error_estimate = 1e-15;
    return r;
  }
  const LaurentPoly2* work = &p;
  LaurentPoly2 swapped;
  if (p.nj == 1) {
    // constant in w: swap the variable roles so Jensen applies.
    swapped.imin = p.jmin;
    swapped.jmin = p.imin;
    swapped.ni = 1;
    swapped.nj = p.ni;
    swapped.coeff = p.coeff;
    work = &swapped;
  }
  long long evals = 0;
  auto integrand = [&](double theta) {
    return detail::jensen_slice(*work, std::polar(1.0, theta));
  };
  const double integral = detail::adaptive_simpson(integrand, 0.0, 2.0 * kPi, tol,
                                                   initial_panels, evals);
  r.value = integral / (2.0 * kPi);
  r.evaluations = evals;
  r.error_estimate = std::max(tol / (2.0 * kPi), 1e-12);
  return r;
}

// Ronkin function F(X,Y): the grid mean of log|P| at radii (e^X, e^Y).
// F(0,0) is the Mahler measure.
template <typename Eval>
double ronkin_eval(Eval&& P, double X, double Y, int N = 512) {
  double s1 = detail::grid_mean_log(P, N, 0.5, 0.5, X, Y);
  double s2 = detail::grid_mean_log(P, 2 * N, 0.5, 0.5, X, Y);
  if (std::isnan(s1) || std::isnan(s2)) {
    s1 = detail::grid_mean_log(P, N, 0.25, 0.37, X, Y);
    s2 = detail::grid_mean_log(P, 2 * N, 0.25, 0.37, X, Y);
    if (std::isnan(s1) || std::isnan(s2))
      throw MahlerError("log|P| not finite on two shifted grids");
  }
  return s2 + (s2 - s1) / 3.0;
}

inline double ronkin(const LaurentPoly2& p, double X, double Y, int N = 512) {
  auto eval = [&p](std::complex<double> z, std::complex<double> w) { return p.eval(z, w); };
  return ronkin_eval(eval, X, Y, N);
}

}  // namespace ckl
