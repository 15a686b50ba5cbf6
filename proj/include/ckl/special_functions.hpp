#pragma once

// Hyperbolic special functions: Lobachevsky function, dilogarithm family,
// ideal-polyhedron volume constants and regular ideal bipyramid volumes.
//
// Conventions:
//   lobachevsky(t)  = -Integral_0^t log|2 sin u| du   (odd, pi-periodic,
//                     positive on (0, pi/2); the standard sign convention)
//   dilog(z)        = Li_2(z), principal branch, cut along [1, inf);
//                     on the cut the limit from the lower half plane is taken
//   bloch_wigner(z) = Im Li_2(z) + arg(1 - z) log|z|
//   ti2(x)          = Integral_0^x arctan(t)/t dt = Im Li_2(ix)

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckl {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

using Cd = std::complex<double>;

namespace detail {

// zeta(2n) for n = 1..kZetaMax. First four from the closed forms, the rest
// by direct summation (the tail beyond k=200 is below 1e-21 already at 2n=10).
inline const std::vector<double>& even_zeta_table() {
  static const std::vector<double> table = [] {
    constexpr int kZetaMax = 64;
    std::vector<double> z(kZetaMax + 1, 0.0);
    const long double pi = 3.14159265358979323846264338327950288L;
    z[1] = static_cast<double>(pi * pi / 6.0L);
    z[2] = static_cast<double>(pi * pi * pi * pi / 90.0L);
    z[3] = static_cast<double>(pi * pi * pi * pi * pi * pi / 945.0L);
    z[4] = static_cast<double>(pi * pi * pi * pi * pi * pi * pi * pi / 9450.0L);
    for (int n = 5; n <= kZetaMax; ++n) {
      long double s = 0.0L;
      for (int k = 200; k >= 1; --k) s += std::pow(static_cast<long double>(k), -2.0L * n);
      z[n] = static_cast<double>(s);
    }
    return z;
  }();
  return table;
}

// Bernoulli numbers B_2..B_34 (even index only; B_0, B_1 handled inline).
inline constexpr std::array<double, 17> kEvenBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
};

// Li_2 by the defining series; converges geometrically for |z| <= 1/2.
inline std::complex<double> dilog_power_series(std::complex<double> z) {
  std::complex<double> term = z, sum = z;
  for (int k = 2; k < 200; ++k) {
    term *= z;
    const std::complex<double> add = term / static_cast<double>(k * k);
    sum += add;
    if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

// Li_2 via the Bernoulli series in u = -log(1-z); converges for |u| < 2*pi
// and is the workhorse on the crescent 1/2 < |z| <= 1, Re z <= 1/2.
inline std::complex<double> dilog_log_series(std::complex<double> z) {
  const std::complex<double> u = -std::log(1.0 - z);
  std::complex<double> sum = u - u * u / 4.0;  // B_0, B_1 terms
  std::complex<double> upow = u;               // u^(2k-1)
  const std::complex<double> u2 = u * u;
  double fact = 1.0;  // (2k+1)! accumulated below
  for (std::size_t k = 1; k <= kEvenBernoulli.size(); ++k) {
    upow *= u2;
    fact *= static_cast<double>(2 * k) * static_cast<double>(2 * k + 1);
    const std::complex<double> add = kEvenBernoulli[k - 1] * upow / fact;
    sum += add;
    if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

}  // namespace detail

// Lobachevsky function. Series about 0 after range reduction to [-pi/2, pi/2]:
//   L(t) = t - t log(2t) + sum_{n>=1} zeta(2n) t^(2n+1) / (n (2n+1) pi^(2n))
inline double lobachevsky(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("lobachevsky: non-finite argument");
  double r = theta - kPi * std::round(theta / kPi);
  if (r == 0.0) return 0.0;
  const double sign = r < 0 ? -1.0 : 1.0;
  r = std::abs(r);
  const auto& zeta = detail::even_zeta_table();
  double sum = r - r * std::log(2.0 * r);
  const double ratio = (r / kPi) * (r / kPi);
  double tpow = r * ratio;  // r^(2n+1) / pi^(2n)
  for (std::size_t n = 1; n < zeta.size(); ++n) {
    const double add = zeta[n] * tpow / (static_cast<double>(n) * static_cast<double>(2 * n + 1));
    sum += add;
    if (add < 1e-17 * std::abs(sum)) break;
    tpow *= ratio;
  }
  return sign * sum;
}

// Dilogarithm Li_2, principal branch. Real arguments above 1 are evaluated as
// the limit from the lower half plane.
inline std::complex<double> dilog(std::complex<double> z) {
  constexpr double kPi2Over6 = kPi * kPi / 6.0;
  if (z == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
  if (z == std::complex<double>(1.0, 0.0)) return {kPi2Over6, 0.0};
  if (z.imag() == 0.0 && z.real() > 1.0) z = {z.real(), -0.0};

  if (std::abs(z) > 1.0) {
    const std::complex<double> lg = std::log(-z);
    return -dilog(1.0 / z) - kPi2Over6 - 0.5 * lg * lg;
  }
  if (z.real() > 0.5) {
    return kPi2Over6 - std::log(z) * std::log(1.0 - z) - dilog(1.0 - z);
  }
  if (std::abs(z) <= 0.5) return detail::dilog_power_series(z);
  return detail::dilog_log_series(z);
}

// Bloch-Wigner dilogarithm. Vanishes identically on the real line (including
// the cut); arg is the principal branch in (-pi, pi].
inline double bloch_wigner(std::complex<double> z) {
  if (z.imag() == 0.0) return 0.0;
  return std::imag(dilog(z)) + std::arg(1.0 - z) * std::log(std::abs(z));
}

// Inverse tangent integral. Own series plus the inversion
// Ti2(x) = (pi/2) log x + Ti2(1/x) for x > 1; the band |x| in (0.98, 1.02)
// routes through Li_2 where the direct series is slow.
inline double ti2(double x) {
  if (x == 0.0) return 0.0;
  if (x < 0.0) return -ti2(-x);
  if (x == 1.0) return 0.915965594177219015054603514932;  // Catalan's constant
  if (x > 1.02) return 0.5 * kPi * std::log(x) + ti2(1.0 / x);
  if (x > 0.98) return std::imag(dilog(std::complex<double>(0.0, x)));
  const double x2 = x * x;
  double term = x, sum = x;
  for (int k = 1; k < 4000; ++k) {
    term *= -x2;
    const double d = static_cast<double>(2 * k + 1);
    const double add = term / (d * d);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Volume constants of ideal hyperbolic polyhedra.
inline double v_tet() {
  static const double v = 3.0 * lobachevsky(kPi / 3.0);
  return v;
}
inline double v_oct() {
  static const double v = 8.0 * lobachevsky(kPi / 4.0);
  return v;
}
inline double catalan_constant() {
  static const double v = v_oct() / 4.0;
  return v;
}

struct VolumeConstant {
  std::string name;
  double value;
};

inline std::vector<VolumeConstant> volume_constants() {
  return {{"v_tet", v_tet()}, {"v_oct", v_oct()}, {"catalan", catalan_constant()}};
}

// Volume of the regular ideal hyperbolic bipyramid over an n-gon,
// vol(B_n) = 2n L(pi/n). vol(B_2) = 0, vol(B_3) = 2 v_tet, vol(B_4) = v_oct.
inline double bipyramid_volume(int n) {
  if (n < 2) throw std::invalid_argument("bipyramid_volume: n must be >= 2");
  if (n == 2) return 0.0;
  return 2.0 * n * lobachevsky(kPi / n);
}

}  // namespace ckl
