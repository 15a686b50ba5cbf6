#include "ckl/special_functions.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

using namespace ckl;
using std::complex;

namespace {

// Independent oracle for the Lobachevsky function:
//   L(t) = t - t log(2t) - Integral_0^t log(sin u / u) du,
// the integrand being smooth, so plain Simpson converges fast.
double lobachevsky_quadrature_oracle(double theta) {
  const int n = 4000;  // even
  const double h = theta / n;
  auto f = [](double u) {
    if (u == 0.0) return 0.0;
    return std::log(std::sin(u) / u);
  };
  double s = f(0.0) + f(theta);
  for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
  const double integral = s * h / 3.0;
  return theta - theta * std::log(2.0 * theta) - integral;
}

// sum_{k>=1} 1/k^2 with an Euler-Maclaurin tail.
double basel_series_oracle() {
  const int K = 20000;
  double s = 0.0;
  for (int k = K; k >= 1; --k) s += 1.0 / (static_cast<double>(k) * k);
  const double Kd = K;
  return s + 1.0 / Kd - 1.0 / (2 * Kd * Kd) + 1.0 / (6 * Kd * Kd * Kd);
}

// Catalan via the alternating series, averaging consecutive partial sums.
double catalan_series_oracle() {
  const int K = 200000;
  double s = 0.0;
  for (int k = K; k >= 0; --k) {
    const double d = 2.0 * k + 1.0;
    s += (k % 2 ? -1.0 : 1.0) / (d * d);
  }
  const double d = 2.0 * (K + 1) + 1.0;
  const double s_next = s + ((K + 1) % 2 ? -1.0 : 1.0) / (d * d);
  return 0.5 * (s + s_next);
}

}  // namespace

TEST_CASE("lobachevsky basic values", "[special_functions]") {
  CHECK(lobachevsky(0.0) == 0.0);
  CHECK(std::abs(lobachevsky(kPi / 2)) < 1e-13);
  CHECK(std::abs(lobachevsky(kPi)) < 1e-13);
  // Known maximum at pi/6.
  CHECK(lobachevsky(kPi / 6) == Catch::Approx(0.5074708032048258).margin(1e-12));
  CHECK(lobachevsky(kPi / 3) == Catch::Approx(v_tet() / 3.0).margin(1e-14));
}

TEST_CASE("lobachevsky agrees with quadrature oracle", "[special_functions]") {
  for (double t : {0.1, 0.3, kPi / 6, kPi / 4, kPi / 3, 1.2, 1.5}) {
    CHECK(lobachevsky(t) == Catch::Approx(lobachevsky_quadrature_oracle(t)).margin(1e-12));
  }
}

TEST_CASE("lobachevsky symmetry suite", "[special_functions]") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    CHECK(std::abs(lobachevsky(t + kPi) - lobachevsky(t)) < 1e-12);
    CHECK(std::abs(lobachevsky(-t) + lobachevsky(t)) < 1e-12);
  }
  // L(pi/6) = (3/2) L(pi/3), needed by the triaxial volume computation.
  CHECK(std::abs(lobachevsky(kPi / 6) - 1.5 * lobachevsky(kPi / 3)) < 1e-12);
  // |L| attains its maximum at pi/6.
  for (int i = 0; i < 200; ++i) {
    CHECK(std::abs(lobachevsky(u(rng))) <= lobachevsky(kPi / 6) + 1e-15);
  }
}

TEST_CASE("dilog special values", "[special_functions]") {
  CHECK(std::abs(dilog({0.0, 0.0})) == 0.0);
  CHECK(std::abs(dilog({1.0, 0.0}).real() - basel_series_oracle()) < 1e-12);
  const auto li2_i = dilog({0.0, 1.0});
  CHECK(li2_i.imag() == Catch::Approx(catalan_constant()).margin(1e-13));
  CHECK(li2_i.real() == Catch::Approx(-kPi * kPi / 48.0).margin(1e-13));
  // Li2(-1) = -pi^2/12.
  CHECK(dilog({-1.0, 0.0}).real() == Catch::Approx(-kPi * kPi / 12.0).margin(1e-13));
  // Euler reflection at 1/2: Li2(1/2) = pi^2/12 - log(2)^2/2.
  const double lg2 = std::log(2.0);
  CHECK(dilog({0.5, 0.0}).real() ==
        Catch::Approx(kPi * kPi / 12.0 - 0.5 * lg2 * lg2).margin(1e-13));
}

TEST_CASE("dilog transformation consistency", "[special_functions]") {
  // Inversion and reflection applied manually must reproduce dilog everywhere.
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> mod(0.05, 3.0), ang(-kPi + 0.01, kPi - 0.01);
  for (int i = 0; i < 300; ++i) {
    const complex<double> z = std::polar(mod(rng), ang(rng));
    const complex<double> a = dilog(z);
    const complex<double> lgmz = std::log(-z);
    const complex<double> inv = -dilog(1.0 / z) - kPi * kPi / 6.0 - 0.5 * lgmz * lgmz;
    CHECK(std::abs(a - inv) < 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("bloch_wigner values and functional equations", "[special_functions]") {
  CHECK(bloch_wigner({0.5, 0.0}) == 0.0);
  CHECK(bloch_wigner({7.25, 0.0}) == 0.0);
  CHECK(bloch_wigner({0.0, 1.0}) == Catch::Approx(catalan_constant()).margin(1e-13));
  // D(e^{i pi/3}) is the regular ideal tetrahedron volume.
  const complex<double> w = std::polar(1.0, kPi / 3.0);
  CHECK(bloch_wigner(w) == Catch::Approx(v_tet()).margin(1e-12));
  CHECK(bloch_wigner(w) == Catch::Approx(3.0 * lobachevsky(kPi / 3.0)).margin(1e-12));

  std::mt19937 rng(999);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    complex<double> z(re(rng), im(rng));
    if (std::abs(z) < 1e-3 || std::abs(z - 1.0) < 1e-3 || std::abs(z.imag()) < 1e-6) continue;
    CHECK(std::abs(bloch_wigner(std::conj(z)) + bloch_wigner(z)) < 1e-10);
    CHECK(std::abs(bloch_wigner(1.0 / z) + bloch_wigner(z)) < 1e-10);
  }
}

TEST_CASE("ti2 values and identities", "[special_functions]") {
  CHECK(ti2(0.0) == 0.0);
  CHECK(ti2(1.0) == Catch::Approx(catalan_series_oracle()).margin(1e-9));
  CHECK(ti2(1.0) == Catch::Approx(catalan_constant()).margin(1e-12));
  for (double x = 0.1; x <= 10.05; x += 0.1) {
    CHECK(ti2(x) == Catch::Approx(std::imag(dilog({0.0, x}))).margin(1e-10));
    CHECK(ti2(-x) == Catch::Approx(-ti2(x)).margin(1e-14));
  }
}

TEST_CASE("ti2 Chang-Shrock chain", "[special_functions]") {
  // 8C + 4 pi log(sqrt(2)-1) + 8 Ti2(3+2 sqrt(2)) = 19.7715323218...
  const double s2 = std::sqrt(2.0);
  const double value = 8.0 * catalan_constant() + 4.0 * kPi * std::log(s2 - 1.0) +
                       8.0 * ti2(3.0 + 2.0 * s2);
  CHECK(value == Catch::Approx(19.7715323218).margin(1e-9));
}

TEST_CASE("volume constants", "[special_functions]") {
  CHECK(v_tet() == Catch::Approx(1.0149416064096536).margin(1e-14));
  CHECK(v_oct() == Catch::Approx(3.6638623767088760).margin(1e-13));
  CHECK(catalan_constant() == Catch::Approx(0.9159655941772190).margin(1e-14));
  CHECK(volume_constants().size() == 3);
}

TEST_CASE("bipyramid volumes", "[special_functions]") {
  CHECK(bipyramid_volume(2) == 0.0);
  CHECK(bipyramid_volume(3) == Catch::Approx(2.0 * v_tet()).margin(1e-9));
  CHECK(bipyramid_volume(4) == Catch::Approx(v_oct()).margin(1e-9));
  CHECK(bipyramid_volume(6) == Catch::Approx(6.0 * v_tet()).margin(1e-9));
  // Values quoted from Adams' table.
  CHECK(bipyramid_volume(3) == Catch::Approx(2.0298).margin(5e-4));
  CHECK(bipyramid_volume(4) == Catch::Approx(3.6638).margin(5e-4));
  CHECK(bipyramid_volume(8) == Catch::Approx(7.8549).margin(5e-4));
  CHECK(bipyramid_volume(9) == Catch::Approx(8.5836).margin(5e-4));
  CHECK(bipyramid_volume(12) == Catch::Approx(10.3725).margin(5e-4));
  for (int n = 2; n < 40; ++n) CHECK(bipyramid_volume(n + 1) > bipyramid_volume(n));
  CHECK_THROWS_AS(bipyramid_volume(1), std::invalid_argument);
}
