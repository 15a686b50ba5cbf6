#pragma once

// Two-variable Laurent polynomials with complex coefficients, stored as a
// dense coefficient grid over [imin..imax] x [jmin..jmax].

#include <complex>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace ckl {

struct LaurentPoly2 {
  using C = std::complex<double>;

  int imin = 0, jmin = 0;
  int ni = 0, nj = 0;      // grid extents; exponent (i,j) at c[(i-imin)*nj + (j-jmin)]
  std::vector<C> coeff;

  static LaurentPoly2 zero() { return {}; }

  static LaurentPoly2 monomial(int i, int j, C value) {
    LaurentPoly2 p;
    p.imin = i;
    p.jmin = j;
    p.ni = p.nj = 1;
    p.coeff = {value};
    return p;
  }

  C at(int i, int j) const {
    const int a = i - imin, b = j - jmin;
    if (a < 0 || a >= ni || b < 0 || b >= nj) return {0.0, 0.0};
    return coeff[std::size_t(a) * nj + b];
  }

  void set(int i, int j, C value) {
    const int a = i - imin, b = j - jmin;
    if (a < 0 || a >= ni || b < 0 || b >= nj)
      throw std::out_of_range("LaurentPoly2::set outside allocated grid");
    coeff[std::size_t(a) * nj + b] = value;
  }

  int imax() const { return imin + ni - 1; }
  int jmax() const { return jmin + nj - 1; }

  double max_abs() const {
    double m = 0.0;
    for (const C& c : coeff) m = std::max(m, std::abs(c));
    return m;
  }

  int term_count(double tol = 0.0) const {
    int n = 0;
    for (const C& c : coeff)
      if (std::abs(c) > tol) ++n;
    return n;
  }

  // Horner in both variables on the regular part, then the monomial prefactor.
  C eval(C z, C w) const {
    if (coeff.empty()) return {0.0, 0.0};
    C acc = {0.0, 0.0};
    for (int a = ni - 1; a >= 0; --a) {
      C row = {0.0, 0.0};
      for (int b = nj - 1; b >= 0; --b) row = row * w + coeff[std::size_t(a) * nj + b];
      acc = acc * z + row;
    }
    return acc * std::pow(z, imin) * std::pow(w, jmin);
  }

  // Coefficients of w^j for fixed z, as a dense vector over j = jmin..jmax.
  std::vector<C> w_coefficients(C z) const {
    std::vector<C> out(nj, C{0.0, 0.0});
    for (int b = 0; b < nj; ++b) {
      C acc = {0.0, 0.0};
      for (int a = ni - 1; a >= 0; --a) acc = acc * z + coeff[std::size_t(a) * nj + b];
      out[b] = acc * std::pow(z, imin);
    }
    return out;
  }

  // Drop a border of negligible coefficients and tighten the exponent box.
  LaurentPoly2 pruned(double tol) const {
    int a0 = ni, a1 = -1, b0 = nj, b1 = -1;
    for (int a = 0; a < ni; ++a)
      for (int b = 0; b < nj; ++b)
        if (std::abs(coeff[std::size_t(a) * nj + b]) > tol) {
          a0 = std::min(a0, a);
          a1 = std::max(a1, a);
          b0 = std::min(b0, b);
          b1 = std::max(b1, b);
        }
    if (a1 < 0) return zero();
    LaurentPoly2 p;
    p.imin = imin + a0;
    p.jmin = jmin + b0;
    p.ni = a1 - a0 + 1;
    p.nj = b1 - b0 + 1;
    p.coeff.resize(std::size_t(p.ni) * p.nj);
    for (int a = 0; a < p.ni; ++a)
      for (int b = 0; b < p.nj; ++b) {
        C c = coeff[std::size_t(a + a0) * nj + (b + b0)];
        if (std::abs(c) <= tol) c = {0.0, 0.0};
        p.coeff[std::size_t(a) * p.nj + b] = c;
      }
    return p;
  }

  // P shifted by the monomial z^a w^b.
  LaurentPoly2 shifted(int a, int b) const {
    LaurentPoly2 p = *this;
    p.imin += a;
    p.jmin += b;
    return p;
  }

  LaurentPoly2 conjugated_coefficients() const {
    LaurentPoly2 p = *this;
    for (C& c : p.coeff) c = std::conj(c);
    return p;
  }

  nlohmann::json to_json(double tol = 0.0) const {
    nlohmann::json arr = nlohmann::json::array();
    for (int a = 0; a < ni; ++a)
      for (int b = 0; b < nj; ++b) {
        const C c = coeff[std::size_t(a) * nj + b];
        if (std::abs(c) <= tol) continue;
        arr.push_back({{"i", imin + a}, {"j", jmin + b}, {"re", c.real()}, {"im", c.imag()}});
      }
    return nlohmann::json{{"coeffs", arr}};
  }
};

}  // namespace ckl
