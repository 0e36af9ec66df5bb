#pragma once

#include "stern/exactmath.hpp"

namespace stern {

// Dense univariate polynomial over Z, coefficients ascending by power.
// Normalized: no trailing zero coefficients (zero polynomial = empty vector).
struct PolyZ {
  std::vector<Integer> c;

  PolyZ() = default;
  explicit PolyZ(std::vector<Integer> coeffs) : c(std::move(coeffs)) { normalize(); }
  static PolyZ constant(const Integer& v);
  static PolyZ monomial(const Integer& v, size_t k);
  static PolyZ from_longs(const std::vector<long>& v);

  void normalize();
  bool is_zero() const { return c.empty(); }
  int degree() const { return (int)c.size() - 1; }
  Integer coeff(size_t i) const { return i < c.size() ? c[i] : Integer(0); }

  PolyZ operator+(const PolyZ& o) const;
  PolyZ operator-(const PolyZ& o) const;
  PolyZ operator*(const PolyZ& o) const;
  PolyZ scaled(const Integer& s) const;
  PolyZ shifted(size_t k) const;  // multiply by x^k
  static PolyZ power_of_binomial_1_minus_x(size_t n);  // (1-x)^n

  Integer eval(const Integer& x) const;
  Rational eval(const Rational& x) const;

  bool operator==(const PolyZ& o) const { return c == o.c; }
  bool operator!=(const PolyZ& o) const { return !(*this == o); }

  // ascending, display style: "1 - 5a + 20a^3 - 16a^5" (unit coefficients bare)
  std::string str_ascending(const std::string& sym) const;
  // descending with explicit '*': "6250*k^6 + ... + 7545*k + 2 (mod 5^7)";
  // coefficients are printed as stored (callers pass canonical residues)
  std::string str_descending(const std::string& sym, const std::string& mod_note) const;
};

}  // namespace stern
