#pragma once

// Independent reference implementations used only by the tests. Each one
// deliberately takes a different route than the library: values are compared
// across routes, never against the code under test's own intermediates.

#include <map>
#include <vector>

#include "stern/exactmath.hpp"

namespace oracle {

using stern::Integer;
using stern::Rational;

// E_0..E_{n_max} via the power-series reciprocal 1/cosh: no binomial
// recurrence involved. sech x = sum E_{2n} x^{2n}/(2n)!.
inline std::vector<Rational> euler_series(size_t n_max) {
  size_t half = n_max / 2 + 1;
  std::vector<Rational> cosh_c(half), sech_c(half);
  Integer fact = 1;
  for (size_t k = 0; k < half; ++k) {
    if (k > 0) fact *= Integer(2 * k) * Integer(2 * k - 1);
    cosh_c[k] = Rational(1) / Rational(fact);
  }
  for (size_t n = 0; n < half; ++n) {
    Rational s = n == 0 ? Rational(1) : Rational(0);
    for (size_t k = 1; k <= n; ++k) s -= cosh_c[k] * sech_c[n - k];
    sech_c[n] = s;
  }
  std::vector<Rational> out(n_max + 1, Rational(0));
  fact = 1;
  for (size_t n = 0; n <= n_max; ++n) {
    if (n > 0) fact *= (long)n;
    if (n % 2 == 0) out[n] = sech_c[n / 2] * Rational(fact);
  }
  return out;
}

// full Pascal triangle mod m by additions
inline std::vector<Integer> pascal_row(unsigned long n, const Integer& m) {
  std::vector<Integer> row{Integer(1) % m};
  for (unsigned long i = 1; i <= n; ++i) {
    std::vector<Integer> next(i + 1);
    next[0] = Integer(1) % m;
    next[i] = Integer(1) % m;
    for (unsigned long j = 1; j < i; ++j) next[j] = (row[j - 1] + row[j]) % m;
    row = std::move(next);
  }
  return row;
}

// unsigned Stirling numbers of the first kind by expanding the falling
// factorial x(x-1)...(x-n+1) and taking |coefficients|
inline Integer stirling1(unsigned n, unsigned i) {
  std::vector<Integer> poly{1};  // ascending coefficients
  for (unsigned j = 0; j < n; ++j) {
    std::vector<Integer> next(poly.size() + 1);
    for (size_t t = 0; t < poly.size(); ++t) {
      next[t + 1] += poly[t];
      next[t] -= Integer((long)j) * poly[t];
    }
    poly = std::move(next);
  }
  if (i >= poly.size()) return 0;
  return abs(poly[i]);
}

// stated coefficient tables, ascending by power, index = n
inline const std::map<int, std::vector<long>>& table_poly_a() {
  static const std::map<int, std::vector<long>> t{
      {0, {1}},
      {1, {1, -1}},
      {2, {1, -2}},
      {3, {1, -3, 0, 2}},
      {4, {1, -4, 0, 8}},
      {5, {1, -5, 0, 20, 0, -16}},
      {6, {1, -6, 0, 40, 0, -96}},
      {7, {1, -7, 0, 70, 0, -336, 0, 272}},
      {8, {1, -8, 0, 112, 0, -896, 0, 2176}},
  };
  return t;
}

// stated e_s tables, key = (parity, s), ascending by power
inline const std::map<std::pair<int, int>, std::vector<long>>& table_es() {
  static const std::map<std::pair<int, int>, std::vector<long>> t{
      {{0, 1}, {0, 1}},
      {{1, 1}, {0, 1, 0, -1}},
      {{0, 2}, {0, 0, 0, 2}},
      {{1, 2}, {0, 0, 0, 4, 0, -4}},
      {{0, 3}, {0, 0, 0, -2, 0, 12}},
      {{1, 3}, {0, 0, 0, -2, 0, 36, 0, -34}},
      {{0, 4}, {0, 0, 0, 0, 0, -32, 0, 136}},
      {{1, 4}, {0, 0, 0, 0, 0, -48, 0, 544, 0, -496}},
      {{0, 5}, {0, 0, 0, 0, 0, 16, 0, -680, 0, 2480}},
      {{1, 5}, {0, 0, 0, 0, 0, 16, 0, -1360, 0, 12400, 0, -11056}},
      {{0, 6}, {0, 0, 0, 0, 0, 0, 0, 816, 0, -19840, 0, 66336}},
      {{1, 6}, {0, 0, 0, 0, 0, 0, 0, 1088, 0, -49600, 0, 398016, 0, -349504}},
      {{0, 7}, {0, 0, 0, 0, 0, 0, 0, -272, 0, 41664, 0, -773920, 0, 2446528}},
      {{1, 7}, {0, 0, 0, 0, 0, 0, 0, -272, 0, 69440, 0, -2321760, 0, 17125696, 0, -14873104}},
  };
  return t;
}

// difference-table constants A_0..A_6 for the U family mod 5^7
inline const std::vector<long>& diff_U_b0() {
  static const std::vector<long> v{2, 75371, 31378, 73991, 12133, 36081, 43963};
  return v;
}
inline const std::vector<long>& diff_U_b2() {
  static const std::vector<long> v{78073, 6360, 26626, 22469, 55958, 28490, 28961};
  return v;
}

}  // namespace oracle
