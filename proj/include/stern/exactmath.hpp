#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace stern {

// Exact arithmetic substrate. Integer/Rational are GMP-backed; everything
// downstream assumes exactness (no rounding anywhere).
using Integer = mpz_class;
using Rational = mpq_class;

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// x = 0 has no p-adic valuation.
struct ValuationOfZero : MathError {
  ValuationOfZero() : MathError("ord_p(0) is undefined") {}
};
// denominator not a unit mod p^e
struct NotPAdicInteger : MathError {
  using MathError::MathError;
};
// claimed p^t | x failed; refutes a valuation bound, so callers surface it
struct DivisibilityError : MathError {
  using MathError::MathError;
};
struct ParameterError : MathError {
  using MathError::MathError;
};

// p^e with p prime. Everything modular in the artifact runs against one of
// these; canonical residues live in [0, p^e).
struct ModulusContext {
  unsigned p = 2;
  unsigned e = 1;
  Integer modulus = 2;

  ModulusContext() = default;
  ModulusContext(unsigned p_, unsigned e_);
  static ModulusContext parse(const std::string& s);  // "p^e"
  std::string str() const;

  bool operator==(const ModulusContext& o) const { return p == o.p && e == o.e; }
  bool operator!=(const ModulusContext& o) const { return !(*this == o); }
};

Integer pow_ui(const Integer& base, unsigned long e);
inline Integer ipow(unsigned long b, unsigned long e) { return pow_ui(Integer((unsigned long)b), e); }

// canonical representative in [0, m), any sign of x
Integer mod_reduce(const Integer& x, const Integer& m);

struct Residue {
  Integer value;  // in [0, ctx.modulus)
  ModulusContext ctx;
  Residue() = default;
  Residue(const Integer& v, ModulusContext c) : value(mod_reduce(v, c.modulus)), ctx(std::move(c)) {}
  bool operator==(const Residue& o) const { return value == o.value && ctx == o.ctx; }
};

// 0 outside 0 <= r <= n
Integer binomial(unsigned long n, long r);

// n-th Pascal row mod p^e by row-extension additions only (factorials are
// non-units mod p^e, so no inverse-based shortcut exists)
std::vector<Integer> pascal_row_mod(unsigned long n, const ModulusContext& ctx);

unsigned long ord_p(unsigned long p, const Integer& x);  // throws ValuationOfZero

// unsigned Stirling numbers of the first kind:
// x(x-1)...(x-n+1) = sum_i (-1)^{n-i} s(n,i) x^i, s(n,i) >= 0
Integer stirling1_unsigned(unsigned n, unsigned i);

// num * den^{-1} in [0, p^e); requires gcd(den, p) = 1
Integer rational_residue(const Rational& q, const ModulusContext& ctx);

// x / p^t, throwing DivisibilityError unless p^t | x
Integer exact_div_pow(const Integer& x, unsigned long p, unsigned long t);

std::string rat_str(const Rational& q);  // "num" or "num/den"
Rational parse_rational(const std::string& s);

}  // namespace stern
