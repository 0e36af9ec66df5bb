#include "stern/exactmath.hpp"

#include <mutex>

namespace stern {

ModulusContext::ModulusContext(unsigned p_, unsigned e_) : p(p_), e(e_) {
  if (e_ < 1) throw ParameterError("modulus exponent must be >= 1");
  Integer pz((unsigned long)p_);
  if (p_ < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0)
    throw ParameterError("modulus base must be prime, got " + std::to_string(p_));
  modulus = pow_ui(pz, e_);
}

ModulusContext ModulusContext::parse(const std::string& s) {
  auto caret = s.find('^');
  if (caret == std::string::npos)
    throw ParameterError("modulus must be written p^e, got '" + s + "'");
  try {
    size_t used = 0;
    unsigned long p = std::stoul(s.substr(0, caret), &used);
    if (used != caret) throw ParameterError("bad modulus '" + s + "'");
    std::string es = s.substr(caret + 1);
    unsigned long e = std::stoul(es, &used);
    if (used != es.size()) throw ParameterError("bad modulus '" + s + "'");
    return ModulusContext((unsigned)p, (unsigned)e);
  } catch (const std::logic_error&) {
    throw ParameterError("bad modulus '" + s + "'");
  }
}

std::string ModulusContext::str() const {
  return std::to_string(p) + "^" + std::to_string(e);
}

Integer pow_ui(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Integer mod_reduce(const Integer& x, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer binomial(unsigned long n, long r) {
  if (r < 0 || (unsigned long)r > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, (unsigned long)r);
  return out;
}

std::vector<Integer> pascal_row_mod(unsigned long n, const ModulusContext& ctx) {
  std::vector<Integer> row(n + 1);
  row[0] = mod_reduce(1, ctx.modulus);
  for (unsigned long i = 1; i <= n; ++i) {
    row[i] = 0;
    for (unsigned long j = i; j >= 1; --j) {
      row[j] += row[j - 1];
      if (row[j] >= ctx.modulus) row[j] -= ctx.modulus;
    }
  }
  return row;
}

unsigned long ord_p(unsigned long p, const Integer& x) {
  if (x == 0) throw ValuationOfZero();
  Integer dummy, pz((unsigned long)p);
  return mpz_remove(dummy.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t());
}

namespace {
// triangle rows s(0,*)..s(n,*), grown on demand
std::vector<std::vector<Integer>>& stirling_rows(unsigned n) {
  static std::vector<std::vector<Integer>> rows{{Integer(1)}};
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  while (rows.size() <= n) {
    unsigned m = rows.size();  // building row m from row m-1
    const auto& prev = rows[m - 1];
    std::vector<Integer> row(m + 1);
    row[0] = 0;
    for (unsigned i = 1; i <= m; ++i) {
      Integer v = (i - 1 < prev.size()) ? prev[i - 1] : Integer(0);
      if (i < prev.size()) v += (m - 1) * prev[i];
      row[i] = v;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}
}  // namespace

Integer stirling1_unsigned(unsigned n, unsigned i) {
  if (i > n) return 0;
  return stirling_rows(n)[n][i];
}

Integer rational_residue(const Rational& q, const ModulusContext& ctx) {
  const Integer& den = q.get_den();
  if (mpz_divisible_ui_p(den.get_mpz_t(), ctx.p))
    throw NotPAdicInteger("denominator " + den.get_str() + " is not a unit mod " + ctx.str());
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), ctx.modulus.get_mpz_t()) == 0)
    throw NotPAdicInteger("denominator " + den.get_str() + " not invertible mod " + ctx.str());
  return mod_reduce(q.get_num() * inv, ctx.modulus);
}

Integer exact_div_pow(const Integer& x, unsigned long p, unsigned long t) {
  if (x == 0) return 0;
  Integer pt = ipow(p, t);
  if (!mpz_divisible_p(x.get_mpz_t(), pt.get_mpz_t()))
    throw DivisibilityError(pt.get_str() + " does not divide " + x.get_str());
  Integer r;
  mpz_divexact(r.get_mpz_t(), x.get_mpz_t(), pt.get_mpz_t());
  return r;
}

std::string rat_str(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ParameterError("empty rational");
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw ParameterError("bad rational '" + s + "'");
  if (q.get_den() == 0) throw ParameterError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace stern
