#pragma once

#include "stern/report.hpp"
#include "stern/sequences.hpp"

namespace stern {

// the four built-in p-regular families:
//   U : k -> (1 + 5^{4k+b}) U_{4k+b}      (even b)
//   E : k -> (1 - 5^{4k+b}) E_{4k+b}      (even b)
//   S5: k -> (1 + 5^{4k+b}) S_{4k+b}
//   S3: k -> (1 - (-1)^b 3^{2k+b}) S_{2k+b}
enum class Family { U, E, S5, S3 };
Family family_from_str(const std::string& s);
std::string family_str(Family f);

// One family member, exact-evaluation form. sign is the coefficient c in
// f(k) = (1 + c p^{stride k + b}) Seq_{stride k + b}.
struct PAdicFunction {
  Family fam = Family::U;
  long b = 0;
  unsigned p = 5;
  unsigned stride = 4;
  int sign = 1;
  std::string label;

  Integer operator()(long k) const;
  long index(long k) const { return (long)stride * k + b; }
  SequenceId seq_id() const;
};

// validates parity/sign conventions; throws ParameterError on inconsistent b
PAdicFunction make_family(Family fam, long b);

struct DifferenceTable {
  std::string label;
  ModulusContext ctx;
  std::vector<Integer> A;  // A_m = p^{-m} sum binom(m,r)(-1)^r f(r), canonical residues
};
// every p^{-m} division is asserted exact (DivisibilityError refutes
// p-regularity at that level)
DifferenceTable difference_table(const PAdicFunction& f, unsigned m_max,
                                 const ModulusContext& ctx);

struct PRegularLevel {
  long n = 0;
  std::optional<long> defect;  // ord_p of the n-th alternating sum; unset when the sum is 0
  bool pass = true;            // defect >= n (vacuous for a zero sum)
};
std::vector<PRegularLevel> check_pregular(const PAdicFunction& f, unsigned n_max);

struct InterpolationResult {
  unsigned n = 1;
  ModulusContext ctx;           // p^n
  std::vector<Integer> coeffs;  // ascending a_0..a_{n-1}, canonical residues

  std::string str() const;  // "c_{n-1}*k^{n-1} + ... + c0 (mod p^n)"
  Integer eval_mod(const Integer& k) const;
};
// Stirling-route coefficients: a_0 = A_0, a_i = (-1)^i sum_{r=i}^{n-1}
// s(r,i) (p^r/r!) A_r, with A_r exact rationals and p^r/r! in Z_p
InterpolationResult interpolate(const PAdicFunction& f, unsigned n);

// f(p^{m-1}k) vs f(0) - p^{m-1}k sum_{s=1}^6 (1/s) sum_{r=0}^s
// binom(s,r)(-1)^r f(r), mod p^{m+5}. LHS comes from the modular sequence
// engine at index stride p^{m-1}k + b; the inner sign follows the proof's
// binomial inversion. table_e >= m+5 lets a sweep share one table.
VerificationReport lemma32_check(const PAdicFunction& f, long m, long k, SequenceStore& store,
                                 unsigned table_e = 0);

enum class LemmaId { L33, L41, L51, L61 };
enum class ThmId { T31, T41, T51, T61 };

// pointwise f(k) vs the stated degree-<=6 polynomial, mod 5^7 / 3^7,
// for every base residue the lemma covers
std::vector<VerificationReport> reproduce_lemma(LemmaId id, long k_lo, long k_hi);

struct PGrid {
  std::vector<long> b, k, m;
};
// Seq_{k phi(p^m)+b} - (1 +- p^b) Seq_b vs the stated prefactor times the
// stated b-polynomial, mod p^{m+5}. Out-of-domain grid points are skipped
// with a note; thm-6.1 admits b=0 only behind allow_b0.
std::vector<VerificationReport> verify_theorem(ThmId id, const PGrid& grid, SequenceStore& store,
                                               bool allow_b0 = false);

Integer phi_pm(unsigned p, unsigned m);

}  // namespace stern
