#pragma once

#include "stern/report.hpp"
#include "stern/sequences.hpp"

namespace stern {

// 2^{alpha_n - 1} <= n < 2^{alpha_n}
unsigned alpha_n(unsigned long n);

// e_s(a,b) = 2^{-s} sum_{r=0}^s binom(s,r)(-1)^r E^{(a)}_{2r+(b mod 2)}.
// Only b's parity enters; s = 0 gives E^{(a)}_{b mod 2} (needed by the A_n
// expansion at n = 7). The 2^{-s} division is asserted exact; a failure
// refutes the valuation bound behind it and surfaces as DivisibilityError.
PolyZ e_s_poly(unsigned s, int parity);
Rational e_s_value(const Rational& a, unsigned s, int parity,
                   const std::vector<Rational>* table = nullptr);

// A_r(a,b) = 2^{-r} sum_{i=0}^r binom(r,i)(-1)^i E^{(a)}_{2i+b}
Rational A_r_value(const Rational& a, unsigned r, unsigned long b,
                   const std::vector<Rational>* table = nullptr);

// Valuation bounds for the alternating sums over E^{(a)}_{2k} / E^{(a)}_{2k+1}
// (part (i), both parities of n) and over E^{(a)}_{2k+b} (part (ii),
// b = 0..b_max). One congruence-to-zero report per sum.
std::vector<VerificationReport> check_lemma22(const Rational& a, unsigned long n_max,
                                              unsigned long b_max = 6);

// Exact identity: sum_r binom(n,r)(-1)^r E^{(a)}_{2r+b} equals the double sum
// over the minimal-parity column. Compared as exact integers.
VerificationReport check_lemma23(const Rational& a, unsigned long b, unsigned long n);

// E^{(a)}_{2^m k+b} - E^{(a)}_b vs 2^{m-1}k sum_{r=1}^8 binom(2^{m-1}k-1,r-1)
// ((-2)^r/r) A_r(a,b), mod 2^{m+13+9 ord_2 a}. table_e lets a sweep share one
// modular table built at the largest exponent.
VerificationReport check_lemma24(const Rational& a, unsigned long b, unsigned long k,
                                 unsigned long m, SequenceStore& store, unsigned table_e = 0);

// A_n(a,b) vs sum_{r=0}^{7-n} binom([b/2],r)(-2)^r e_{r+n}(a,b),
// mod 2^{14-n+9 ord_2 a}, n = 0..7
VerificationReport check_eq24(const Rational& a, unsigned long b, unsigned n);

struct ClaimGrid {
  std::vector<Rational> a;
  std::vector<long> b, k, m, n;
};

enum class ADomain { ONE, EVEN, ODD };

// One congruence shape: E^{(a)}_{2^m k+b} - E^{(a)}_b ~ rhs(a,b,k,m) mod
// 2^{exponent(m, ord_2 a)}. rhs is exact integer arithmetic; reduction last.
struct CongruenceClaim {
  std::string id;
  std::string summary;
  ADomain a_dom = ADomain::ONE;
  int b_parity = -1;  // -1: any, 0: even, 1: odd
  long m_min = 1;
  ClaimGrid defaults;
  long (*exponent)(long m, long v) = nullptr;
  Integer (*rhs)(const Integer& a, long b, long k, long m) = nullptr;
};

const std::vector<CongruenceClaim>& claim_registry();
const CongruenceClaim* find_claim(const std::string& id);

// Sweeps the grid in (a, b, k, m) order. Out-of-domain points produce skip
// reports, in-domain points pass/fail reports with defect valuations. One
// shared modular table per a, built at the largest exponent in the sweep;
// groups for distinct a run on up to `jobs` threads, merged in input order.
std::vector<VerificationReport> verify_claim(const CongruenceClaim& c, const ClaimGrid& grid,
                                             SequenceStore& store, unsigned jobs = 1);

}  // namespace stern
