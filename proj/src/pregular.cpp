#include "stern/pregular.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace stern {

Family family_from_str(const std::string& s) {
  if (s == "U") return Family::U;
  if (s == "E") return Family::E;
  if (s == "S5") return Family::S5;
  if (s == "S3") return Family::S3;
  throw ParameterError("unknown family '" + s + "' (expected U, E, S5 or S3)");
}

std::string family_str(Family f) {
  switch (f) {
    case Family::U: return "U";
    case Family::E: return "E";
    case Family::S5: return "S5";
    case Family::S3: return "S3";
  }
  return "?";
}

namespace {

// shared exact tables for U, E, S; value copied out under the lock
Integer exact_seq_value(SeqTag tag, size_t idx) {
  static std::mutex mu;
  static std::vector<Rational> u_tab, e_tab, s_tab;
  std::lock_guard<std::mutex> lk(mu);
  auto& tab = tag == SeqTag::U ? u_tab : (tag == SeqTag::EULER ? e_tab : s_tab);
  if (tab.size() <= idx) {
    const size_t n = idx + 16;
    switch (tag) {
      case SeqTag::U: tab = u_seq(n).exact; break;
      case SeqTag::EULER: tab = euler_exact(n).exact; break;
      default: tab = s_seq(n).exact; break;
    }
  }
  return tab[idx].get_num();
}

}  // namespace

Integer PAdicFunction::operator()(long k) const {
  if (k < 0) throw ParameterError("family argument k must be >= 0");
  const long idx = index(k);
  Integer seqv = exact_seq_value(seq_id().tag, (size_t)idx);
  return (1 + sign * ipow(p, (unsigned long)idx)) * seqv;
}

SequenceId PAdicFunction::seq_id() const {
  switch (fam) {
    case Family::U: return SequenceId::u();
    case Family::E: return SequenceId::euler();
    case Family::S5:
    case Family::S3: return SequenceId::s();
  }
  return SequenceId::euler();
}

PAdicFunction make_family(Family fam, long b) {
  if (b < 0) throw ParameterError("base residue b must be >= 0");
  PAdicFunction f;
  f.fam = fam;
  f.b = b;
  switch (fam) {
    case Family::U:
      if (b % 2) throw ParameterError("family U needs even b (U vanishes at odd indices)");
      f.p = 5, f.stride = 4, f.sign = 1;
      break;
    case Family::E:
      if (b % 2) throw ParameterError("family E needs even b (E vanishes at odd indices)");
      f.p = 5, f.stride = 4, f.sign = -1;
      break;
    case Family::S5:
      f.p = 5, f.stride = 4, f.sign = 1;
      break;
    case Family::S3:
      f.p = 3, f.stride = 2, f.sign = (b % 2 == 0) ? -1 : 1;
      break;
  }
  f.label = family_str(fam) + "[b=" + std::to_string(b) + "]";
  return f;
}

// ---------------------------------------------------------------------------

namespace {

Integer alt_binom_sum(const std::vector<Integer>& fv, unsigned n) {
  Integer s = 0;
  for (unsigned r = 0; r <= n; ++r) {
    Integer t = binomial(n, (long)r) * fv[r];
    if (r & 1)
      s -= t;
    else
      s += t;
  }
  return s;
}

std::vector<Integer> eval_prefix(const PAdicFunction& f, unsigned top) {
  std::vector<Integer> fv(top + 1);
  for (unsigned r = 0; r <= top; ++r) fv[r] = f((long)r);
  return fv;
}

}  // namespace

DifferenceTable difference_table(const PAdicFunction& f, unsigned m_max,
                                 const ModulusContext& ctx) {
  if (ctx.p != f.p)
    throw ParameterError("difference_table: modulus prime " + std::to_string(ctx.p) +
                         " does not match the family's p = " + std::to_string(f.p));
  const auto fv = eval_prefix(f, m_max);
  DifferenceTable out{f.label, ctx, {}};
  out.A.reserve(m_max + 1);
  for (unsigned m = 0; m <= m_max; ++m) {
    Integer s = alt_binom_sum(fv, m);
    Integer a = exact_div_pow(s, f.p, m);  // DivisibilityError refutes p-regularity at level m
    out.A.push_back(mod_reduce(a, ctx.modulus));
  }
  return out;
}

std::vector<PRegularLevel> check_pregular(const PAdicFunction& f, unsigned n_max) {
  const auto fv = eval_prefix(f, n_max);
  std::vector<PRegularLevel> out;
  for (unsigned n = 1; n <= n_max; ++n) {
    PRegularLevel lv;
    lv.n = (long)n;
    Integer s = alt_binom_sum(fv, n);
    if (s != 0) {
      lv.defect = (long)ord_p(f.p, s);
      lv.pass = *lv.defect >= (long)n;
    }
    out.push_back(lv);
  }
  return out;
}

InterpolationResult interpolate(const PAdicFunction& f, unsigned n) {
  if (n < 1) throw ParameterError("interpolate needs n >= 1");
  const auto fv = eval_prefix(f, n - 1);
  std::vector<Rational> A(n);
  for (unsigned r = 0; r < n; ++r) A[r] = Rational(alt_binom_sum(fv, r)) / Rational(ipow(f.p, r));

  InterpolationResult res;
  res.n = n;
  res.ctx = ModulusContext(f.p, n);
  res.coeffs.resize(n);
  res.coeffs[0] = rational_residue(A[0], res.ctx);
  for (unsigned i = 1; i < n; ++i) {
    Rational s = 0;
    for (unsigned r = i; r < n; ++r) {
      Integer fact;
      mpz_fac_ui(fact.get_mpz_t(), r);
      Rational pr_over_rf(ipow(f.p, r), fact);
      pr_over_rf.canonicalize();
      s += Rational(stirling1_unsigned(r, i)) * pr_over_rf * A[r];
    }
    if (i & 1) s = -s;
    res.coeffs[i] = rational_residue(s, res.ctx);
  }
  return res;
}

std::string InterpolationResult::str() const {
  return PolyZ(coeffs).str_descending("k", ctx.str());
}

Integer InterpolationResult::eval_mod(const Integer& k) const {
  Integer v = 0;
  for (size_t i = coeffs.size(); i-- > 0;) v = mod_reduce(v * k + coeffs[i], ctx.modulus);
  return v;
}

// ---------------------------------------------------------------------------

VerificationReport lemma32_check(const PAdicFunction& f, long m, long k, SequenceStore& store,
                                 unsigned table_e) {
  VerificationReport rep;
  rep.claim = "lemma-3.2-" + family_str(f.fam);
  rep.b = f.b;
  rep.k = k;
  rep.m = m;
  if (m < 5) {
    rep.note = "skipped: lemma-3.2 requires m >= 5";
    rep.pass = true;
    return rep;
  }
  if (k < 1) {
    rep.note = "skipped: lemma-3.2 requires k >= 1";
    rep.pass = true;
    return rep;
  }
  if (m > 12 || k > 1000) throw ParameterError("lemma-3.2 grid point too large");
  const unsigned e = (unsigned)(m + 5);
  const double idx_est = (double)f.stride * std::pow((double)f.p, m - 1) * k + f.b;
  if (idx_est > 5e7) throw ParameterError("lemma-3.2 index exceeds the 5*10^7 table cap");
  const long idx = (long)f.stride * ipow(f.p, (unsigned long)(m - 1)).get_si() * k + f.b;

  const ModulusContext claim_ctx(f.p, e);
  const ModulusContext table_ctx(f.p, std::max({table_e, e + 1, 11u}));
  auto T = store.get(f.seq_id(), Mode::MODULAR, table_ctx, (size_t)idx);

  // f at K = p^{m-1}k carries (1 + sign p^{idx}); the power vanishes mod p^e
  // whenever idx >= e (always on sane grids), kept exact below regardless
  Integer coef = 1;
  if ((unsigned long)idx < e) coef += f.sign * ipow(f.p, (unsigned long)idx);
  rep.modulus = claim_ctx.str();
  rep.lhs = mod_reduce(T->at_mod((size_t)idx) * coef, claim_ctx.modulus);

  const auto fv = eval_prefix(f, 6);
  Rational acc = 0;
  for (unsigned s = 1; s <= 6; ++s) {
    Rational term(alt_binom_sum(fv, s), Integer(s));
    term.canonicalize();
    acc += term;
  }
  Rational rhs = Rational(fv[0]) - Rational(ipow(f.p, (unsigned long)(m - 1)) * k) * acc;
  rep.rhs = rational_residue(rhs, claim_ctx);
  rep.pass = rep.lhs == rep.rhs;
  if (!rep.pass)
    rep.defect = (long)ord_p(f.p, mod_reduce(rep.lhs - rep.rhs, claim_ctx.modulus));
  rep.note = f.label + ", inner sign (-1)^r per the proof's inversion";
  return rep;
}

// ---------------------------------------------------------------------------
// stated lemma/theorem polynomials (ascending coefficients)

namespace {

struct LemmaSpec {
  const char* claim;
  Family fam;
  std::vector<long> bases;
  std::vector<std::vector<long>> coeffs;  // parallel to bases
};

const LemmaSpec& lemma_spec(LemmaId id) {
  static const LemmaSpec l33{"lemma-3.3",
                             Family::U,
                             {0, 2},
                             {{2, 7545, 72600, 59875, 51250, 50625, 6250},
                              {-52, 37500, 5575, 48875, 10625, 40625, 59375}}};
  static const LemmaSpec l41{"lemma-4.1",
                             Family::E,
                             {0, 2},
                             {{0, 50005, 54500, 64875, 18750, 11875, 31250},
                              {24, 74290, 4625, 60375, 68750, 10625, 31250}}};
  static const LemmaSpec l51{"lemma-5.1",
                             Family::S3,
                             {0, 1},
                             {{0, 564, 1179, 981, 621, 1620, 1620},
                              {2183, 888, 549, 1197, 1809, 2106, 324}}};
  static const LemmaSpec l61{"lemma-6.1",
                             Family::S5,
                             {0, 1, 2, 3},
                             {{2, 930, 21500, -14250, -6250, 33750},
                              {-6, 7370, 23525, 40000, 18750, 22500, 9375},
                              {-78, 44290, 64650, 30875, 56250, 41875, 25000},
                              {1386, 14525, -8550, 67250, -9375, 40625, -3125}}};
  switch (id) {
    case LemmaId::L33: return l33;
    case LemmaId::L41: return l41;
    case LemmaId::L51: return l51;
    case LemmaId::L61: return l61;
  }
  return l33;
}

struct ThmSpec {
  const char* claim;
  Family fam;          // supplies p, stride, factor sign, sequence
  unsigned prefac_drop;  // prefactor p^{m-prefac_drop} k
  int b_mod;             // polynomial selected by b mod b_mod
  std::vector<std::pair<int, std::vector<long>>> polys;
  bool even_b_only;
  long b_min;
};

const ThmSpec& thm_spec(ThmId id) {
  static const ThmSpec t31{"thm-3.1", Family::U, 1, 4,
                           {{0, {7545, 5050, -5375, 1250, 3125, 9375}},
                            {2, {-1575, 5350, 2250, 7500, 0, 3125}}},
                           true, 0};
  static const ThmSpec t41{"thm-4.1", Family::E, 1, 4,
                           {{0, {3130, -4000, 3375, 3125, -3125}},
                            {2, {4790, 0, 1750, 3125, 6250}}},
                           true, 0};
  static const ThmSpec t51{"thm-5.1", Family::S3, 2, 2,
                           {{0, {-495, 1350, 567, -162, 972, -729}},
                            {1, {1422, 1242, -891, -81, 243, 729}}},
                           false, 0};
  static const ThmSpec t61{"thm-6.1", Family::S5, 1, 4,
                           {{0, {930, -4875, -4625, -6250, -3125}},
                            {1, {4670, 1450, 1250, 6250, 3125, 6250}},
                            {2, {-4235, 3700, -3000, 6250, -9375, 6250}},
                            {3, {3725, -1025, -2625, 6250, 0, 3125}}},
                           false, 1};
  switch (id) {
    case ThmId::T31: return t31;
    case ThmId::T41: return t41;
    case ThmId::T51: return t51;
    case ThmId::T61: return t61;
  }
  return t31;
}

}  // namespace

std::vector<VerificationReport> reproduce_lemma(LemmaId id, long k_lo, long k_hi) {
  if (k_lo < 0) throw ParameterError("reproduce_lemma needs k >= 0");
  if (k_hi > 5000) throw ParameterError("reproduce_lemma k range too large");
  const LemmaSpec& spec = lemma_spec(id);
  std::vector<VerificationReport> out;
  for (size_t bi = 0; bi < spec.bases.size(); ++bi) {
    const long b = spec.bases[bi];
    const PAdicFunction f = make_family(spec.fam, b);
    const PolyZ poly = PolyZ::from_longs(spec.coeffs[bi]);
    const ModulusContext ctx(f.p, 7);
    for (long k = k_lo; k <= k_hi; ++k) {
      VerificationReport r;
      r.claim = spec.claim;
      r.b = b;
      r.k = k;
      r.modulus = ctx.str();
      r.lhs = mod_reduce(f(k), ctx.modulus);
      r.rhs = mod_reduce(poly.eval(Integer(k)), ctx.modulus);
      r.pass = r.lhs == r.rhs;
      if (!r.pass) r.defect = (long)ord_p(f.p, mod_reduce(r.lhs - r.rhs, ctx.modulus));
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<VerificationReport> verify_theorem(ThmId id, const PGrid& grid, SequenceStore& store,
                                               bool allow_b0) {
  const ThmSpec& spec = thm_spec(id);
  const PAdicFunction proto = make_family(spec.fam, 0);  // p/stride/sequence carrier
  const unsigned p = proto.p, stride = proto.stride;

  auto skip_note = [&](long b, long k, long m) -> std::optional<std::string> {
    if (b < 0) return "skipped: theorem requires b >= 0";
    if (spec.even_b_only && b % 2 != 0) return "skipped: theorem requires even b";
    if (b < spec.b_min && !(allow_b0 && b == 0))
      return "skipped: theorem states b >= " + std::to_string(spec.b_min) +
             " (pass --allow-b0 to probe b = 0)";
    if (k < 1) return "skipped: theorem requires k >= 1";
    if (m < 5) return "skipped: theorem requires m >= 5";
    return std::nullopt;
  };

  // shared table at one guard digit above the largest instance modulus
  unsigned emax = 0;
  long idxmax = 0;
  for (long b : grid.b)
    for (long k : grid.k)
      for (long m : grid.m) {
        if (skip_note(b, k, m)) continue;
        if (m > 12 || k > 1000 || b > 100000)
          throw ParameterError("theorem grid point too large for table construction");
        emax = std::max(emax, (unsigned)(m + 5));
        const long idx = (long)stride * ipow(p, (unsigned long)(m - 1)).get_si() * k + b;
        idxmax = std::max(idxmax, idx);
      }
  std::shared_ptr<const SequenceTable> T;
  if (idxmax > 0) {
    if (idxmax > 50'000'000) throw ParameterError("grid index exceeds the 5*10^7 table cap");
    T = store.get(proto.seq_id(), Mode::MODULAR, ModulusContext(p, std::max(emax + 1, 11u)),
                  (size_t)idxmax);
  }

  std::vector<VerificationReport> out;
  for (long b : grid.b)
    for (long k : grid.k)
      for (long m : grid.m) {
        VerificationReport r;
        r.claim = spec.claim;
        r.b = b;
        r.k = k;
        r.m = m;
        if (auto why = skip_note(b, k, m)) {
          r.note = *why;
          r.pass = true;
          out.push_back(std::move(r));
          continue;
        }
        const ModulusContext ctx(p, (unsigned)(m + 5));
        const long idx = (long)stride * ipow(p, (unsigned long)(m - 1)).get_si() * k + b;
        const PAdicFunction fb = make_family(spec.fam, b);
        r.modulus = ctx.str();
        r.lhs = mod_reduce(T->at_mod((size_t)idx) - fb(0), ctx.modulus);

        const std::vector<long>* coeffs = nullptr;
        for (const auto& [res, cs] : spec.polys)
          if (b % spec.b_mod == res) coeffs = &cs;
        if (!coeffs) throw MathError("no stated polynomial for b residue");  // unreachable
        const Integer prefac = ipow(p, (unsigned long)(m - (long)spec.prefac_drop)) * k;
        r.rhs = mod_reduce(prefac * PolyZ::from_longs(*coeffs).eval(Integer(b)), ctx.modulus);
        r.pass = r.lhs == r.rhs;
        if (!r.pass) r.defect = (long)ord_p(p, mod_reduce(r.lhs - r.rhs, ctx.modulus));
        if (b == 0 && spec.b_min > 0)
          r.note = "b = 0 probed via --allow-b0; outside the stated hypothesis";
        out.push_back(std::move(r));
      }
  return out;
}

Integer phi_pm(unsigned p, unsigned m) {
  if (m == 0) return 1;
  return ipow(p, m - 1) * (long)(p - 1);
}

}  // namespace stern
