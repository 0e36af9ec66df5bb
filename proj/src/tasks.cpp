#include "stern/tasks.hpp"

#include <algorithm>
#include <set>

namespace stern {

namespace {

std::vector<long> lseq(long lo, long hi, long step = 1) {
  std::vector<long> v;
  for (long x = lo; x <= hi; x += step) v.push_back(x);
  return v;
}

std::vector<Rational> rlist(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

long vmax(const std::vector<long>& v, long fallback) {
  return v.empty() ? fallback : *std::max_element(v.begin(), v.end());
}

TaskDef lemma22_task() {
  TaskDef t;
  t.id = "lemma-2.2";
  t.summary = "2-adic valuation bounds for the alternating binomial sums over E^{(a)}";
  t.dims = "a n b";
  t.defaults = {rlist({1, 2, 3, 4, 6}), lseq(0, 6), {}, {}, lseq(1, 10)};
  t.run = [](const ClaimGrid& g, SequenceStore&, unsigned, bool) {
    const long n_max = vmax(g.n, 10);
    const long b_max = vmax(g.b, 6);
    std::set<long> nset(g.n.begin(), g.n.end()), bset(g.b.begin(), g.b.end());
    std::vector<VerificationReport> out;
    for (const Rational& a : g.a) {
      auto reps = check_lemma22(a, (unsigned long)std::max<long>(n_max, 1),
                                (unsigned long)std::max<long>(b_max, 0));
      for (auto& r : reps) {
        if (!nset.empty() && r.n && !nset.count(*r.n)) continue;
        if (!bset.empty() && r.b && !bset.count(*r.b)) continue;
        out.push_back(std::move(r));
      }
    }
    return out;
  };
  return t;
}

TaskDef lemma23_task() {
  TaskDef t;
  t.id = "lemma-2.3";
  t.summary = "exact reduction of the shifted alternating sum to the minimal-parity column";
  t.dims = "a b n";
  t.defaults = {rlist({-4, -3, -2, -1, 1, 2, 3, 4}), lseq(0, 10), {}, {}, lseq(1, 6)};
  t.run = [](const ClaimGrid& g, SequenceStore&, unsigned, bool) {
    std::vector<VerificationReport> out;
    for (const Rational& a : g.a)
      for (long b : g.b)
        for (long n : g.n) {
          if (b < 0 || n < 1) continue;
          out.push_back(check_lemma23(a, (unsigned long)b, (unsigned long)n));
        }
    return out;
  };
  return t;
}

TaskDef lemma24_task() {
  TaskDef t;
  t.id = "lemma-2.4";
  t.summary = "E^{(a)}_{2^m k+b} - E^{(a)}_b vs the 8-term A_r expansion mod 2^{m+13+9 ord_2 a}";
  t.dims = "a b k m";
  t.defaults = {rlist({1, 2, 3}), lseq(0, 8), lseq(1, 2), lseq(4, 8), {}};
  t.run = [](const ClaimGrid& g, SequenceStore& store, unsigned, bool) {
    std::vector<VerificationReport> out;
    for (const Rational& a : g.a) {
      if (a == 0 || a.get_den() != 1)
        throw ParameterError("lemma-2.4 needs nonzero integer a values");
      const long v = (long)ord_p(2, a.get_num());
      unsigned table_e = 0;
      for (long m : g.m)
        if (m >= 1) table_e = std::max(table_e, (unsigned)(m + 13 + 9 * v));
      for (long b : g.b)
        for (long k : g.k)
          for (long m : g.m) {
            if (b < 0 || k < 1 || m < 1) continue;
            out.push_back(check_lemma24(a, (unsigned long)b, (unsigned long)k, (unsigned long)m,
                                        store, table_e));
          }
    }
    return out;
  };
  return t;
}

TaskDef eq24_task() {
  TaskDef t;
  t.id = "eq-2.4";
  t.summary = "A_n(a,b) vs the e_{r+n} expansion mod 2^{14-n+9 ord_2 a}";
  t.dims = "a b n";
  t.defaults = {rlist({1, 2, 3}), lseq(0, 8), {}, {}, lseq(0, 7)};
  t.run = [](const ClaimGrid& g, SequenceStore&, unsigned, bool) {
    std::vector<VerificationReport> out;
    for (const Rational& a : g.a)
      for (long b : g.b)
        for (long n : g.n) {
          if (b < 0 || n < 0 || n > 7) continue;
          out.push_back(check_eq24(a, (unsigned long)b, (unsigned)n));
        }
    return out;
  };
  return t;
}

TaskDef reproduce_task(LemmaId id, const char* cid, const char* summary) {
  TaskDef t;
  t.id = cid;
  t.summary = summary;
  t.dims = "k";
  t.defaults = {{}, {}, lseq(0, 20), {}, {}};
  t.run = [id](const ClaimGrid& g, SequenceStore&, unsigned, bool) {
    long lo = 0, hi = 20;
    if (!g.k.empty()) {
      lo = *std::min_element(g.k.begin(), g.k.end());
      hi = *std::max_element(g.k.begin(), g.k.end());
    }
    std::set<long> kset(g.k.begin(), g.k.end());
    auto reps = reproduce_lemma(id, std::max<long>(lo, 0), hi);
    if (!kset.empty()) {
      std::vector<VerificationReport> filtered;
      for (auto& r : reps)
        if (r.k && kset.count(*r.k)) filtered.push_back(std::move(r));
      return filtered;
    }
    return reps;
  };
  return t;
}

TaskDef lemma32_task(Family fam, std::vector<long> bases) {
  TaskDef t;
  t.id = "lemma-3.2-" + family_str(fam);
  t.summary = "truncated evaluation of the " + family_str(fam) +
              " family at p^{m-1}k mod p^{m+5}";
  t.dims = "b k m";
  t.defaults = {{}, std::move(bases), lseq(1, 2), lseq(5, 6), {}};
  t.run = [fam](const ClaimGrid& g, SequenceStore& store, unsigned, bool) {
    unsigned table_e = 0;
    for (long m : g.m)
      if (m >= 5) table_e = std::max(table_e, (unsigned)(m + 5 + 1));
    std::vector<VerificationReport> out;
    for (long b : g.b) {
      std::optional<PAdicFunction> f;
      std::string why;
      try {
        f = make_family(fam, b);
      } catch (const ParameterError& e) {
        why = e.what();
      }
      for (long k : g.k)
        for (long m : g.m) {
          if (!f) {
            VerificationReport r;
            r.claim = "lemma-3.2-" + family_str(fam);
            r.b = b;
            r.k = k;
            r.m = m;
            r.pass = true;
            r.note = "skipped: " + why;
            out.push_back(std::move(r));
            continue;
          }
          out.push_back(lemma32_check(*f, m, k, store, table_e));
        }
    }
    return out;
  };
  return t;
}

TaskDef theorem_task(ThmId id, const char* cid, const char* summary, ClaimGrid defaults) {
  TaskDef t;
  t.id = cid;
  t.summary = summary;
  t.dims = "b k m";
  t.defaults = std::move(defaults);
  t.run = [id](const ClaimGrid& g, SequenceStore& store, unsigned, bool allow_b0) {
    return verify_theorem(id, PGrid{g.b, g.k, g.m}, store, allow_b0);
  };
  return t;
}

}  // namespace

const std::vector<TaskDef>& task_registry() {
  static const std::vector<TaskDef> reg = [] {
    std::vector<TaskDef> r;
    for (const auto& c : claim_registry()) {
      TaskDef t;
      t.id = c.id;
      t.summary = c.summary;
      t.dims = "a b k m";
      t.defaults = c.defaults;
      const CongruenceClaim* cp = &c;
      t.run = [cp](const ClaimGrid& g, SequenceStore& store, unsigned jobs, bool) {
        return verify_claim(*cp, g, store, jobs);
      };
      r.push_back(std::move(t));
    }
    r.push_back(lemma22_task());
    r.push_back(lemma23_task());
    r.push_back(lemma24_task());
    r.push_back(eq24_task());
    r.push_back(lemma32_task(Family::U, {0, 2}));
    r.push_back(lemma32_task(Family::E, {0, 2}));
    r.push_back(lemma32_task(Family::S5, {0, 1, 2, 3}));
    r.push_back(lemma32_task(Family::S3, {0, 1}));
    r.push_back(reproduce_task(LemmaId::L33, "lemma-3.3",
                               "stated degree-6 interpolation of (1+5^{4k+b})U_{4k+b} mod 5^7"));
    r.push_back(reproduce_task(LemmaId::L41, "lemma-4.1",
                               "stated degree-6 interpolation of (1-5^{4k+b})E_{4k+b} mod 5^7"));
    r.push_back(reproduce_task(LemmaId::L51, "lemma-5.1",
                               "stated degree-6 interpolation of (1-(-1)^b 3^{2k+b})S_{2k+b} mod 3^7"));
    r.push_back(reproduce_task(LemmaId::L61, "lemma-6.1",
                               "stated degree-6 interpolation of (1+5^{4k+b})S_{4k+b} mod 5^7"));
    r.push_back(theorem_task(ThmId::T31, "thm-3.1",
                             "U_{k phi(5^m)+b} - (1+5^b)U_b vs 5^{m-1}k times the stated "
                             "b-polynomial mod 5^{m+5} (even b)",
                             {{}, lseq(0, 10, 2), lseq(1, 2), {5}, {}}));
    r.push_back(theorem_task(ThmId::T41, "thm-4.1",
                             "E_{k phi(5^m)+b} - (1-5^b)E_b vs 5^{m-1}k times the stated "
                             "b-polynomial mod 5^{m+5} (even b)",
                             {{}, lseq(0, 10, 2), lseq(1, 2), {5}, {}}));
    r.push_back(theorem_task(ThmId::T51, "thm-5.1",
                             "S_{k phi(3^m)+b} - (1-(-3)^b)S_b vs 3^{m-2}k times the stated "
                             "b-polynomial mod 3^{m+5}",
                             {{}, lseq(0, 9), lseq(1, 3), {5, 6, 7}, {}}));
    r.push_back(theorem_task(ThmId::T61, "thm-6.1",
                             "S_{k phi(5^m)+b} - (1+5^b)S_b vs 5^{m-1}k times the stated "
                             "b-polynomial mod 5^{m+5} (b >= 1)",
                             {{}, lseq(1, 8), lseq(1, 2), {5}, {}}));
    return r;
  }();
  return reg;
}

const TaskDef* find_task(const std::string& id) {
  for (const auto& t : task_registry())
    if (t.id == id) return &t;
  return nullptr;
}

std::vector<std::string> task_ids() {
  std::vector<std::string> out;
  for (const auto& t : task_registry()) out.push_back(t.id);
  return out;
}

}  // namespace stern
