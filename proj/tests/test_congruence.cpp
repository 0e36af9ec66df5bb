#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"
#include "stern/congruence.hpp"

using namespace stern;

namespace {
SequenceStore mem_store() {
  return SequenceStore(std::filesystem::temp_directory_path() / "sterntest_cong",
                       /*disk_enabled=*/false);
}
}  // namespace

TEST_CASE("alpha_n") {
  CHECK(alpha_n(1) == 1);
  CHECK(alpha_n(2) == 2);
  CHECK(alpha_n(7) == 3);
  CHECK(alpha_n(8) == 4);
  CHECK(alpha_n(9) == 4);
  CHECK(alpha_n(1024) == 11);
}

TEST_CASE("e_s polynomials match the stated table") {
  for (const auto& [key, coeffs] : oracle::table_es()) {
    auto [parity, s] = key;
    CHECK(e_s_poly((unsigned)s, parity) == PolyZ::from_longs(coeffs));
  }
}

TEST_CASE("e_s_value is the evaluated polynomial") {
  for (unsigned s = 1; s <= 7; ++s)
    for (int parity : {0, 1})
      for (const auto& a : {Rational(1), Rational(-3), Rational(5)})
        CHECK(e_s_value(a, s, parity) == e_s_poly(s, parity).eval(a));
  CHECK(e_s_value(Rational(7), 0, 0) == 1);  // s = 0 degenerates to E^{(a)}_0
  // a with even denominator leaves the 2-adic domain
  CHECK_THROWS_AS(e_s_value(Rational(3, 2), 2, 0), MathError);
}

TEST_CASE("A_r values") {
  for (const auto& a : {Rational(1), Rational(3), Rational(-5)}) {
    CHECK(A_r_value(a, 0, 4) == gen_euler_direct(a, 4));  // A_0 is the plain term
    CHECK(A_r_value(a, 1, 0) == a);
  }
  CHECK(A_r_value(Rational(1), 2, 0) == 2);
  CHECK_THROWS_AS(A_r_value(Rational(5, 2), 1, 0), MathError);
}

TEST_CASE("alternating-sum valuation bounds") {
  for (long av : {1, 2, 3, 4, 6}) {
    auto reports = check_lemma22(Rational(av), 10);
    CHECK(!reports.empty());
    for (const auto& r : reports) {
      INFO(to_human(r));
      CHECK(r.pass);
    }
  }
}

TEST_CASE("shifted alternating sum reduces exactly to the minimal-parity column") {
  for (long av = -4; av <= 4; ++av) {
    if (av == 0) continue;
    for (unsigned long b = 0; b <= 10; ++b)
      for (unsigned long n = 1; n <= 6; ++n) {
        auto r = check_lemma23(Rational(av), b, n);
        INFO(to_human(r));
        CHECK(r.pass);
        CHECK(!r.modulus);  // exact comparison, no reduction
      }
  }
}

TEST_CASE("eight-term difference expansion") {
  auto store = mem_store();
  auto r = check_lemma24(Rational(1), 0, 1, 1, store);
  CHECK(r.pass);
  CHECK(*r.modulus == "2^14");
  for (long av : {1, 2, 3})
    for (unsigned long b : {0ul, 3ul, 5ul})
      for (unsigned long m : {4ul, 6ul}) {
        auto rep = check_lemma24(Rational(av), b, 2, m, store);
        INFO(to_human(rep));
        CHECK(rep.pass);
      }
}

TEST_CASE("A_n expansion in e_{r+n}") {
  for (long av : {1, 2, 3})
    for (unsigned n = 0; n <= 7; ++n) {
      auto r = check_eq24(Rational(av), 6, n);
      INFO(to_human(r));
      CHECK(r.pass);
    }
}

TEST_CASE("claim registry lookup") {
  CHECK(claim_registry().size() == 10);
  CHECK(find_claim("stern-1.1") != nullptr);
  CHECK(find_claim("thm-2.3-proof-variant") != nullptr);
  CHECK(find_claim("nosuch") == nullptr);
  for (const auto& c : claim_registry()) {
    CHECK(c.exponent != nullptr);
    CHECK(c.rhs != nullptr);
    CHECK(!c.defaults.a.empty());
  }
}

TEST_CASE("classical congruence spot values") {
  auto store = mem_store();

  // E_6 - E_2 = -60 is 4 mod 8, matching 2^2 k at k=1
  auto reps = verify_claim(*find_claim("stern-1.1"),
                           ClaimGrid{.a = {Rational(1)}, .b = {2}, .k = {1}, .m = {2}}, store);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].pass);
  CHECK(reps[0].lhs == 4);
  CHECK(reps[0].rhs == 4);
  CHECK(*reps[0].modulus == "2^3");

  // E_32 - E_0 against 2^5(501 + 2^5 * 15) mod 2^15
  auto cor = verify_claim(*find_claim("cor-2.1"),
                          ClaimGrid{.a = {Rational(1)}, .b = {0}, .k = {1}, .m = {5}}, store);
  REQUIRE(cor.size() == 1);
  CHECK(cor[0].pass);
  CHECK(cor[0].rhs == Integer(32 * (501 + 32 * 15)) % ipow(2, 15));
  CHECK(*cor[0].modulus == "2^15");
}

TEST_CASE("out-of-domain grid points are skipped with a reason") {
  auto store = mem_store();
  auto skipped_note = [](const VerificationReport& r) {
    REQUIRE(r.skipped());
    return *r.note;
  };

  auto r1 = verify_claim(*find_claim("stern-1.1"),
                         ClaimGrid{.a = {Rational(2)}, .b = {0}, .k = {1}, .m = {3}}, store);
  REQUIRE(r1.size() == 1);
  CHECK(skipped_note(r1[0]).find("a = 1") != std::string::npos);
  CHECK(r1[0].pass);  // skips never fail a sweep

  auto r2 = verify_claim(*find_claim("thm-2.2"),
                         ClaimGrid{.a = {Rational(2)}, .b = {0}, .k = {1}, .m = {6}}, store);
  REQUIRE(r2.size() == 1);
  CHECK(skipped_note(r2[0]).find("odd") != std::string::npos);

  auto r3 = verify_claim(*find_claim("eq-1.5-odd-ab"),
                         ClaimGrid{.a = {Rational(3)}, .b = {2}, .k = {1}, .m = {3}}, store);
  REQUIRE(r3.size() == 1);
  CHECK(skipped_note(r3[0]).find("odd b") != std::string::npos);

  auto r4 = verify_claim(*find_claim("thm-2.1"),
                         ClaimGrid{.a = {Rational(2)}, .b = {0}, .k = {1}, .m = {3}}, store);
  REQUIRE(r4.size() == 1);
  CHECK(skipped_note(r4[0]).find("m >=") != std::string::npos);

  CHECK(all_pass(r1));
}

TEST_CASE("the refined congruence implies the coarse one") {
  // rhs of thm-2.1 and of (1.5) for even a must agree mod 2^{m+4+3 ord_2 a}:
  // both stand in for the same difference at their stated moduli.
  const auto* fine = find_claim("thm-2.1");
  const auto* coarse = find_claim("eq-1.5-even-a");
  for (long av : {2, 4, 6, 10})
    for (long b : {0, 3, 6, 9})
      for (long k : {1, 2})
        for (long m : {4, 5, 6}) {
          long v = (long)ord_p(2, Integer(av));
          Integer mod15 = ipow(2, (unsigned long)coarse->exponent(m, v));
          Integer diff = fine->rhs(Integer(av), b, k, m) - coarse->rhs(Integer(av), b, k, m);
          INFO("a=", av, " b=", b, " k=", k, " m=", m);
          CHECK(mod_reduce(diff, mod15) == 0);
        }
}

TEST_CASE("corollary instances equal the theorem at a = 1") {
  auto store = mem_store();
  ClaimGrid g{.a = {Rational(1)}, .b = {0, 2, 4}, .k = {1, 2}, .m = {5, 6}};
  auto thm = verify_claim(*find_claim("thm-2.2"), g, store);
  auto cor = verify_claim(*find_claim("cor-2.1"), g, store);
  REQUIRE(thm.size() == cor.size());
  for (size_t i = 0; i < thm.size(); ++i) {
    CHECK(thm[i].pass);
    CHECK(cor[i].pass);
    CHECK(thm[i].lhs == cor[i].lhs);
    CHECK(thm[i].rhs == cor[i].rhs);
    CHECK(*thm[i].modulus == *cor[i].modulus);
  }
}

TEST_CASE("parallel sweeps merge deterministically") {
  auto store1 = mem_store();
  auto store2 = mem_store();
  ClaimGrid g{.a = {Rational(1), Rational(3), Rational(-1), Rational(5)},
              .b = {0, 2, 4},
              .k = {1, 2},
              .m = {5, 6}};
  auto serial = verify_claim(*find_claim("thm-2.2"), g, store1, 1);
  auto parallel = verify_claim(*find_claim("thm-2.2"), g, store2, 4);
  REQUIRE(serial.size() == parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) CHECK(to_jsonl(serial[i]) == to_jsonl(parallel[i]));
}
