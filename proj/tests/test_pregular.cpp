#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"
#include "stern/pregular.hpp"

using namespace stern;

namespace {
SequenceStore mem_store() {
  return SequenceStore(std::filesystem::temp_directory_path() / "sterntest_preg",
                       /*disk_enabled=*/false);
}

std::vector<std::pair<Family, long>> admissible_bases() {
  return {{Family::U, 0},  {Family::U, 2},  {Family::E, 0},  {Family::E, 2},
          {Family::S5, 0}, {Family::S5, 1}, {Family::S5, 2}, {Family::S5, 3},
          {Family::S3, 0}, {Family::S3, 1}};
}
}  // namespace

TEST_CASE("family construction and validation") {
  auto u0 = make_family(Family::U, 0);
  CHECK(u0.p == 5);
  CHECK(u0.stride == 4);
  CHECK(u0.sign == 1);
  CHECK(u0.index(3) == 12);
  CHECK_THROWS_AS(make_family(Family::U, 1), ParameterError);
  CHECK_THROWS_AS(make_family(Family::E, 3), ParameterError);
  CHECK_THROWS_AS(make_family(Family::U, -2), ParameterError);
  auto s3_even = make_family(Family::S3, 0);
  CHECK(s3_even.p == 3);
  CHECK(s3_even.stride == 2);
  CHECK(s3_even.sign == -1);
  CHECK(make_family(Family::S3, 1).sign == 1);
  CHECK(make_family(Family::S5, 1).sign == 1);
  CHECK(family_from_str("S5") == Family::S5);
  CHECK(family_str(Family::S3) == "S3");
  CHECK_THROWS_AS(family_from_str("Q"), ParameterError);
}

TEST_CASE("function values are the prefactored sequence terms") {
  auto u0 = make_family(Family::U, 0);
  // (1 + 5^0) U_0 = 2, (1 + 5^4) U_4 = 626 * 22
  CHECK(u0(0) == 2);
  CHECK(u0(1) == Integer(626) * 22);
  auto e2 = make_family(Family::E, 2);
  CHECK(e2(0) == Integer(1 - 25) * -1);  // (1 - 5^2) E_2
  auto s3 = make_family(Family::S3, 1);
  CHECK(s3(0) == Integer(1 + 3) * -1);  // (1 + 3^1) S_1
}

TEST_CASE("difference table matches the stated constants") {
  ModulusContext c57(5, 7);
  auto du0 = difference_table(make_family(Family::U, 0), 6, c57);
  auto du2 = difference_table(make_family(Family::U, 2), 6, c57);
  REQUIRE(du0.A.size() == 7);
  REQUIRE(du2.A.size() == 7);
  for (size_t i = 0; i < 7; ++i) {
    CHECK(du0.A[i] == mod_reduce(Integer(oracle::diff_U_b0()[i]), c57.modulus));
    CHECK(du2.A[i] == mod_reduce(Integer(oracle::diff_U_b2()[i]), c57.modulus));
  }
}

TEST_CASE("p-regularity defects clear the level for every admissible base") {
  for (auto [fam, b] : admissible_bases()) {
    auto f = make_family(fam, b);
    auto levels = check_pregular(f, 10);
    REQUIRE(levels.size() == 10);
    for (const auto& lvl : levels) {
      INFO(f.label, " n=", lvl.n);
      CHECK(lvl.pass);
      if (lvl.defect) CHECK(*lvl.defect >= lvl.n);
    }
  }
}

TEST_CASE("interpolating polynomial reproduces the function pointwise") {
  for (auto [fam, b] : admissible_bases()) {
    auto f = make_family(fam, b);
    auto ip = interpolate(f, 7);
    REQUIRE(ip.coeffs.size() == 7);
    for (long k = 0; k <= 25; ++k) {
      INFO(f.label, " k=", k);
      CHECK(ip.eval_mod(Integer(k)) == mod_reduce(f(k), ip.ctx.modulus));
    }
  }
}

TEST_CASE("interpolation coefficients match the stated polynomial for U, b=0") {
  auto ip = interpolate(make_family(Family::U, 0), 7);
  const std::vector<long> want{2, 7545, 72600, 59875, 51250, 50625, 6250};
  REQUIRE(ip.coeffs.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i)
    CHECK(ip.coeffs[i] == mod_reduce(Integer(want[i]), ip.ctx.modulus));
  CHECK(ip.str() ==
        "6250*k^6 + 50625*k^5 + 51250*k^4 + 59875*k^3 + 72600*k^2 + 7545*k + 2 (mod 5^7)");
}

TEST_CASE("stated lemma polynomials hold pointwise on k = 0..20") {
  for (auto id : {LemmaId::L33, LemmaId::L41, LemmaId::L51, LemmaId::L61}) {
    auto reports = reproduce_lemma(id, 0, 20);
    CHECK(!reports.empty());
    for (const auto& r : reports) {
      INFO(to_human(r));
      CHECK(r.pass);
    }
  }
}

TEST_CASE("truncated evaluation at p^{m-1}k") {
  auto store = mem_store();
  for (auto [fam, b] : admissible_bases()) {
    auto f = make_family(fam, b);
    for (long m : {5, 6})
      for (long k : {1, 2}) {
        auto r = lemma32_check(f, m, k, store);
        INFO(to_human(r));
        CHECK(r.pass);
        CHECK(!r.skipped());
      }
  }
}

TEST_CASE("truncated evaluation agrees with the interpolation route") {
  auto store = mem_store();
  for (auto fam : {Family::U, Family::S3}) {
    auto f = make_family(fam, 0);
    for (long m : {5, 6})
      for (long k : {1, 2}) {
        auto rep = lemma32_check(f, m, k, store);
        REQUIRE(rep.pass);
        auto ip = interpolate(f, (unsigned)(m + 5));
        Integer arg = ipow(f.p, (unsigned long)(m - 1)) * k;
        CHECK(ip.eval_mod(arg) == rep.lhs);
      }
  }
}

TEST_CASE("out-of-range lemma arguments are skipped") {
  auto store = mem_store();
  auto f = make_family(Family::U, 0);
  auto r1 = lemma32_check(f, 3, 1, store);
  CHECK(r1.skipped());
  auto r2 = lemma32_check(f, 5, 0, store);
  CHECK(r2.skipped());
}

TEST_CASE("theorem sweeps pass on their stated domains") {
  auto store = mem_store();

  auto t31 = verify_theorem(ThmId::T31, PGrid{.b = {0, 2, 4}, .k = {1, 2}, .m = {5}}, store);
  for (const auto& r : t31) {
    INFO(to_human(r));
    CHECK(r.pass);
    CHECK(!r.skipped());
  }

  // U_2500 - 2 U_0 is 5^4 * 7545 mod 5^10 at (b,k,m) = (0,1,5)
  REQUIRE(!t31.empty());
  CHECK(t31[0].rhs == mod_reduce(ipow(5, 4) * 7545, ipow(5, 10)));
  CHECK(*t31[0].modulus == "5^10");

  auto t41 = verify_theorem(ThmId::T41, PGrid{.b = {2}, .k = {2}, .m = {5}}, store);
  REQUIRE(t41.size() == 1);
  CHECK(t41[0].pass);
  CHECK(t41[0].rhs ==
        mod_reduce(Integer(2) * ipow(5, 4) * (4790 + 1750 * 4 + 3125 * 8 + 6250 * 16),
                   ipow(5, 10)));

  auto t51 = verify_theorem(ThmId::T51, PGrid{.b = {0, 1, 2}, .k = {1, 2}, .m = {5, 6}}, store);
  for (const auto& r : t51) {
    INFO(to_human(r));
    CHECK(r.pass);
  }
  // S_162 is 3^3 * (-495) mod 3^10 at (b,k,m) = (0,1,5): the (1-(-3)^0) S_0
  // prefactor vanishes
  REQUIRE(!t51.empty());
  CHECK(t51[0].lhs == mod_reduce(Integer(27) * -495, ipow(3, 10)));

  auto t61 = verify_theorem(ThmId::T61, PGrid{.b = {1, 2, 3}, .k = {1, 2}, .m = {5}}, store);
  for (const auto& r : t61) {
    INFO(to_human(r));
    CHECK(r.pass);
  }
}

TEST_CASE("theorem domain edges") {
  auto store = mem_store();

  auto skipped = verify_theorem(ThmId::T61, PGrid{.b = {0}, .k = {1}, .m = {5}}, store);
  REQUIRE(skipped.size() == 1);
  CHECK(skipped[0].skipped());
  CHECK(skipped[0].note->find("--allow-b0") != std::string::npos);

  auto probed = verify_theorem(ThmId::T61, PGrid{.b = {0}, .k = {1}, .m = {5}}, store,
                               /*allow_b0=*/true);
  REQUIRE(probed.size() == 1);
  CHECK(!probed[0].skipped());
  CHECK(probed[0].pass);
  CHECK(probed[0].note->find("outside the stated hypothesis") != std::string::npos);

  auto odd_b = verify_theorem(ThmId::T31, PGrid{.b = {1}, .k = {1}, .m = {5}}, store);
  REQUIRE(odd_b.size() == 1);
  CHECK(odd_b[0].skipped());

  auto low_m = verify_theorem(ThmId::T41, PGrid{.b = {0}, .k = {1}, .m = {4}}, store);
  REQUIRE(low_m.size() == 1);
  CHECK(low_m[0].skipped());
}

TEST_CASE("phi at prime powers") {
  CHECK(phi_pm(5, 1) == 4);
  CHECK(phi_pm(5, 5) == 2500);
  CHECK(phi_pm(3, 5) == 162);
  CHECK(phi_pm(2, 3) == 4);
}
