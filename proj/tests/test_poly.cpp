#include <doctest.h>

#include "stern/poly.hpp"

using namespace stern;

TEST_CASE("construction and normalization") {
  PolyZ z;
  CHECK(z.is_zero());
  CHECK(z.degree() == -1);
  PolyZ p(std::vector<Integer>{1, 2, 0, 0});
  CHECK(p.degree() == 1);
  CHECK(PolyZ::constant(0).is_zero());
  CHECK(PolyZ::monomial(3, 2).coeff(2) == 3);
  CHECK(PolyZ::monomial(0, 5).is_zero());
  CHECK(PolyZ::from_longs({1, -1}).degree() == 1);
}

TEST_CASE("ring operations") {
  PolyZ one_plus_x = PolyZ::from_longs({1, 1});
  PolyZ sq = one_plus_x * one_plus_x;
  CHECK(sq == PolyZ::from_longs({1, 2, 1}));
  CHECK((sq - sq).is_zero());
  CHECK(sq + PolyZ() == sq);
  CHECK(sq.scaled(-2) == PolyZ::from_longs({-2, -4, -2}));
  CHECK(PolyZ::from_longs({1, 1}).shifted(2) == PolyZ::from_longs({0, 0, 1, 1}));
  // cancellation in +: (x^2+1) + (-x^2) drops the leading term
  CHECK((PolyZ::from_longs({1, 0, 1}) + PolyZ::from_longs({0, 0, -1})).degree() == 0);
}

TEST_CASE("(1-x)^n expansion") {
  CHECK(PolyZ::power_of_binomial_1_minus_x(0) == PolyZ::from_longs({1}));
  CHECK(PolyZ::power_of_binomial_1_minus_x(1) == PolyZ::from_longs({1, -1}));
  CHECK(PolyZ::power_of_binomial_1_minus_x(4) == PolyZ::from_longs({1, -4, 6, -4, 1}));
  PolyZ direct = PolyZ::from_longs({1});
  PolyZ step = PolyZ::from_longs({1, -1});
  for (int n = 1; n <= 9; ++n) {
    direct = direct * step;
    CHECK(PolyZ::power_of_binomial_1_minus_x(n) == direct);
  }
}

TEST_CASE("evaluation") {
  PolyZ p = PolyZ::from_longs({1, -5, 0, 20, 0, -16});
  CHECK(p.eval(Integer(1)) == 0);
  CHECK(p.eval(Integer(2)) == 1 - 10 + 160 - 512);
  CHECK(p.eval(Rational(1, 2)) == Rational(1, 2));  // 1 - 5/2 + 20/8 - 16/32
  CHECK(PolyZ().eval(Integer(7)) == 0);
}

TEST_CASE("ascending rendering") {
  CHECK(PolyZ::from_longs({1, -5, 0, 20, 0, -16}).str_ascending("a") == "1 - 5a + 20a^3 - 16a^5");
  CHECK(PolyZ::from_longs({1}).str_ascending("a") == "1");
  CHECK(PolyZ().str_ascending("a") == "0");
  CHECK(PolyZ::from_longs({0, 1}).str_ascending("a") == "a");
  CHECK(PolyZ::from_longs({0, -1}).str_ascending("a") == "-a");
  CHECK(PolyZ::from_longs({0, 1, 0, -1}).str_ascending("a") == "a - a^3");
  CHECK(PolyZ::from_longs({-2, 3}).str_ascending("x") == "-2 + 3x");
}

TEST_CASE("descending rendering with modulus note") {
  PolyZ p(std::vector<Integer>{2, 7545, 72600, 59875, 51250, 50625, 6250});
  CHECK(p.str_descending("k", "5^7") ==
        "6250*k^6 + 50625*k^5 + 51250*k^4 + 59875*k^3 + 72600*k^2 + 7545*k + 2 (mod 5^7)");
  CHECK(PolyZ::from_longs({5}).str_descending("k", "5^7") == "5 (mod 5^7)");
  CHECK(PolyZ().str_descending("k", "3^2") == "0 (mod 3^2)");
  CHECK(PolyZ::from_longs({0, 3}).str_descending("k", "") == "3*k");
}
