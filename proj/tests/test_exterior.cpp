#include <doctest.h>

#include <random>

#include "g2hom/exterior.hpp"
#include "oracles.hpp"

using namespace g2hom;

namespace {

AltForm F(const std::string& s, int n, int k, const ContextPtr& ctx = empty_context()) {
  return AltForm::parse(s, n, k, ctx);
}

Vector random_engine_vector(std::mt19937_64& rng, int n, std::vector<Rational>& raw) {
  raw = oracle::random_vector(rng, n);
  return Vector::from_rationals(raw);
}

}  // namespace

TEST_SUITE("exterior") {
  TEST_CASE("wedge examples") {
    CHECK(wedge(F("e^{12}", 5, 2), F("e^{345}", 5, 3)) == F("e^{12345}", 5, 5));
    CHECK(wedge(F("e^{13}", 4, 2), F("e^{24}", 4, 2)) == F("-e^{1234}", 4, 4));
    CHECK(wedge(F("e^{12}", 4, 2), F("e^{2}", 4, 1)).is_zero());
    CHECK(wedge(F("e^{123}", 4, 3), F("e^{34}", 4, 2)).is_zero());  // degree 5 > 4
  }

  TEST_CASE("wedge checks dimension and context") {
    CHECK_THROWS_AS(wedge(F("e^{1}", 3, 1), F("e^{1}", 4, 1)), DimensionMismatch);
    auto x = make_context({"x"}), y = make_context({"y"});
    CHECK_THROWS_AS(wedge(F("x*e^{1}", 3, 1, x), F("y*e^{2}", 3, 1, y)), ContextMismatch);
    // A symbol-free side is lifted.
    CHECK(wedge(F("x*e^{1}", 3, 1, x), F("e^{2}", 3, 1)) == F("x*e^{1 2}", 3, 2, x));
  }

  TEST_CASE("contract examples") {
    CHECK(contract_basis(1, F("e^{123}", 3, 3)) == F("e^{23}", 3, 2));
    CHECK(contract_basis(2, F("e^{123}", 3, 3)) == F("-e^{13}", 3, 2));
    CHECK(contract_basis(7, F("e^{127}+e^{347}+e^{567}", 7, 3)) == F("e^{12}+e^{34}+e^{56}", 7, 2));
    CHECK_THROWS_AS(contract_basis(1, AltForm(3, 0)), Error);
  }

  TEST_CASE("top coefficient examples") {
    CHECK(top_coefficient(F("6*e^{1234567}", 7, 7)).constant_value() == Rational(6));
    auto a4 = make_context({"a4"});
    CHECK(top_coefficient(F("-6*a4^3*e^{1 2 3 4 5 6 7}", 7, 7, a4)).str() == "-6*a4^3");
    CHECK(top_coefficient(AltForm(7, 7)).is_zero());
    CHECK_THROWS_AS(top_coefficient(F("e^{123}", 7, 3)), Error);
  }

  TEST_CASE("evaluate examples") {
    AltForm f = F("e^{123}", 3, 3);
    auto e = [](int i) { return Vector::basis(3, i); };
    CHECK(evaluate(f, {e(1), e(2), e(3)}).constant_value() == Rational(1));
    CHECK(evaluate(f, {e(2), e(1), e(3)}).constant_value() == Rational(-1));
    CHECK_THROWS_AS(evaluate(f, {e(1), e(2)}), Error);
    CHECK(evaluate_basis(f, {3, 1, 2}).constant_value() == Rational(1));
  }

  TEST_CASE("parse and render round trip") {
    auto ctx = make_context({"a1", "a2"});
    AltForm f = F("a1*e^{1 2 4} - (a2 - a1)*e^{1 3 5} + e^{2 3 7} + e^{2 1 5}", 7, 3, ctx);
    CHECK(f.str() == "a1*e^{1 2 4} - e^{1 2 5} + (a1 - a2)*e^{1 3 5} + e^{2 3 7}");
    CHECK(F(f.str(), 7, 3, ctx) == f);
    CHECK_THROWS_AS(F("e^{12}", 7, 3), ParseError);
    CHECK_THROWS_AS(F("e^{128}", 7, 3), ParseError);
    CHECK(F("e^{1 1 2}", 7, 3).is_zero());
  }

  TEST_CASE("wedge and contraction agree with the permutation oracle") {
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<int> dim(1, 7);
    for (int it = 0; it < 100; ++it) {
      int n = dim(rng);
      std::uniform_int_distribution<int> deg(0, std::min(n, 3));
      int p = deg(rng), q = std::uniform_int_distribution<int>(0, n - p)(rng);
      q = std::min(q, 3);
      oracle::Form a = oracle::random_form(rng, n, p), b = oracle::random_form(rng, n, q);
      AltForm ea = oracle::to_engine(a), eb = oracle::to_engine(b);
      CHECK(oracle::from_engine(wedge(ea, eb)) == oracle::wedge(a, b));
      std::vector<Rational> raw;
      Vector v = random_engine_vector(rng, n, raw);
      if (p >= 1) CHECK(oracle::from_engine(contract(v, ea)) == oracle::contract(raw, a));
      if (p >= 1) {
        std::vector<std::vector<Rational>> vs;
        std::vector<Vector> evs;
        for (int i = 0; i < p; ++i) {
          std::vector<Rational> r;
          evs.push_back(random_engine_vector(rng, n, r));
          vs.push_back(r);
        }
        CHECK(evaluate(ea, evs).constant_value() == oracle::evaluate(a, vs));
      }
    }
  }

  TEST_CASE("exterior algebra axioms on random instances") {
    std::mt19937_64 rng(1002);
    for (int it = 0; it < 100; ++it) {
      int n = std::uniform_int_distribution<int>(3, 7)(rng);
      int p = std::uniform_int_distribution<int>(1, 2)(rng), q = std::uniform_int_distribution<int>(1, 2)(rng);
      int r = std::uniform_int_distribution<int>(0, 2)(rng);
      AltForm a = oracle::to_engine(oracle::random_form(rng, n, p));
      AltForm b = oracle::to_engine(oracle::random_form(rng, n, q));
      AltForm c = oracle::to_engine(oracle::random_form(rng, n, r));
      CHECK(wedge(a, b) == ((p * q) % 2 ? -wedge(b, a) : wedge(b, a)));
      CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
      std::vector<Rational> raw;
      Vector v = random_engine_vector(rng, n, raw);
      AltForm lhs = contract(v, wedge(a, b));
      AltForm rhs = wedge(contract(v, a), b) + (p % 2 ? -wedge(a, contract(v, b)) : wedge(a, contract(v, b)));
      CHECK(lhs == rhs);
      if (p >= 2) CHECK(contract(v, contract(v, a)).is_zero());
    }
  }

  TEST_CASE("pullback by a permutation matrix permutes indices") {
    QMatrix swap(3, 3, Rational(0));
    swap(1, 0) = swap(0, 1) = swap(2, 2) = Rational(1);
    CHECK(pullback(F("e^{13}", 3, 2), swap) == F("e^{23}", 3, 2));
  }
}
