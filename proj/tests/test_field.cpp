#include <vector>

#include "doctest.h"
#include "stingray/field.hpp"
#include "stingray/poly.hpp"

using namespace stingray;

namespace {

// Test oracle: irreducibility by trial division over all lower-degree monic
// polynomials (independent of the Rabin-style implementation).
bool irreducible_by_trial_division(const Poly& f, const Field& fld) {
  const int n = f.degree();
  const uint64_t q = fld.q();
  for (int dd = 1; dd <= n / 2; ++dd) {
    uint64_t total = 1;
    for (int i = 0; i < dd; ++i) total *= q;
    for (uint64_t m = 0; m < total; ++m) {
      std::vector<uint32_t> c(dd + 1, 0);
      c[dd] = 1;
      uint64_t rest = m;
      for (int i = 0; i < dd; ++i) {
        c[i] = static_cast<uint32_t>(rest % q);
        rest /= q;
      }
      if (poly_mod(f, Poly{c}, fld).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("make_field decomposes prime powers") {
  Field f5(5);
  CHECK(f5.p() == 5);
  CHECK(f5.k() == 1);
  CHECK(f5.q() == 5);

  Field f4(4);
  CHECK(f4.p() == 2);
  CHECK(f4.k() == 2);
  CHECK(f4.modulus() == std::vector<uint32_t>{1, 1, 1});  // t^2 + t + 1

  CHECK_THROWS_AS(make_field(12), NotAPrimePower);
  CHECK_THROWS_AS(make_field(1), NotAPrimePower);
  CHECK_THROWS_AS(make_field(0), NotAPrimePower);
  CHECK_THROWS_AS(make_field(2 * 3 * 5), NotAPrimePower);
}

TEST_CASE("lexicographically least moduli") {
  CHECK(Field(8).modulus() == std::vector<uint32_t>{1, 0, 1, 1});   // t^3 + t^2 + 1
  CHECK(Field(9).modulus() == std::vector<uint32_t>{1, 0, 1});      // t^2 + 1
  CHECK(Field(16).modulus() == std::vector<uint32_t>{1, 0, 0, 1, 1});
  CHECK(Field(27).modulus().size() == 4);
}

TEST_CASE("basic arithmetic examples") {
  Field f5(5);
  CHECK(f5.inv({2}).index == 3);  // 2 * 3 = 6 = 1 mod 5
  CHECK_THROWS_AS(f5.inv(f5.zero()), DivisionByZero);

  Field f4(4);
  const FieldElement t = f4.from_coefficients({0, 1});
  const FieldElement t_plus_1 = f4.from_coefficients({1, 1});
  CHECK(f4.mul(t, t) == t_plus_1);  // t^2 = t + 1 mod t^2+t+1

  for (uint32_t q : {2u, 3u, 4u, 5u, 9u}) {
    Field f(q);
    for (uint32_t a = 0; a < q; ++a)
      CHECK(f.add(f.element(a), f.neg(f.element(a))) == f.zero());
  }
}

TEST_CASE("field axioms exhaustively for q <= 9") {
  for (uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    Field f(q);
    for (uint32_t a = 0; a < q; ++a) {
      for (uint32_t b = 0; b < q; ++b) {
        CHECK(f.add_idx(a, b) == f.add_idx(b, a));
        CHECK(f.mul_idx(a, b) == f.mul_idx(b, a));
        for (uint32_t c = 0; c < q; ++c) {
          CHECK(f.add_idx(f.add_idx(a, b), c) == f.add_idx(a, f.add_idx(b, c)));
          CHECK(f.mul_idx(f.mul_idx(a, b), c) == f.mul_idx(a, f.mul_idx(b, c)));
          CHECK(f.mul_idx(a, f.add_idx(b, c)) == f.add_idx(f.mul_idx(a, b), f.mul_idx(a, c)));
        }
      }
      if (a) CHECK(f.mul_idx(a, f.inv_idx(a)) == 1);
    }
  }
}

TEST_CASE("index / coefficient round trip") {
  for (uint32_t q : {4u, 8u, 9u, 25u, 27u}) {
    Field f(q);
    for (uint32_t a = 0; a < q; ++a) {
      FieldElement x = f.element(a);
      CHECK(f.from_coefficients(f.coefficients(x)) == x);
    }
    CHECK_THROWS_AS(f.element(q), Error);
  }
}

TEST_CASE("Frobenius: x^q = x for q <= 16") {
  for (uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
    Field f(q);
    for (uint32_t a = 0; a < q; ++a) CHECK(f.pow(f.element(a), q) == f.element(a));
  }
}

TEST_CASE("primitive element generates the multiplicative group") {
  for (uint32_t q : {3u, 4u, 5u, 8u, 9u, 13u, 16u}) {
    Field f(q);
    FieldElement g = f.primitive_element();
    std::vector<bool> seen(q, false);
    FieldElement x = f.one();
    for (uint32_t i = 0; i + 1 < q; ++i) {
      CHECK(!seen[x.index]);
      seen[x.index] = true;
      x = f.mul(x, g);
    }
    CHECK(x == f.one());
  }
}

TEST_CASE("irreducibility test matches trial division") {
  CHECK(poly_is_irreducible(Poly{{1, 1, 1}}, Field(2)));      // t^2+t+1
  CHECK(!poly_is_irreducible(Poly{{1, 0, 1}}, Field(2)));     // t^2+1 = (t+1)^2
  CHECK(poly_is_irreducible(Poly{{1, 1, 0, 1}}, Field(2)));   // t^3+t+1
  CHECK_THROWS_AS(poly_is_irreducible(Poly{{1, 0, 2}}, Field(3)), NonMonic);

  for (uint32_t q : {2u, 3u, 4u}) {
    Field f(q);
    for (uint32_t n = 1; n <= 4; ++n) {
      uint64_t total = 1;
      for (uint32_t i = 0; i < n; ++i) total *= q;
      for (uint64_t m = 0; m < total; ++m) {
        std::vector<uint32_t> c(n + 1, 0);
        c[n] = 1;
        uint64_t rest = m;
        for (uint32_t i = 0; i < n; ++i) {
          c[i] = static_cast<uint32_t>(rest % q);
          rest /= q;
        }
        Poly cand{c};
        CHECK(poly_is_irreducible(cand, f) == irreducible_by_trial_division(cand, f));
      }
    }
  }
}

TEST_CASE("polynomial engine basics") {
  Field f3(3);
  Poly a = poly_from_indices({1, 2, 1});  // 1 + 2t + t^2
  Poly b = poly_from_indices({2, 1});     // 2 + t
  CHECK(poly_mod(poly_mul(a, b, f3), a, f3).is_zero());
  CHECK(poly_gcd(poly_mul(a, b, f3), a, f3) == a);
  CHECK(poly_eval(b, 1, f3) == 0);  // 2 + 1 = 0 mod 3
  CHECK(poly_to_string(a) == "t^2+2*t+1");
  CHECK(poly_to_string(poly_zero()) == "0");
  CHECK(poly_powmod(poly_t(), 9, Poly{{1, 0, 1}}, f3) == poly_mod(poly_t(), Poly{{1, 0, 1}}, f3));
}
