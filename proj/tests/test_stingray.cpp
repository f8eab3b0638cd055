#include "doctest.h"
#include "stingray/element.hpp"
#include "stingray/rng.hpp"

using namespace stingray;

TEST_CASE("stingray profile of companion ⊕ identity") {
  Field f2(2);
  Matrix g = direct_sum(companion_matrix(f2, Poly{{1, 1, 1}}), Matrix::identity(f2, 1));
  auto p = stingray_profile(g);
  REQUIRE(p.has_value());
  CHECK(p->e == 2);
  CHECK(p->restriction_charpoly == Poly{{1, 1, 1}});
  CHECK(p->image == Subspace::from_rows(Matrix::from_rows(f2, {{1, 0, 0}, {0, 1, 0}})));
  CHECK(p->fixed == Subspace::from_rows(Matrix::from_rows(f2, {{0, 0, 1}})));
}

TEST_CASE("transvections are not stingray elements") {
  Field f2(2);
  Matrix g = Matrix::identity(f2, 2);
  g.set_raw(0, 1, 1);  // I + E_12
  CHECK(!stingray_profile(g).has_value());
}

TEST_CASE("scalar 2 on a line inside GL_2(3)") {
  Field f3(3);
  Matrix g = Matrix::from_rows(f3, {{2, 0}, {0, 1}});
  auto p = stingray_profile(g);
  REQUIRE(p.has_value());
  CHECK(p->e == 1);
  CHECK(p->restriction_charpoly == poly_t_minus(2, f3));
  CHECK(p->image == Subspace::from_rows(Matrix::from_rows(f3, {{1, 0}})));
}

TEST_CASE("profile input validation") {
  Field f2(2);
  CHECK_THROWS_AS(stingray_profile(Matrix::identity(f2, 3)), IdentityInput);
  CHECK_THROWS_AS(stingray_profile(Matrix::from_rows(f2, {{1, 1}, {1, 1}})), NotInvertible);
}

TEST_CASE("duo detection") {
  Field f2(2);
  Matrix c = companion_matrix(f2, Poly{{1, 1, 1}});
  Matrix g1 = direct_sum(c, Matrix::identity(f2, 2));
  Matrix g2 = direct_sum(Matrix::identity(f2, 2), c);

  CHECK(!is_duo(g1, g1));  // U ∩ U = U
  DuoCheck dc = check_duo(g1, g2);
  CHECK(dc.duo);
  // F_1 = span(e3,e4) = U_2: condition (c) fails, so the duo is reducible.
  CHECK(!l1_criterion(dc, 4));
  CHECK(!is_irreducible_group(std::vector<Matrix>{g1, g2}));

  DuoCheck same = check_duo(g1, g1);
  CHECK(!same.duo);
  CHECK_THROWS_AS(l1_criterion(same, 4), NotADuo);
}

TEST_CASE("duo with e1 + e2 < d always fails the criterion") {
  Field f2(2);
  Matrix c = companion_matrix(f2, Poly{{1, 1, 1}});
  Matrix g1 = direct_sum(c, Matrix::identity(f2, 3));
  Matrix g2 = direct_sum(Matrix::identity(f2, 2), direct_sum(c, Matrix::identity(f2, 1)));
  DuoCheck dc = check_duo(g1, g2);
  REQUIRE(dc.duo);
  CHECK(!l1_criterion(dc, 5));
  CHECK(!is_irreducible_group(std::vector<Matrix>{g1, g2}));
}

TEST_CASE("an irreducible duo exists and the criterion sees it") {
  Field f2(2);
  Matrix c = companion_matrix(f2, Poly{{1, 1, 1}});
  Matrix g1 = direct_sum(c, Matrix::identity(f2, 2));
  Matrix rep2 = direct_sum(Matrix::identity(f2, 2), c);
  Rng rng(23);
  bool found = false;
  for (int tries = 0; tries < 200 && !found; ++tries) {
    Matrix g2 = conjugate(rep2, random_gl(f2, 4, rng));
    DuoCheck dc = check_duo(g1, g2);
    if (!dc.duo) continue;
    if (l1_criterion(dc, 4)) {
      CHECK(is_irreducible_group(std::vector<Matrix>{g1, g2}));
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("spin closure") {
  Field f2(2);
  Matrix seed = Matrix::from_rows(f2, {{1, 0, 0}});
  std::vector<Matrix> id = {Matrix::identity(f2, 3)};
  CHECK(spin(seed, id) == Subspace::from_rows(Matrix::from_rows(f2, {{1, 0, 0}})));
  std::vector<Matrix> comp = {companion_matrix(f2, Poly{{1, 1, 0, 1}})};
  CHECK(spin(seed, comp).dim() == 3);  // cyclic vector of an irreducible block
}

TEST_CASE("group irreducibility by spinning") {
  Field f2(2);
  CHECK(!is_irreducible_group(std::vector<Matrix>{Matrix::identity(f2, 2)}));
  CHECK(is_irreducible_group(std::vector<Matrix>{companion_matrix(f2, Poly{{1, 1, 1}})}));
  CHECK(is_irreducible_group(gl_generators(f2, 3)));  // natural module of GL_3(2)
  CHECK(is_irreducible_group(sl_generators(Field(3), 3)));

  CHECK_THROWS_AS(is_irreducible_group(std::vector<Matrix>{Matrix::identity(Field(11), 2)}),
                  CapExceeded);
  CHECK_THROWS_AS(is_irreducible_group(std::vector<Matrix>{Matrix::identity(f2, 9)}),
                  CapExceeded);
}

TEST_CASE("sl and gl generator sets") {
  for (uint32_t q : {2u, 3u, 4u, 5u}) {
    Field f(q);
    for (uint32_t d : {2u, 3u, 4u}) {
      for (const Matrix& m : sl_generators(f, d)) CHECK(determinant(m).index == 1);
      bool has_nontrivial_det = false;
      for (const Matrix& m : gl_generators(f, d))
        if (determinant(m).index != 1) has_nontrivial_det = true;
      CHECK(has_nontrivial_det == (q > 2));
    }
  }
}

TEST_CASE("canonical representatives") {
  Field f2(2), f3(3);
  CHECK(canonical_stingray_charpoly(f2, 2) == Poly{{1, 1, 1}});
  CHECK(canonical_stingray_charpoly(f3, 1) == poly_t_minus(2, f3));
  CHECK_THROWS_AS(canonical_stingray_charpoly(f2, 1), EmptyClass);
  Matrix rep = canonical_stingray_representative(f2, 4, 2);
  auto p = stingray_profile(rep);
  REQUIRE(p.has_value());
  CHECK(p->e == 2);
  CHECK(!stingray_class_exists(1, 2));
  CHECK(stingray_class_exists(1, 3));
}

TEST_CASE("criterion agrees with spinning on random duos (small battery)") {
  // The acceptance suite runs the full 10^4-per-combination version.
  for (uint32_t q : {2u, 3u}) {
    Field f(q);
    const uint32_t d = 4;
    Matrix rep1 = canonical_stingray_representative(f, d, 2);
    Matrix rep2 = canonical_stingray_representative(f, d, 2);
    Rng rng(29 + q);
    int checked = 0;
    for (int iter = 0; iter < 400; ++iter) {
      Matrix g1 = conjugate(rep1, random_gl(f, d, rng));
      Matrix g2 = conjugate(rep2, random_gl(f, d, rng));
      DuoCheck dc = check_duo(g1, g2);
      if (!dc.duo) continue;
      ++checked;
      CHECK(l1_criterion(dc, d) == is_irreducible_group(std::vector<Matrix>{g1, g2}));
    }
    CHECK(checked > 50);
  }
}

TEST_CASE("profiles survive conjugation") {
  Field f3(3);
  Matrix rep = canonical_stingray_representative(f3, 3, 2);
  auto base = stingray_profile(rep);
  Rng rng(31);
  for (int iter = 0; iter < 25; ++iter) {
    Matrix x = random_gl(f3, 3, rng);
    auto p = stingray_profile(conjugate(rep, x));
    REQUIRE(p.has_value());
    CHECK(p->e == base->e);
    CHECK(p->restriction_charpoly == base->restriction_charpoly);
    CHECK(p->image == Subspace::from_rows(base->image.basis() * x));
    CHECK(p->fixed == Subspace::from_rows(base->fixed.basis() * x));
  }
}
