#include <algorithm>
#include <functional>

#include "doctest.h"
#include "stingray/matrix.hpp"
#include "stingray/rng.hpp"
#include "stingray/subspace.hpp"

using namespace stingray;

namespace {

// Test oracle: characteristic polynomial of tI - A by cofactor expansion over
// the polynomial ring (independent of the Berkowitz implementation).
Poly charpoly_by_cofactors(const Matrix& a) {
  const Field& f = a.field();
  const uint32_t n = a.rows();
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      Poly p = poly_from_indices({f.neg_idx(a.raw(i, j))});
      if (i == j) p = poly_add(p, poly_t(), f);
      m[i][j] = p;
    }
  std::function<Poly(std::vector<std::vector<Poly>>&)> det =
      [&](std::vector<std::vector<Poly>>& mm) -> Poly {
    const size_t k = mm.size();
    if (k == 1) return mm[0][0];
    Poly acc;
    for (size_t i = 0; i < k; ++i) {
      std::vector<std::vector<Poly>> minor(k - 1, std::vector<Poly>(k - 1));
      for (size_t r = 0, rr = 0; r < k; ++r) {
        if (r == i) continue;
        for (size_t c = 1; c < k; ++c) minor[rr][c - 1] = mm[r][c];
        ++rr;
      }
      Poly term = poly_mul(mm[i][0], det(minor), f);
      acc = (i % 2 == 0) ? poly_add(acc, term, f)
                         : poly_sub(acc, term, f);
    }
    return acc;
  };
  return det(m);
}

Matrix random_invertible(const Field& f, uint32_t n, Rng& rng) { return random_gl(f, n, rng); }

}  // namespace

TEST_CASE("rank and kernels: stated examples") {
  Field f2(2), f3(3);
  CHECK(rank(Matrix(f2, 2, 2)) == 0);
  CHECK(rank(Matrix::from_rows(f2, {{1, 1}, {1, 1}})) == 1);
  CHECK(kernel_basis(Matrix::identity(f3, 3)).dim() == 0);
  CHECK_THROWS_AS(inverse(Matrix::from_rows(f2, {{1, 1}, {1, 1}})), Singular);
}

TEST_CASE("inverse and determinant on random matrices") {
  Rng rng(7);
  for (uint32_t q : {2u, 3u, 5u, 4u}) {
    Field f(q);
    for (uint32_t n = 1; n <= 5; ++n) {
      Matrix a = random_invertible(f, n, rng);
      CHECK((a * inverse(a)).is_identity());
      Matrix b = random_invertible(f, n, rng);
      CHECK(determinant(a * b).index ==
            f.mul_idx(determinant(a).index, determinant(b).index));
    }
  }
}

TEST_CASE("rref is canonical under row operations") {
  Rng rng(11);
  for (uint32_t q : {2u, 3u, 4u}) {
    Field f(q);
    for (int iter = 0; iter < 40; ++iter) {
      Matrix a = random_matrix(f, 3, 5, rng);
      Matrix u = random_invertible(f, 3, rng);
      CHECK(row_space(a) == row_space(u * a));
      CHECK(rref(rref(a)) == rref(a));
    }
  }
}

TEST_CASE("kernel basis solves vM = 0 and rank-nullity holds") {
  Rng rng(13);
  for (uint32_t q : {2u, 3u, 5u}) {
    Field f(q);
    for (int iter = 0; iter < 30; ++iter) {
      const uint32_t r = 1 + rng.below(5), c = 1 + rng.below(5);
      Matrix m = random_matrix(f, r, c, rng);
      Subspace k = kernel_basis(m);
      Matrix copy = m;
      CHECK(k.dim() + rank(std::move(copy)) == r);
      for (uint32_t i = 0; i < k.dim(); ++i) {
        auto prod = row_times(k.basis().row(i), m);
        CHECK(std::all_of(prod.begin(), prod.end(), [](uint16_t v) { return v == 0; }));
      }
    }
  }
}

TEST_CASE("charpoly: companion matrices and the cofactor oracle") {
  Field f2(2), f3(3);
  for (const Poly& p : {Poly{{1, 1, 1}}, Poly{{1, 1, 0, 1}}, Poly{{1, 0, 1, 1}}})
    CHECK(charpoly(companion_matrix(f2, p)) == p);
  CHECK(charpoly(companion_matrix(f3, Poly{{1, 0, 1}})) == Poly{{1, 0, 1}});
  CHECK(charpoly(Matrix::identity(f3, 3)) ==
        poly_mul(poly_t_minus(1, f3),
                 poly_mul(poly_t_minus(1, f3), poly_t_minus(1, f3), f3), f3));

  // Exhaustive 2x2 over GF(2) and GF(3), then random larger sizes.
  for (uint32_t q : {2u, 3u}) {
    Field f(q);
    for (uint32_t code = 0; code < q * q * q * q; ++code) {
      Matrix a(f, 2, 2);
      uint32_t rest = code;
      for (uint32_t i = 0; i < 4; ++i) {
        a.set_raw(i / 2, i % 2, static_cast<uint16_t>(rest % q));
        rest /= q;
      }
      CHECK(charpoly(a) == charpoly_by_cofactors(a));
    }
  }
  Rng rng(17);
  for (uint32_t q : {2u, 3u, 4u, 5u}) {
    Field f(q);
    for (uint32_t n = 3; n <= 6; ++n) {
      Matrix a = random_matrix(f, n, n, rng);
      Poly cp = charpoly(a);
      CHECK(cp == charpoly_by_cofactors(a));
      CHECK(cp.is_monic());
      CHECK(cp.degree() == static_cast<int>(n));
      // Conjugation invariance.
      Matrix x = random_invertible(f, n, rng);
      CHECK(charpoly(conjugate(a, x)) == cp);
      // det(tI - A) at t = 0 is (-1)^n det(A).
      uint32_t p0 = cp.coeff(0);
      uint32_t expect = determinant(a).index;
      if (n % 2) expect = f.neg_idx(expect);
      CHECK(p0 == expect);
    }
  }
}

TEST_CASE("subspace operations: examples and the dimension formula") {
  Field f2(2);
  Subspace e1_line = Subspace::from_rows(Matrix::from_rows(f2, {{1, 0, 0}}));
  Subspace e2_line = Subspace::from_rows(Matrix::from_rows(f2, {{0, 1, 0}}));
  CHECK(intersection(e1_line, e1_line) == e1_line);
  CHECK(intersection(e1_line, e2_line).dim() == 0);

  Subspace s12 = Subspace::from_rows(Matrix::from_rows(f2, {{1, 0, 0}, {0, 1, 0}}));
  Subspace s23 = Subspace::from_rows(Matrix::from_rows(f2, {{0, 1, 0}, {0, 0, 1}}));
  CHECK(intersection(s12, s23).dim() == 1);
  CHECK(subspace_sum(s12, s23).dim() == 3);

  CHECK_THROWS_AS(intersection(e1_line, Subspace::zero(f2, 2)), AmbientMismatch);

  Rng rng(19);
  for (uint32_t q : {2u, 3u, 4u}) {
    Field f(q);
    for (int iter = 0; iter < 50; ++iter) {
      const uint32_t d = 4 + rng.below(2);
      Subspace s = row_space(random_matrix(f, 1 + rng.below(3), d, rng));
      Subspace t = row_space(random_matrix(f, 1 + rng.below(3), d, rng));
      Subspace inter = intersection(s, t);
      Subspace total = subspace_sum(s, t);
      CHECK(total.dim() + inter.dim() == s.dim() + t.dim());
      CHECK(trivial_intersection(s, t) == (inter.dim() == 0));
      // Canonicality: a basis change of the presenting rows changes nothing.
      if (s.dim()) {
        Matrix u = random_invertible(f, s.dim(), rng);
        CHECK(Subspace::from_rows(u * s.basis()) == s);
      }
      for (uint32_t i = 0; i < inter.dim(); ++i) {
        CHECK(s.contains(inter.basis().row(i)));
        CHECK(t.contains(inter.basis().row(i)));
      }
    }
  }
}

TEST_CASE("subspace enumeration: counts and canonical form") {
  Field f2(2), f5(5);
  CHECK(all_subspaces(f2, 2, 1, 1000).size() == 3);
  auto spaces = all_subspaces(f2, 4, 2, 1000);
  CHECK(spaces.size() == 35);
  for (const auto& s : spaces) {
    CHECK(s.dim() == 2);
    CHECK(Subspace::from_rows(s.basis()) == s);
  }
  for (size_t i = 0; i < spaces.size(); ++i)
    for (size_t j = i + 1; j < spaces.size(); ++j) CHECK(!(spaces[i] == spaces[j]));
  CHECK(all_subspaces(f5, 3, 3, 10).size() == 1);
  CHECK(all_subspaces(f2, 3, 0, 10).size() == 1);
  CHECK_THROWS_AS(all_subspaces(f2, 8, 4, 100), EnumerationTooLarge);
}

TEST_CASE("random_gl is deterministic per stream and lands in GL") {
  Field f2(2);
  Rng a(5, 0), b(5, 0), c(5, 1);
  Matrix ma = random_gl(f2, 4, a);
  Matrix mb = random_gl(f2, 4, b);
  Matrix mc = random_gl(f2, 4, c);
  CHECK(ma == mb);
  CHECK(!(ma == mc));
  Matrix copy = ma;
  CHECK(rank(std::move(copy)) == 4);

  // GL_1(2) is trivial.
  Rng r(9);
  for (int i = 0; i < 10; ++i) CHECK(random_gl(f2, 1, r).is_identity());
}
