#include "stingray/element.hpp"

#include <cassert>

namespace stingray {

namespace {

std::optional<StingrayProfile> profile_impl(const Matrix& g) {
  const Field& f = g.field();
  const uint32_t d = g.rows();
  Matrix h = g.minus_identity();
  Subspace u = row_space(h);
  const uint32_t e = u.dim();
  if (e == 0) throw IdentityInput("stingray_profile of the identity");

  // U = im(g-1) is always g-invariant since (g-1)g = g(g-1); the restriction
  // in RREF-basis coordinates is read off at the pivot columns.
  Matrix restriction(f, e, e);
  for (uint32_t i = 0; i < e; ++i) {
    std::vector<uint16_t> w = row_times(u.basis().row(i), g);
    for (uint32_t j = 0; j < e; ++j) restriction.set_raw(i, j, w[u.pivots()[j]]);
#ifndef NDEBUG
    // Reconstruct w from its claimed coordinates.
    std::vector<uint16_t> back = row_times(u.coordinates(w), u.basis());
    assert(back == w && "im(g-1) must be g-invariant");
#endif
  }
  if (restriction.is_identity()) return std::nullopt;  // trivial action on U
  Poly cp = charpoly(restriction);
  if (cp == poly_t_minus(1, f)) return std::nullopt;  // redundant with the identity check
  if (!poly_is_irreducible(cp, f)) return std::nullopt;

  StingrayProfile p;
  p.e = e;
  p.image = std::move(u);
  p.fixed = kernel_basis(h);
  p.restriction_charpoly = std::move(cp);
#ifndef NDEBUG
  assert(p.image.dim() + p.fixed.dim() == d);
  assert(trivial_intersection(p.image, p.fixed) && "V = U + F must be direct");
#endif
  (void)d;
  return p;
}

}  // namespace

std::optional<StingrayProfile> stingray_profile(const Matrix& g) {
  if (g.rows() != g.cols()) throw NotInvertible("stingray_profile needs a square matrix");
  Matrix copy = g;
  if (rank(std::move(copy)) != g.rows()) throw NotInvertible("matrix is not in GL");
  return profile_impl(g);
}

std::optional<StingrayProfile> stingray_profile_unchecked(const Matrix& g) {
  return profile_impl(g);
}

DuoCheck check_duo(const Matrix& g1, const Matrix& g2) {
  if (g1.rows() != g2.rows() || g1.cols() != g2.cols())
    throw AmbientMismatch("duo check needs matrices of equal degree");
  DuoCheck c;
  c.p1 = stingray_profile(g1);
  c.p2 = stingray_profile(g2);
  c.duo = c.p1 && c.p2 && trivial_intersection(c.p1->image, c.p2->image);
  return c;
}

bool l1_criterion(const DuoCheck& check, uint32_t d) {
  if (!check.duo) throw NotADuo("l1_criterion requires a stingray duo");
  const StingrayProfile& a = *check.p1;
  const StingrayProfile& b = *check.p2;
  if (a.e + b.e != d) return false;  // (a): U1 ⊕ U2 = V needs e1 + e2 = d
  if (!trivial_intersection(a.fixed, b.fixed)) return false;  // (b)
  return !(a.image == b.fixed) && !(b.image == a.fixed);      // (c)
}

bool l1_criterion(const Matrix& g1, const Matrix& g2) {
  return l1_criterion(check_duo(g1, g2), g1.rows());
}

Subspace spin(const Matrix& seed_rows, std::span<const Matrix> generators) {
  if (generators.empty()) throw Error("spin needs at least one generator");
  const Field& f = seed_rows.field();
  const uint32_t d = seed_rows.cols();
  for (const Matrix& g : generators)
    if (g.rows() != d || g.cols() != d) throw AmbientMismatch("generator degree mismatch");

  // Working basis kept in echelon form: basis[i] has leading 1 at pivot[i].
  std::vector<std::vector<uint16_t>> basis;
  std::vector<uint32_t> pivots;
  std::vector<std::vector<uint16_t>> worklist;

  auto reduce_insert = [&](std::vector<uint16_t> v) -> bool {
    for (size_t i = 0; i < basis.size(); ++i) {
      const uint16_t c = v[pivots[i]];
      if (!c) continue;
      const uint32_t nc = f.neg_idx(c);
      const auto& b = basis[i];
      for (uint32_t j = 0; j < d; ++j)
        v[j] = static_cast<uint16_t>(f.add_idx(v[j], f.mul_idx(nc, b[j])));
    }
    uint32_t lead = 0;
    while (lead < d && v[lead] == 0) ++lead;
    if (lead == d) return false;
    const uint32_t inv = f.inv_idx(v[lead]);
    if (inv != 1)
      for (uint32_t j = 0; j < d; ++j) v[j] = static_cast<uint16_t>(f.mul_idx(inv, v[j]));
    basis.push_back(v);
    pivots.push_back(lead);
    worklist.push_back(std::move(v));
    return true;
  };

  for (uint32_t i = 0; i < seed_rows.rows(); ++i) {
    auto r = seed_rows.row(i);
    reduce_insert(std::vector<uint16_t>(r.begin(), r.end()));
  }
  while (!worklist.empty() && basis.size() < d) {
    std::vector<uint16_t> v = std::move(worklist.back());
    worklist.pop_back();
    for (const Matrix& g : generators) {
      reduce_insert(row_times(v, g));
      if (basis.size() == d) break;
    }
  }
  Matrix rows(f, static_cast<uint32_t>(basis.size()), d);
  for (uint32_t i = 0; i < basis.size(); ++i)
    for (uint32_t j = 0; j < d; ++j) rows.set_raw(i, j, basis[i][j]);
  return Subspace::from_rows(std::move(rows));
}

bool is_irreducible_group(std::span<const Matrix> generators, SpinCaps caps) {
  if (generators.empty()) throw Error("is_irreducible_group needs generators");
  const Field& f = generators[0].field();
  const uint32_t d = generators[0].rows();
  if (d > caps.max_d || f.q() > caps.max_q)
    throw CapExceeded("is_irreducible_group beyond spin caps (d <= " +
                      std::to_string(caps.max_d) + ", q <= " + std::to_string(caps.max_q) + ")");
  if (d == 0) throw Error("empty ambient space");

  // One representative per 1-space: leading coordinate 1, earlier ones 0.
  const uint32_t q = f.q();
  Matrix seed(f, 1, d);
  for (uint32_t lead = 0; lead < d; ++lead) {
    uint64_t tail_count = 1;
    for (uint32_t j = lead + 1; j < d; ++j) tail_count *= q;
    for (uint64_t t = 0; t < tail_count; ++t) {
      for (uint32_t j = 0; j < d; ++j) seed.set_raw(0, j, 0);
      seed.set_raw(0, lead, 1);
      uint64_t rest = t;
      for (uint32_t j = lead + 1; j < d; ++j) {
        seed.set_raw(0, j, static_cast<uint16_t>(rest % q));
        rest /= q;
      }
      if (spin(seed, generators).dim() != d) return false;
    }
  }
  return true;
}

bool stingray_class_exists(uint32_t e, uint32_t q) {
  return e >= 1 && !(e == 1 && q == 2);
}

Poly canonical_stingray_charpoly(const Field& f, uint32_t e) {
  if (!stingray_class_exists(e, f.q()))
    throw EmptyClass("no " + std::to_string(e) + "-stingray element over GF(" +
                     std::to_string(f.q()) + ")");
  return least_irreducible(f, e, /*skip_t_and_t_minus_1=*/true);
}

Matrix stingray_representative(const Field& f, uint32_t d, const Poly& a) {
  const uint32_t e = static_cast<uint32_t>(a.degree());
  if (e < 1 || e > d) throw Error("restriction degree out of range");
  Matrix rep = direct_sum(companion_matrix(f, a), Matrix::identity(f, d - e));
  return rep;
}

Matrix canonical_stingray_representative(const Field& f, uint32_t d, uint32_t e) {
  return stingray_representative(f, d, canonical_stingray_charpoly(f, e));
}

namespace {

// Transvections I + λE_{12} over a field basis λ, together with the d-cycle
// permutation (sign-fixed into SL), generate SL_d(q).
std::vector<Matrix> transvections(const Field& f, uint32_t d) {
  std::vector<Matrix> out;
  if (d < 2) return out;
  uint32_t lambda = 1;  // powers of p give an additive basis via indices p^i
  for (uint32_t i = 0; i < f.k(); ++i) {
    Matrix t = Matrix::identity(f, d);
    t.set_raw(0, 1, static_cast<uint16_t>(lambda));
    out.push_back(std::move(t));
    lambda *= f.p();
  }
  return out;
}

Matrix signed_cycle(const Field& f, uint32_t d) {
  // Row-action d-cycle e_i -> e_{i+1}, e_d -> ±e_1 with determinant 1.
  Matrix c(f, d, d);
  for (uint32_t i = 0; i + 1 < d; ++i) c.set_raw(i, i + 1, 1);
  uint16_t corner = 1;
  if (d % 2 == 0 && f.p() != 2) corner = static_cast<uint16_t>(f.neg_idx(1));
  c.set_raw(d - 1, 0, corner);
  return c;
}

}  // namespace

std::vector<Matrix> sl_generators(const Field& f, uint32_t d) {
  if (d == 1) return {Matrix::identity(f, 1)};
  std::vector<Matrix> gens = transvections(f, d);
  gens.push_back(signed_cycle(f, d));
  return gens;
}

std::vector<Matrix> gl_generators(const Field& f, uint32_t d) {
  std::vector<Matrix> gens = sl_generators(f, d);
  if (f.q() > 2) {
    Matrix diag = Matrix::identity(f, d);
    diag.set_raw(0, 0, static_cast<uint16_t>(f.primitive_element().index));
    gens.push_back(std::move(diag));
  }
  if (d == 1 && f.q() == 2) gens = {Matrix::identity(f, 1)};
  return gens;
}

}  // namespace stingray
