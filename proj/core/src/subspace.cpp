#include "stingray/subspace.hpp"

#include <algorithm>

namespace stingray {

namespace {

std::vector<uint32_t> pivot_columns(const Matrix& rrefm) {
  std::vector<uint32_t> pivots;
  for (uint32_t i = 0; i < rrefm.rows(); ++i) {
    uint32_t j = 0;
    while (j < rrefm.cols() && rrefm.raw(i, j) == 0) ++j;
    if (j < rrefm.cols()) pivots.push_back(j);
  }
  return pivots;
}

}  // namespace

Subspace Subspace::zero(const Field& f, uint32_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix(f, 0, ambient);
  return s;
}

Subspace Subspace::full(const Field& f, uint32_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix::identity(f, ambient);
  for (uint32_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
  return s;
}

Subspace Subspace::from_rows(Matrix rows) {
  uint32_t rk = 0;
  Matrix r = rref(std::move(rows), &rk);
  Subspace s;
  s.ambient_ = r.cols();
  Matrix basis(r.field(), rk, r.cols());
  for (uint32_t i = 0; i < rk; ++i)
    for (uint32_t j = 0; j < r.cols(); ++j) basis.set_raw(i, j, r.raw(i, j));
  s.basis_ = std::move(basis);
  s.pivots_ = pivot_columns(s.basis_);
  return s;
}

bool Subspace::contains(std::span<const uint16_t> v) const {
  if (v.size() != ambient_) throw AmbientMismatch("vector length != ambient dimension");
  const Field& f = field();
  std::vector<uint16_t> w(v.begin(), v.end());
  for (uint32_t i = 0; i < dim(); ++i) {
    const uint16_t c = w[pivots_[i]];
    if (!c) continue;
    const uint16_t nc = static_cast<uint16_t>(f.neg_idx(c));
    auto b = basis_.row(i);
    for (uint32_t j = 0; j < ambient_; ++j)
      w[j] = static_cast<uint16_t>(f.add_idx(w[j], f.mul_idx(nc, b[j])));
  }
  return std::all_of(w.begin(), w.end(), [](uint16_t x) { return x == 0; });
}

std::vector<uint16_t> Subspace::coordinates(std::span<const uint16_t> v) const {
  // With an RREF basis the coordinate of v along basis row i is just the
  // entry of v at that row's pivot column.
  std::vector<uint16_t> out(dim());
  for (uint32_t i = 0; i < dim(); ++i) out[i] = v[pivots_[i]];
  return out;
}

Subspace row_space(const Matrix& m) { return Subspace::from_rows(m); }

Subspace kernel_basis(const Matrix& m) {
  // Eliminate [M | I] with pivots restricted to the M columns; rows whose M
  // part vanished carry a basis of { v : v M = 0 } in the right block.
  const Field& f = m.field();
  const uint32_t r = m.rows(), c = m.cols();
  Matrix aug(f, r, c + r);
  for (uint32_t i = 0; i < r; ++i) {
    for (uint32_t j = 0; j < c; ++j) aug.set_raw(i, j, m.raw(i, j));
    aug.set_raw(i, c + i, 1);
  }
  uint32_t rk = 0;
  {
    // Forward elimination on the first c columns only.
    uint32_t row = 0;
    for (uint32_t col = 0; col < c && row < r; ++col) {
      uint32_t pr = row;
      while (pr < r && aug.raw(pr, col) == 0) ++pr;
      if (pr == r) continue;
      if (pr != row)
        for (uint32_t j = 0; j < c + r; ++j) {
          uint16_t tmp = aug.raw(row, j);
          aug.set_raw(row, j, aug.raw(pr, j));
          aug.set_raw(pr, j, tmp);
        }
      const uint32_t inv = f.inv_idx(aug.raw(row, col));
      if (inv != 1)
        for (uint32_t j = 0; j < c + r; ++j)
          aug.set_raw(row, j, static_cast<uint16_t>(f.mul_idx(inv, aug.raw(row, j))));
      for (uint32_t i = row + 1; i < r; ++i) {
        const uint16_t v = aug.raw(i, col);
        if (!v) continue;
        const uint32_t nv = f.neg_idx(v);
        for (uint32_t j = col; j < c + r; ++j)
          aug.set_raw(i, j,
                      static_cast<uint16_t>(f.add_idx(aug.raw(i, j), f.mul_idx(nv, aug.raw(row, j)))));
      }
      ++row;
    }
    rk = row;
  }
  Matrix null_rows(f, r - rk, r);
  for (uint32_t i = rk; i < r; ++i)
    for (uint32_t j = 0; j < r; ++j) null_rows.set_raw(i - rk, j, aug.raw(i, c + j));
  return Subspace::from_rows(std::move(null_rows));
}

Subspace intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw AmbientMismatch("subspace ambients differ");
  const Field& f = a.field();
  const uint32_t d = a.ambient();
  const uint32_t ra = a.dim(), rb = b.dim();
  // Zassenhaus: eliminate [A|A; B|0] on the left block; rows with zero left
  // part hold an intersection basis on the right.
  Matrix z(f, ra + rb, 2 * d);
  for (uint32_t i = 0; i < ra; ++i)
    for (uint32_t j = 0; j < d; ++j) {
      z.set_raw(i, j, a.basis().raw(i, j));
      z.set_raw(i, d + j, a.basis().raw(i, j));
    }
  for (uint32_t i = 0; i < rb; ++i)
    for (uint32_t j = 0; j < d; ++j) z.set_raw(ra + i, j, b.basis().raw(i, j));

  uint32_t row = 0;
  const uint32_t rows = ra + rb, cols = 2 * d;
  for (uint32_t col = 0; col < d && row < rows; ++col) {
    uint32_t pr = row;
    while (pr < rows && z.raw(pr, col) == 0) ++pr;
    if (pr == rows) continue;
    if (pr != row)
      for (uint32_t j = 0; j < cols; ++j) {
        uint16_t tmp = z.raw(row, j);
        z.set_raw(row, j, z.raw(pr, j));
        z.set_raw(pr, j, tmp);
      }
    const uint32_t inv = f.inv_idx(z.raw(row, col));
    if (inv != 1)
      for (uint32_t j = 0; j < cols; ++j)
        z.set_raw(row, j, static_cast<uint16_t>(f.mul_idx(inv, z.raw(row, j))));
    for (uint32_t i = row + 1; i < rows; ++i) {
      const uint16_t v = z.raw(i, col);
      if (!v) continue;
      const uint32_t nv = f.neg_idx(v);
      for (uint32_t j = col; j < cols; ++j)
        z.set_raw(i, j, static_cast<uint16_t>(f.add_idx(z.raw(i, j), f.mul_idx(nv, z.raw(row, j)))));
    }
    ++row;
  }
  Matrix inter(f, rows - row, d);
  for (uint32_t i = row; i < rows; ++i)
    for (uint32_t j = 0; j < d; ++j) inter.set_raw(i - row, j, z.raw(i, d + j));
  return Subspace::from_rows(std::move(inter));
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw AmbientMismatch("subspace ambients differ");
  Matrix stacked(a.field(), a.dim() + b.dim(), a.ambient());
  for (uint32_t i = 0; i < a.dim(); ++i)
    for (uint32_t j = 0; j < a.ambient(); ++j) stacked.set_raw(i, j, a.basis().raw(i, j));
  for (uint32_t i = 0; i < b.dim(); ++i)
    for (uint32_t j = 0; j < b.ambient(); ++j) stacked.set_raw(a.dim() + i, j, b.basis().raw(i, j));
  return Subspace::from_rows(std::move(stacked));
}

bool trivial_intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw AmbientMismatch("subspace ambients differ");
  if (a.dim() + b.dim() > a.ambient()) return false;
  Matrix stacked(a.field(), a.dim() + b.dim(), a.ambient());
  for (uint32_t i = 0; i < a.dim(); ++i)
    for (uint32_t j = 0; j < a.ambient(); ++j) stacked.set_raw(i, j, a.basis().raw(i, j));
  for (uint32_t i = 0; i < b.dim(); ++i)
    for (uint32_t j = 0; j < b.ambient(); ++j) stacked.set_raw(a.dim() + i, j, b.basis().raw(i, j));
  return rank(std::move(stacked)) == a.dim() + b.dim();
}

uint64_t subspace_count_checked(uint32_t d, uint32_t e, uint32_t q, uint64_t cap) {
  if (e > d) return 0;
  // Gaussian binomial as an exact integer; bail out early past the cap.
  long double approx = 1.0L;
  for (uint32_t i = 0; i < e; ++i) {
    long double num = 1.0L, den = 1.0L;
    for (uint32_t t = 0; t < d - i; ++t) num *= q;
    for (uint32_t t = 0; t < e - i; ++t) den *= q;
    approx *= (num - 1) / (den - 1);
    if (approx > 4.0L * static_cast<long double>(cap) + 16)
      throw EnumerationTooLarge("subspace enumeration exceeds the configured cap");
  }
  // Exact integer via the q-factorial product, now known to be small.
  __uint128_t count = 1;
  for (uint32_t i = 0; i < e; ++i) {
    __uint128_t num = 1, den = 1;
    for (uint32_t t = 0; t < d - i; ++t) num *= q;
    for (uint32_t t = 0; t < e - i; ++t) den *= q;
    count = count * (num - 1) / (den - 1);  // exact at each step
  }
  if (count > cap) throw EnumerationTooLarge("subspace enumeration exceeds the configured cap");
  return static_cast<uint64_t>(count);
}

void enumerate_subspaces(const Field& f, uint32_t d, uint32_t e, uint64_t cap,
                         const std::function<void(const Subspace&)>& visit) {
  if (e > d) throw Error("enumerate_subspaces needs 0 <= e <= d");
  subspace_count_checked(d, e, f.q(), cap);
  if (e == 0) {
    visit(Subspace::zero(f, d));
    return;
  }
  const uint32_t q = f.q();
  // Iterate pivot-column profiles p_0 < ... < p_{e-1}, then the free entries:
  // row i may hold arbitrary values at non-pivot columns right of p_i.
  std::vector<uint32_t> piv(e);
  for (uint32_t i = 0; i < e; ++i) piv[i] = i;
  for (;;) {
    std::vector<std::pair<uint32_t, uint32_t>> free_pos;  // (row, col)
    {
      std::vector<bool> is_piv(d, false);
      for (uint32_t c : piv) is_piv[c] = true;
      for (uint32_t i = 0; i < e; ++i)
        for (uint32_t c = piv[i] + 1; c < d; ++c)
          if (!is_piv[c]) free_pos.emplace_back(i, c);
    }
    Matrix basis(f, e, d);
    for (uint32_t i = 0; i < e; ++i) basis.set_raw(i, piv[i], 1);
    std::vector<uint16_t> vals(free_pos.size(), 0);
    for (;;) {
      for (size_t t = 0; t < free_pos.size(); ++t)
        basis.set_raw(free_pos[t].first, free_pos[t].second, vals[t]);
      Subspace s = Subspace::from_rows(basis);  // already RREF; canonical copy
      visit(s);
      size_t t = 0;
      while (t < vals.size()) {
        if (++vals[t] < q) break;
        vals[t] = 0;
        ++t;
      }
      if (t == vals.size()) break;
    }
    // next pivot combination
    int32_t i = static_cast<int32_t>(e) - 1;
    while (i >= 0 && piv[i] == d - e + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (uint32_t j = i + 1; j < e; ++j) piv[j] = piv[j - 1] + 1;
  }
}

std::vector<Subspace> all_subspaces(const Field& f, uint32_t d, uint32_t e, uint64_t cap) {
  std::vector<Subspace> out;
  enumerate_subspaces(f, d, e, cap, [&](const Subspace& s) { out.push_back(s); });
  return out;
}

}  // namespace stingray
