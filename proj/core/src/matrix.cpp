#include "stingray/matrix.hpp"

#include <sstream>

namespace stingray {

Matrix::Matrix(const Field& f, uint32_t rows, uint32_t cols)
    : field_(f), rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}

Matrix Matrix::identity(const Field& f, uint32_t n) {
  Matrix m(f, n, n);
  for (uint32_t i = 0; i < n; ++i) m.set_raw(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(const Field& f,
                         std::initializer_list<std::initializer_list<uint32_t>> rows) {
  uint32_t r = static_cast<uint32_t>(rows.size());
  uint32_t c = r ? static_cast<uint32_t>(rows.begin()->size()) : 0;
  Matrix m(f, r, c);
  uint32_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error("ragged row list");
    uint32_t j = 0;
    for (uint32_t v : row) {
      if (v >= f.q()) throw Error("entry index out of range");
      m.set_raw(i, j++, static_cast<uint16_t>(v));
    }
    ++i;
  }
  return m;
}

bool Matrix::is_zero() const {
  for (uint16_t v : a_)
    if (v) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (uint32_t i = 0; i < rows_; ++i)
    for (uint32_t j = 0; j < cols_; ++j)
      if (raw(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || !(field_ == o.field_)) throw Error("matrix product shape mismatch");
  Matrix out(field_, rows_, o.cols_);
  const uint32_t q = field_.q();
  const uint16_t* add = field_.add_table();
  const uint16_t* mul = field_.mul_table();
  for (uint32_t i = 0; i < rows_; ++i) {
    uint16_t* dst = out.a_.data() + size_t(i) * o.cols_;
    for (uint32_t k = 0; k < cols_; ++k) {
      const uint16_t aik = raw(i, k);
      if (!aik) continue;
      const uint16_t* src = o.a_.data() + size_t(k) * o.cols_;
      if (add && mul) {
        const uint16_t* mrow = mul + size_t(aik) * q;
        for (uint32_t j = 0; j < o.cols_; ++j) dst[j] = add[size_t(dst[j]) * q + mrow[src[j]]];
      } else {
        for (uint32_t j = 0; j < o.cols_; ++j)
          dst[j] = static_cast<uint16_t>(field_.add_idx(dst[j], field_.mul_idx(aik, src[j])));
      }
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix sum shape mismatch");
  Matrix out(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i)
    out.a_[i] = static_cast<uint16_t>(field_.add_idx(a_[i], o.a_[i]));
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix difference shape mismatch");
  Matrix out(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i)
    out.a_[i] = static_cast<uint16_t>(field_.sub_idx(a_[i], o.a_[i]));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (uint32_t i = 0; i < rows_; ++i)
    for (uint32_t j = 0; j < cols_; ++j) out.set_raw(j, i, raw(i, j));
  return out;
}

Matrix Matrix::pow(uint64_t e) const {
  if (rows_ != cols_) throw Error("pow needs a square matrix");
  Matrix result = identity(field_, rows_);
  Matrix base = *this;
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Matrix Matrix::minus_identity() const {
  if (rows_ != cols_) throw Error("minus_identity needs a square matrix");
  Matrix out = *this;
  for (uint32_t i = 0; i < rows_; ++i)
    out.set_raw(i, i, static_cast<uint16_t>(field_.sub_idx(out.raw(i, i), 1)));
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (uint32_t i = 0; i < rows_; ++i) {
    os << (i ? "\n[" : "[");
    for (uint32_t j = 0; j < cols_; ++j) os << (j ? " " : "") << raw(i, j);
    os << "]";
  }
  return os.str();
}

std::vector<uint16_t> row_times(std::span<const uint16_t> v, const Matrix& m) {
  if (v.size() != m.rows()) throw Error("row vector length mismatch");
  const Field& f = m.field();
  const uint32_t q = f.q();
  const uint16_t* add = f.add_table();
  const uint16_t* mul = f.mul_table();
  std::vector<uint16_t> out(m.cols(), 0);
  for (uint32_t k = 0; k < m.rows(); ++k) {
    const uint16_t vk = v[k];
    if (!vk) continue;
    auto src = m.row(k);
    if (add && mul) {
      const uint16_t* mrow = mul + size_t(vk) * q;
      for (uint32_t j = 0; j < m.cols(); ++j) out[j] = add[size_t(out[j]) * q + mrow[src[j]]];
    } else {
      for (uint32_t j = 0; j < m.cols(); ++j)
        out[j] = static_cast<uint16_t>(f.add_idx(out[j], f.mul_idx(vk, src[j])));
    }
  }
  return out;
}

namespace {

// In-place row elimination helpers shared by rank / rref / inverse.  Rows are
// raw uint16 spans of the matrix storage.

inline void row_axpy(const Field& f, uint16_t* dst, const uint16_t* src, uint16_t factor,
                     uint32_t len) {
  const uint32_t q = f.q();
  const uint16_t* add = f.add_table();
  const uint16_t* mul = f.mul_table();
  if (add && mul) {
    const uint16_t* mrow = mul + size_t(factor) * q;
    for (uint32_t j = 0; j < len; ++j) dst[j] = add[size_t(dst[j]) * q + mrow[src[j]]];
  } else {
    for (uint32_t j = 0; j < len; ++j)
      dst[j] = static_cast<uint16_t>(f.add_idx(dst[j], f.mul_idx(factor, src[j])));
  }
}

inline void row_scale(const Field& f, uint16_t* r, uint16_t factor, uint32_t len) {
  const uint32_t q = f.q();
  const uint16_t* mul = f.mul_table();
  if (mul) {
    const uint16_t* mrow = mul + size_t(factor) * q;
    for (uint32_t j = 0; j < len; ++j) r[j] = mrow[r[j]];
  } else {
    for (uint32_t j = 0; j < len; ++j) r[j] = static_cast<uint16_t>(f.mul_idx(factor, r[j]));
  }
}

// Forward elimination on the first `pivot_cols` columns; returns pivots.
// `full` additionally clears above pivots and normalizes them to 1 (RREF).
std::vector<uint32_t> eliminate(Matrix& m, uint32_t pivot_cols, bool full) {
  const Field& f = m.field();
  const uint32_t rows = m.rows(), cols = m.cols();
  std::vector<uint32_t> pivots;
  uint32_t r = 0;
  for (uint32_t c = 0; c < pivot_cols && r < rows; ++c) {
    uint32_t pr = r;
    while (pr < rows && m.raw(pr, c) == 0) ++pr;
    if (pr == rows) continue;
    if (pr != r)
      for (uint32_t j = 0; j < cols; ++j) {
        uint16_t tmp = m.raw(r, j);
        m.set_raw(r, j, m.raw(pr, j));
        m.set_raw(pr, j, tmp);
      }
    const uint16_t inv = static_cast<uint16_t>(f.inv_idx(m.raw(r, c)));
    if (inv != 1) row_scale(f, m.row(r).data(), inv, cols);
    for (uint32_t i = full ? 0 : r + 1; i < rows; ++i) {
      if (i == r) continue;
      const uint16_t v = m.raw(i, c);
      if (!v) continue;
      row_axpy(f, m.row(i).data(), m.row(r).data(), static_cast<uint16_t>(f.neg_idx(v)), cols);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

uint32_t rank(Matrix a) {
  return static_cast<uint32_t>(eliminate(a, a.cols(), false).size());
}

Matrix rref(Matrix a, uint32_t* rank_out) {
  auto pivots = eliminate(a, a.cols(), true);
  if (rank_out) *rank_out = static_cast<uint32_t>(pivots.size());
  return a;
}

Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw Singular("inverse of a non-square matrix");
  const uint32_t n = a.rows();
  Matrix aug(a.field(), n, 2 * n);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) aug.set_raw(i, j, a.raw(i, j));
    aug.set_raw(i, n + i, 1);
  }
  auto pivots = eliminate(aug, n, true);
  if (pivots.size() != n) throw Singular("matrix is rank-deficient");
  Matrix out(a.field(), n, n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) out.set_raw(i, j, aug.raw(i, n + j));
  return out;
}

FieldElement determinant(Matrix a) {
  if (a.rows() != a.cols()) throw Error("determinant of a non-square matrix");
  const Field& f = a.field();
  const uint32_t n = a.rows();
  uint32_t det = 1;
  uint32_t r = 0;
  for (uint32_t c = 0; c < n; ++c) {
    uint32_t pr = r;
    while (pr < n && a.raw(pr, c) == 0) ++pr;
    if (pr == n) return {0};
    if (pr != r) {
      for (uint32_t j = 0; j < n; ++j) {
        uint16_t tmp = a.raw(r, j);
        a.set_raw(r, j, a.raw(pr, j));
        a.set_raw(pr, j, tmp);
      }
      det = f.neg_idx(det);
    }
    const uint16_t piv = a.raw(r, c);
    det = f.mul_idx(det, piv);
    const uint16_t pinv = static_cast<uint16_t>(f.inv_idx(piv));
    for (uint32_t i = r + 1; i < n; ++i) {
      const uint16_t v = a.raw(i, c);
      if (!v) continue;
      const uint16_t factor = static_cast<uint16_t>(f.neg_idx(f.mul_idx(v, pinv)));
      row_axpy(f, a.row(i).data(), a.row(r).data(), factor, n);
    }
    ++r;
  }
  return {det};
}

Matrix companion_matrix(const Field& f, const Poly& p) {
  if (!p.is_monic() || p.degree() < 1) throw NonMonic("companion matrix needs a monic polynomial");
  const uint32_t n = static_cast<uint32_t>(p.degree());
  Matrix m(f, n, n);
  for (uint32_t i = 0; i + 1 < n; ++i) m.set_raw(i, i + 1, 1);
  for (uint32_t j = 0; j < n; ++j)
    m.set_raw(n - 1, j, static_cast<uint16_t>(f.neg_idx(p.c[j])));
  return m;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw Error("direct sum over different fields");
  Matrix out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (uint32_t i = 0; i < a.rows(); ++i)
    for (uint32_t j = 0; j < a.cols(); ++j) out.set_raw(i, j, a.raw(i, j));
  for (uint32_t i = 0; i < b.rows(); ++i)
    for (uint32_t j = 0; j < b.cols(); ++j) out.set_raw(a.rows() + i, a.cols() + j, b.raw(i, j));
  return out;
}

Matrix conjugate(const Matrix& g, const Matrix& x) { return inverse(x) * g * x; }

Poly charpoly(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error("charpoly of a non-square matrix");
  const Field& f = a.field();
  const uint32_t n = a.rows();
  if (n == 0) return poly_one();

  // Berkowitz: iterate over leading principal submatrices.  p holds the
  // coefficients of det(tI - A_r), highest degree first.
  std::vector<uint32_t> p = {1, f.neg_idx(a.raw(0, 0))};
  for (uint32_t r = 2; r <= n; ++r) {
    const uint32_t m = r - 1;
    // q_i = R * A_{r-1}^i * C for i = 0 .. m-1, with R the row to the left of
    // a_rr and C the column above it.
    std::vector<uint32_t> col(m), acc(m);
    for (uint32_t i = 0; i < m; ++i) col[i] = a.raw(i, r - 1);
    acc = col;
    std::vector<uint32_t> qs;
    for (uint32_t i = 0; i < m; ++i) {
      if (i > 0) {
        std::vector<uint32_t> next(m, 0);
        for (uint32_t row_i = 0; row_i < m; ++row_i) {
          uint32_t s = 0;
          for (uint32_t k = 0; k < m; ++k)
            s = f.add_idx(s, f.mul_idx(a.raw(row_i, k), acc[k]));
          next[row_i] = s;
        }
        acc = next;
      }
      uint32_t dot = 0;
      for (uint32_t k = 0; k < m; ++k) dot = f.add_idx(dot, f.mul_idx(a.raw(r - 1, k), acc[k]));
      qs.push_back(dot);
    }
    // Toeplitz column: (1, -a_rr, -q_0, -q_1, ...).
    std::vector<uint32_t> tcol(r + 1, 0);
    tcol[0] = 1;
    tcol[1] = f.neg_idx(a.raw(r - 1, r - 1));
    for (uint32_t i = 0; i < qs.size(); ++i) tcol[i + 2] = f.neg_idx(qs[i]);
    std::vector<uint32_t> np(r + 1, 0);
    for (uint32_t i = 0; i <= r; ++i) {
      uint32_t s = 0;
      for (uint32_t j = 0; j < p.size() && j <= i; ++j)
        s = f.add_idx(s, f.mul_idx(tcol[i - j], p[j]));
      np[i] = s;
    }
    p = std::move(np);
  }
  // Convert from highest-degree-first to constant-first.
  std::vector<uint32_t> c(p.rbegin(), p.rend());
  Poly out{std::move(c)};
  out.trim();
  return out;
}

Matrix random_matrix(const Field& f, uint32_t rows, uint32_t cols, Rng& rng) {
  Matrix m(f, rows, cols);
  const uint32_t q = f.q();
  for (uint32_t i = 0; i < rows; ++i) {
    auto r = m.row(i);
    for (uint32_t j = 0; j < cols; ++j) r[j] = static_cast<uint16_t>(rng.below(q));
  }
  return m;
}

Matrix random_gl(const Field& f, uint32_t d, Rng& rng) {
  if (d < 1) throw Error("random_gl needs d >= 1");
  for (;;) {
    Matrix m = random_matrix(f, d, d, rng);
    Matrix copy = m;
    if (rank(std::move(copy)) == d) return m;
  }
}

}  // namespace stingray
