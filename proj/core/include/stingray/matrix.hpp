#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stingray/field.hpp"
#include "stingray/poly.hpp"
#include "stingray/rng.hpp"

namespace stingray {

/// Dense matrix over GF(q), row-major, entries stored as element indices.
///
/// Convention used throughout: vectors are ROWS and matrices act on the
/// RIGHT, v |-> v*M.  In particular im(g-1) is the row space of g - I and
/// ker(g-1) is { v : v*(g-I) = 0 }.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, uint32_t rows, uint32_t cols);  // zero matrix

  static Matrix identity(const Field& f, uint32_t n);
  /// Convenience for tests: entries given as element indices, row by row.
  static Matrix from_rows(const Field& f,
                          std::initializer_list<std::initializer_list<uint32_t>> rows);

  uint32_t rows() const { return rows_; }
  uint32_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  FieldElement operator()(uint32_t r, uint32_t c) const { return {raw(r, c)}; }
  void set(uint32_t r, uint32_t c, FieldElement e) { set_raw(r, c, static_cast<uint16_t>(e.index)); }

  uint16_t raw(uint32_t r, uint32_t c) const { return a_[size_t(r) * cols_ + c]; }
  void set_raw(uint32_t r, uint32_t c, uint16_t v) { a_[size_t(r) * cols_ + c] = v; }

  std::span<const uint16_t> row(uint32_t r) const { return {a_.data() + size_t(r) * cols_, cols_}; }
  std::span<uint16_t> row(uint32_t r) { return {a_.data() + size_t(r) * cols_, cols_}; }
  const std::vector<uint16_t>& data() const { return a_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_ && field_ == o.field_;
  }

  bool is_zero() const;
  bool is_identity() const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix transpose() const;
  Matrix pow(uint64_t e) const;

  /// g - I (square matrices).
  Matrix minus_identity() const;

  std::string to_string() const;

 private:
  Field field_{2};
  uint32_t rows_ = 0, cols_ = 0;
  std::vector<uint16_t> a_;
};

/// v * M for a row vector v with cols(M)-sized result.
std::vector<uint16_t> row_times(std::span<const uint16_t> v, const Matrix& m);

uint32_t rank(Matrix a);  // destroys its copy
Matrix rref(Matrix a, uint32_t* rank_out = nullptr);
Matrix inverse(const Matrix& a);  // throws Singular
FieldElement determinant(Matrix a);

/// Companion matrix of a monic polynomial, acting on row vectors from the
/// right: e_i -> e_{i+1} for i < n, e_n -> -(c_0 e_1 + ... + c_{n-1} e_n).
Matrix companion_matrix(const Field& f, const Poly& p);

Matrix direct_sum(const Matrix& a, const Matrix& b);

/// x^{-1} * g * x (throws Singular when x is not invertible).
Matrix conjugate(const Matrix& g, const Matrix& x);

/// Characteristic polynomial det(tI - A), monic, via the division-free
/// Berkowitz recursion (no pivoting needed over small fields).
Poly charpoly(const Matrix& a);

/// Uniform element of GL_d(q) by rejection from uniform d x d matrices.
Matrix random_gl(const Field& f, uint32_t d, Rng& rng);

/// Uniform d x d matrix (all entries independent uniform).
Matrix random_matrix(const Field& f, uint32_t rows, uint32_t cols, Rng& rng);

}  // namespace stingray
