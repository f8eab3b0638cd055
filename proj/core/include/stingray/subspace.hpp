#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stingray/matrix.hpp"

namespace stingray {

/// Subspace of the row space GF(q)^d, held as its canonical reduced
/// row echelon basis (no zero rows, strictly increasing pivot columns).
/// Two Subspace values are equal iff their RREF bases are entry-identical.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(const Field& f, uint32_t ambient);
  static Subspace full(const Field& f, uint32_t ambient);
  /// Canonicalizes arbitrary spanning rows via RREF.
  static Subspace from_rows(Matrix rows);

  uint32_t dim() const { return basis_.rows(); }
  uint32_t ambient() const { return ambient_; }
  const Matrix& basis() const { return basis_; }
  const std::vector<uint32_t>& pivots() const { return pivots_; }
  const Field& field() const { return basis_.field(); }

  bool contains(std::span<const uint16_t> v) const;
  /// Coordinates of v in the RREF basis; v must lie in the subspace.
  std::vector<uint16_t> coordinates(std::span<const uint16_t> v) const;

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }

 private:
  uint32_t ambient_ = 0;
  Matrix basis_;  // dim x ambient, RREF
  std::vector<uint32_t> pivots_;
};

Subspace row_space(const Matrix& m);

/// { v : v * M = 0 }  (left kernel in the row-vector convention).
Subspace kernel_basis(const Matrix& m);

Subspace intersection(const Subspace& a, const Subspace& b);  // AmbientMismatch
Subspace subspace_sum(const Subspace& a, const Subspace& b);

/// dim(a ∩ b) == 0, via one stacked rank computation.
bool trivial_intersection(const Subspace& a, const Subspace& b);

/// Number of e-subspaces of GF(q)^d (the Gaussian binomial), as uint64;
/// throws EnumerationTooLarge when it exceeds `cap`.
uint64_t subspace_count_checked(uint32_t d, uint32_t e, uint32_t q, uint64_t cap);

/// Visits every e-subspace of GF(q)^d exactly once, iterating pivot-column
/// profiles and the free RREF entries.  Deterministic order.
void enumerate_subspaces(const Field& f, uint32_t d, uint32_t e, uint64_t cap,
                         const std::function<void(const Subspace&)>& visit);

std::vector<Subspace> all_subspaces(const Field& f, uint32_t d, uint32_t e, uint64_t cap);

}  // namespace stingray
