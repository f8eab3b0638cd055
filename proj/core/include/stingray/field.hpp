#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "stingray/errors.hpp"

namespace stingray {

/// Element of a finite field, held as its canonical index.
///
/// With coefficients (c_0, ..., c_{k-1}) over GF(p) in the polynomial basis
/// (constant term first), the index is  i = sum c_j p^j,  a bijection with
/// [0, q).  Index 0 is always zero and index 1 is always one.
struct FieldElement {
  uint32_t index = 0;
  friend bool operator==(FieldElement, FieldElement) = default;
};

namespace detail {
struct FieldSpec;
}

/// GF(q) for a prime power q = p^k, with the modulus fixed to the
/// lexicographically least monic irreducible degree-k polynomial over GF(p)
/// (coefficient order: constant first; for k = 1 the degenerate modulus t).
///
/// Cheap to copy (shared immutable spec); all operations are pure, so a Field
/// and its elements may be used freely across threads.  Supports q <= 2^16;
/// add/mul/inv tables are built for q <= 1024.
class Field {
 public:
  explicit Field(uint32_t q);

  uint32_t p() const;
  uint32_t k() const;
  uint32_t q() const;

  /// Modulus coefficients, constant first, length k+1, monic.
  const std::vector<uint32_t>& modulus() const;

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement element(uint32_t index) const;

  FieldElement add(FieldElement a, FieldElement b) const { return {add_idx(a.index, b.index)}; }
  FieldElement sub(FieldElement a, FieldElement b) const { return {sub_idx(a.index, b.index)}; }
  FieldElement neg(FieldElement a) const { return {neg_idx(a.index)}; }
  FieldElement mul(FieldElement a, FieldElement b) const { return {mul_idx(a.index, b.index)}; }
  FieldElement inv(FieldElement a) const { return {inv_idx(a.index)}; }
  FieldElement pow(FieldElement a, uint64_t e) const;

  uint32_t add_idx(uint32_t a, uint32_t b) const;
  uint32_t sub_idx(uint32_t a, uint32_t b) const;
  uint32_t neg_idx(uint32_t a) const;
  uint32_t mul_idx(uint32_t a, uint32_t b) const;
  uint32_t inv_idx(uint32_t a) const;  // throws DivisionByZero for 0

  std::vector<uint32_t> coefficients(FieldElement a) const;
  FieldElement from_coefficients(const std::vector<uint32_t>& coeffs) const;

  /// A generator of the multiplicative group.
  FieldElement primitive_element() const;

  // Raw tables for inner loops; null when q > 1024.
  const uint16_t* add_table() const;
  const uint16_t* mul_table() const;
  const uint16_t* inv_table() const;
  const uint16_t* neg_table() const;

  bool operator==(const Field& other) const;
  std::string to_string() const;  // e.g. "GF(9)=GF(3)[t]/(t^2+1)"

 private:
  std::shared_ptr<const detail::FieldSpec> s_;
};

/// Builds GF(q); throws NotAPrimePower unless q >= 2 is a prime power.
Field make_field(uint32_t q);

bool is_prime(uint32_t n);

/// Factors q = p^k; returns false if q is not a prime power (or q < 2).
bool prime_power_decompose(uint32_t q, uint32_t& p, uint32_t& k);

}  // namespace stingray
