#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stingray/field.hpp"

namespace stingray {

/// Polynomial over a Field, stored as element indices with the constant term
/// first and no trailing zeros (the zero polynomial has an empty vector).
struct Poly {
  std::vector<uint32_t> c;

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  uint32_t coeff(size_t i) const { return i < c.size() ? c[i] : 0; }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  friend bool operator==(const Poly&, const Poly&) = default;
};

Poly poly_zero();
Poly poly_one();
Poly poly_t();                       // the polynomial t
Poly poly_t_minus(uint32_t a_index, const Field& f);  // t - a
Poly poly_from_indices(std::vector<uint32_t> coeffs);

Poly poly_add(const Poly& a, const Poly& b, const Field& f);
Poly poly_sub(const Poly& a, const Poly& b, const Field& f);
Poly poly_mul(const Poly& a, const Poly& b, const Field& f);
Poly poly_scale(const Poly& a, uint32_t s_index, const Field& f);

/// Remainder of a modulo m (m nonzero).
Poly poly_mod(const Poly& a, const Poly& m, const Field& f);

/// Monic gcd.
Poly poly_gcd(Poly a, Poly b, const Field& f);

Poly poly_powmod(const Poly& base, uint64_t e, const Poly& m, const Field& f);

uint32_t poly_eval(const Poly& a, uint32_t x_index, const Field& f);

/// Rabin's irreducibility test over GF(q): f is irreducible iff f divides
/// t^{q^n} - t and gcd(f, t^{q^{n/l}} - t) = 1 for every prime l dividing n.
/// Requires f monic of degree >= 1 (throws NonMonic otherwise).
bool poly_is_irreducible(const Poly& fpoly, const Field& f);

/// Lexicographically least monic irreducible polynomial of degree n, with the
/// candidate coefficient sequences (c_0, ..., c_{n-1}) compared constant term
/// first.  Optionally skips t and t-1 (the characteristic polynomials a
/// stingray restriction can never have).
Poly least_irreducible(const Field& f, uint32_t n, bool skip_t_and_t_minus_1 = false);

std::string poly_to_string(const Poly& a, const std::string& var = "t");

}  // namespace stingray
