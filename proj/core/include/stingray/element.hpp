#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stingray/matrix.hpp"
#include "stingray/subspace.hpp"

namespace stingray {

/// Invariants of a stingray element g: the image U = im(g-1) on which g acts
/// irreducibly and non-trivially, the fixed space F = ker(g-1), and the
/// characteristic polynomial of the restriction of g to U.  For a genuine
/// stingray element V = U ⊕ F, U is g-invariant and F is fixed pointwise.
struct StingrayProfile {
  uint32_t e = 0;
  Subspace image;
  Subspace fixed;
  Poly restriction_charpoly;
};

/// Profiles g, returning the profile iff g is a stingray element (restriction
/// to im(g-1) has irreducible characteristic polynomial and is not the
/// identity).  Throws NotInvertible / IdentityInput on bad input.
std::optional<StingrayProfile> stingray_profile(const Matrix& g);

/// Same, for callers that already know g is invertible and g != I.
std::optional<StingrayProfile> stingray_profile_unchecked(const Matrix& g);

struct DuoCheck {
  std::optional<StingrayProfile> p1, p2;
  bool duo = false;  // both stingray and im(g1-1) ∩ im(g2-1) = {0}
};

DuoCheck check_duo(const Matrix& g1, const Matrix& g2);
inline bool is_duo(const Matrix& g1, const Matrix& g2) { return check_duo(g1, g2).duo; }

/// Irreducibility criterion for a stingray duo: (a) V = U1 ⊕ U2,
/// (b) F1 ∩ F2 = {0}, (c) U1 != F2 and U2 != F1.  Equivalent to
/// <g1,g2> acting irreducibly.  Throws NotADuo unless check.duo.
bool l1_criterion(const DuoCheck& check, uint32_t d);
bool l1_criterion(const Matrix& g1, const Matrix& g2);

/// Smallest subspace containing the seed rows and closed under right
/// multiplication by every generator (worklist closure).
Subspace spin(const Matrix& seed_rows, std::span<const Matrix> generators);

struct SpinCaps {
  uint32_t max_d = 8;
  uint32_t max_q = 9;
};

/// True iff spin({v}, generators) is the full space for every 1-space
/// representative v (first nonzero coordinate normalized to 1).
/// Throws CapExceeded beyond the configured caps.
bool is_irreducible_group(std::span<const Matrix> generators, SpinCaps caps = {});

/// True unless (e == 1 && q == 2): over GF(2) no scalar differs from 1, so
/// 1-stingray elements do not exist.
bool stingray_class_exists(uint32_t e, uint32_t q);

/// Lexicographically least monic irreducible degree-e polynomial valid as a
/// stingray restriction charpoly (excludes t and t-1).  EmptyClass if none.
Poly canonical_stingray_charpoly(const Field& f, uint32_t e);

/// companion(a) ⊕ I_{d-e} for the canonical charpoly a.
Matrix canonical_stingray_representative(const Field& f, uint32_t d, uint32_t e);

/// Representative with a caller-chosen restriction charpoly.
Matrix stingray_representative(const Field& f, uint32_t d, const Poly& a);

std::vector<Matrix> sl_generators(const Field& f, uint32_t d);
std::vector<Matrix> gl_generators(const Field& f, uint32_t d);

}  // namespace stingray
