#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "stingray/errors.hpp"

namespace stingray {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Parameters of the bipartite graph on e1- and e2-subspaces of GF(q)^(e1+e2)
/// with disjointness as adjacency.  The formula layer accepts ANY integer
/// q >= 2 (everything is a rational function of q, and identity testing wants
/// extra evaluation points); modules that build actual fields enforce prime
/// powers themselves.
struct KneserParams {
  uint32_t e1 = 1, e2 = 1, q = 2;
  KneserParams(uint32_t e1_, uint32_t e2_, uint32_t q_);
  uint32_t d() const { return e1 + e2; }
};

/// When enabled, proportion_P cross-asserts the closed form against the
/// ratio of counts on every call.  Thread-safe global toggle.
void set_verify_mode(bool on);
bool verify_mode();

// Test fixture hook: deliberately perturbs rank_matrix_count (off-by-one in
// the q exponent) so the verification battery can prove it detects faults.
void set_injected_fault(const std::string& name);
const std::string& injected_fault();

BigInt pow_int(uint32_t q, uint64_t e);
BigRat q_pow(int64_t exponent, uint32_t q);  // q^exponent, any sign

/// omega(e) = prod_{i=1..e} (1 - q^-i), omega(0) = 1.
BigRat omega(int64_t e, uint32_t q);

/// |GL_e(q)| = q^{e^2} omega(e).
BigInt gl_order(uint32_t e, uint32_t q);

/// xi = omega(e1+e2) / (omega(e1) omega(e2)); the number of e2-subspaces of
/// GF(q)^{e1+e2} is q^{e1 e2} * xi.
BigRat xi(uint32_t e1, uint32_t e2, uint32_t q);

/// Number of e-subspaces of GF(q)^d (integer-valued; asserted integral).
BigInt gaussian_binomial(uint32_t d, uint32_t e, uint32_t q);

/// Number of e2 x e1 matrices of rank k over GF(q).
BigInt rank_matrix_count(uint32_t e2, uint32_t e1, uint32_t k, uint32_t q);

/// Order of the stabiliser of the rank-k representative under the
/// (GL_{e2} x GL_{e1}) action A -> X^{-1} A Y; satisfies
/// rank_matrix_count * stabiliser_order = |GL_{e1}| |GL_{e2}|.
BigInt stabiliser_order(uint32_t e2, uint32_t e1, uint32_t k, uint32_t q);

/// Walk counts over X2 x X1 x X2 x X1 (d = e1 + e2 throughout).
BigInt walk3_count(const KneserParams& kp);
BigInt arc3_count(const KneserParams& kp);
BigInt closed_walk3_count(const KneserParams& kp);
BigInt closed_arc3_count(const KneserParams& kp);

/// Proportion of 3-walks that are closed 3-arcs (exact closed form; equals
/// closed_arc3_count / walk3_count, cross-asserted in verify mode).
BigRat proportion_P(const KneserParams& kp);

/// Closed forms for P(e1,1) and P(2,2).
BigRat p_e1_1_closed_form(uint32_t e1, uint32_t q);
BigRat p_22_closed_form(uint32_t q);

/// sum_{l=0..e2} omega(e1) omega(e2) q^{-(e1-e2+l)l} /
/// (omega(e2-l) omega(e1-e2+l) omega(l));   identically 1.
BigRat q_identity_sum(uint32_t e1, uint32_t e2, uint32_t q);

struct BoundCheck {
  BigRat value;
  BigRat lower, upper;
  bool holds = false;
};

/// 1 - q^-1 - q^-2 < P < 1 - q^-1 - q^-2 + 2q^-3 - 2q^-5 for 2 <= e2 <= e1;
/// for e2 = 1, e1 >= 3 the upper bound is 1 - q^-1.
/// Throws BoundNotApplicable for (1,1) and (2,1).
BoundCheck bounds_P(const KneserParams& kp);

/// Conjugacy class size of an e-stingray element of GL_d(q):
/// |GL_d| / ((q^e - 1) |GL_{d-e}|).
BigInt class_size(uint32_t d, uint32_t e, uint32_t q);

/// Number of class elements sharing a fixed (U, F) frame: |GL_e| / (q^e - 1).
BigInt fibre_size(uint32_t e, uint32_t q);

/// Pairs sharing a fixed 3-walk frame: fibre_size(e1) * fibre_size(e2).
BigInt duo_fibre(uint32_t e1, uint32_t e2, uint32_t q);

/// Number of distinct stingray conjugacy classes for dimension e (monic
/// irreducible degree-e polynomials, excluding t and t-1 when e = 1).
BigInt stingray_class_count(uint32_t e, uint32_t q);

/// Fraction of a class pair C1 x C2 that are duos: 1/xi.
BigRat duo_fraction(uint32_t e1, uint32_t e2, uint32_t q);

/// (1-q^-d)(1-q^-(d-1)) / ((1-q^-1)(1-q^-2)) <= xi < 1/(1-q^-1-q^-2+q^-5),
/// for 2 <= e2 <= e1 (BoundNotApplicable otherwise).
BoundCheck xi_bounds(uint32_t e1, uint32_t e2, uint32_t q);

/// 1 - P <= q^-1 + q^-2 for 2 <= e2 <= e1 (BoundNotApplicable otherwise).
BoundCheck reducible_duo_bound(const KneserParams& kp);

/// Fraction of class pairs generating a reducible subgroup: 1 - P/xi.
BigRat reducible_pair_value(const KneserParams& kp);

/// 2q^-1 + q^-2 - 2q^-3 - q^-4  (upper bound for 1 - P/xi, 2 <= e2 <= e1).
BigRat reducible_pair_bound(uint32_t q);

/// 2q^-1 + q^-2 - 2q^-3 - q^-4 + 2q^{-d^2/4}, d even (comparison bound;
/// the reducible_pair_bound is strictly below it).
BigRat psy_pair_bound(uint32_t d, uint32_t q);

/// 1 - q^-1 - q^-2 - c * q^{-d^2/4 + d/2 + 2} with d = 2e (symbolic reporting
/// utility; c is caller-supplied, nothing empirical asserted).
BigRat generating_duo_lower_bound(uint32_t e, uint32_t q, const BigRat& c);

std::string rational_string(const BigRat& r);       // "num/den"
std::string decimal12(const BigRat& r);             // 12 significant digits

}  // namespace stingray
