#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stingray/element.hpp"
#include "stingray/exactq.hpp"
#include "stingray/field.hpp"

namespace stingray {

/// Enumeration budgets.  STINGRAY_CAP_OVERRIDE (integer) replaces every
/// enumeration cap when set in the environment.
struct Caps {
  uint64_t subspace_enum = 1'000'000;   // enumerate_subspaces
  uint64_t edge_checks = 10'000'000;    // graph census |X1|*|X2|
  uint64_t ab_pairs = 100'000'000;      // (A,B) census and rank census
  uint64_t group_sweep = 25'000;        // full-group enumeration |GL_d(q)|
  uint64_t pair_sweep = 10'000'000;     // duo census ordered pairs
  uint64_t orbit = 200'000;             // conjugation-orbit closure
  uint64_t spin_stride = 97;            // deterministic 1-in-K spin re-verification
  bool full_spin = false;               // spin-verify every pair instead
  uint64_t rejection_budget = 1'000'000;

  static Caps defaults();
};

enum class OracleKind { graph, matrix_ab };

struct WalkCensus {
  uint32_t e1 = 0, e2 = 0, q = 0;
  BigInt walks3, arcs3, closed_walks3, closed_arcs3;
  OracleKind oracle_kind = OracleKind::graph;
  double wall_seconds = 0;
};

/// Explicit enumeration of the bipartite graph: builds X1, X2 and the
/// disjointness adjacency, then counts 3-walks / 3-arcs / closed variants in
/// X2 x X1 x X2 x X1 by direct nested iteration.  `reversed` counts the
/// mirror orientation X1 x X2 x X1 x X2 instead (reversal symmetry checks).
WalkCensus graph_walk_census(const Field& f, uint32_t e1, uint32_t e2,
                             const Caps& caps = Caps::defaults(), bool reversed = false);

/// The matrix parametrization oracle: fixes the frame U1 = rs[I 0],
/// U2 = rs[0 I], writes complements as F1 = rs[A I], F2 = rs[I B], and sweeps
/// all (A, B).  A closed walk is det(I - AB) != 0; a closed arc additionally
/// has A != 0 and B != 0.  Hits scale by the exact frame count q^{2e1e2} xi.
WalkCensus ab_walk_census(const Field& f, uint32_t e1, uint32_t e2,
                          const Caps& caps = Caps::defaults());

struct StingrayClass {
  Poly charpoly;
  std::string key;  // printable charpoly, class identifier
  std::vector<Matrix> elements;
};

/// Valid restriction charpolys of e-stingray elements: monic irreducibles of
/// degree e, excluding t, and excluding t-1 when e = 1.  Sorted by
/// coefficient sequence; one per conjugacy class.
std::vector<Poly> stingray_charpolys(const Field& f, uint32_t e);

/// All e-stingray elements of GL_d(q) grouped by restriction charpoly; by a
/// full group sweep when |GL_d(q)| fits the cap, otherwise by building each
/// class as a conjugation orbit of companion(a) ⊕ I.  Throws EmptyClass when
/// no e-stingray element exists (e = 1, q = 2).
std::vector<StingrayClass> enumerate_stingray_elements(const Field& f, uint32_t d, uint32_t e,
                                                       const Caps& caps = Caps::defaults());

struct ClassPairStats {
  std::string c1, c2;
  uint64_t pairs = 0, duos = 0, irreducible = 0;
  bool fibre_constant = false;
  uint64_t fibre_size = 0;
  uint64_t distinct_walk_images = 0;
};

struct DuoCensus {
  uint32_t d = 0, q = 0, e1 = 0, e2 = 0;
  enum class Status { ok, skipped_empty_class } status = Status::ok;
  std::vector<std::pair<std::string, uint64_t>> classes1, classes2;  // key, size
  uint64_t pairs = 0, non_duo = 0, reducible_duo = 0, irreducible_duo = 0;
  std::vector<ClassPairStats> class_pairs;
  uint64_t spin_checked = 0, spin_mismatches = 0;
  bool class_sizes_match_formula = false;  // each class size == class_size(d,e,q)
  double wall_seconds = 0;

  uint64_t duos() const { return reducible_duo + irreducible_duo; }
};

/// Classifies every ordered pair of stingray elements (is_duo, then the
/// irreducibility criterion), re-verifying a deterministic 1-in-K subsample
/// with spin-based irreducibility, and checks fibre constancy of the map
/// (g1,g2) -> (F1,U1,U2,F2) over every class pair.
DuoCensus exhaustive_duo_census(const Field& f, uint32_t d, uint32_t e1, uint32_t e2,
                                const Caps& caps = Caps::defaults());

/// Exact cross-checks of a duo census against the closed forms: class count
/// and sizes, duo fraction 1/xi (pooled and per class pair), irreducible/duo
/// proportion P (pooled and per class pair), fibre constancy at the predicted
/// size, 3-walk surjectivity, spin agreement.  Returns human-readable
/// discrepancies; empty means everything matches exactly.
std::vector<std::string> duo_census_discrepancies(const DuoCensus& dc);

struct ClassIndependenceReport {
  enum class Status { ok, skipped_trivial_quotient } status = Status::ok;
  uint64_t sl_orbit = 0, gl_orbit = 0;
  BigInt expected;
  bool pass = false;
};

/// Conjugation orbit of a stingray representative under generators of
/// SL_d(q) and of GL_d(q): equal orbit sizes prove the SL- and GL-classes
/// coincide.  Vacuous (skipped) when q = 2 since then GL = SL.
ClassIndependenceReport verify_class_independence(const Field& f, uint32_t d, const Matrix& rep,
                                                  const Caps& caps = Caps::defaults());

/// Exhaustive histogram of ranks over all of M_{e2 x e1}(GF(q)).
std::vector<BigInt> rank_census(const Field& f, uint32_t e2, uint32_t e1,
                                const Caps& caps = Caps::defaults());

std::string to_json(const WalkCensus& wc);
std::string to_json(const DuoCensus& dc);

}  // namespace stingray
