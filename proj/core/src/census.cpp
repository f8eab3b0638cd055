#include "stingray/census.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "nlohmann/json.hpp"
#include "stingray/io.hpp"

namespace stingray {

using json = nlohmann::json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string matrix_key(const Matrix& m) {
  std::string key(reinterpret_cast<const char*>(m.data().data()),
                  m.data().size() * sizeof(uint16_t));
  return key;
}

}  // namespace

Caps Caps::defaults() {
  Caps c;
  if (const char* env = std::getenv("STINGRAY_CAP_OVERRIDE")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) {
      c.subspace_enum = v;
      c.edge_checks = v;
      c.ab_pairs = v;
      c.group_sweep = v;
      c.pair_sweep = v;
      c.orbit = v;
    }
  }
  return c;
}

WalkCensus graph_walk_census(const Field& f, uint32_t e1, uint32_t e2, const Caps& caps,
                             bool reversed) {
  const auto t0 = std::chrono::steady_clock::now();
  const uint32_t d = e1 + e2;
  std::vector<Subspace> x1 = all_subspaces(f, d, e1, caps.subspace_enum);
  std::vector<Subspace> x2 = all_subspaces(f, d, e2, caps.subspace_enum);
  const size_t n1 = x1.size(), n2 = x2.size();
  if (uint64_t(n1) * n2 > caps.edge_checks)
    throw EnumerationTooLarge("graph census: |X1|*|X2| exceeds the edge-check cap");

  // adj[i2][i1] = 1 iff X2[i2] and X1[i1] are disjoint.
  std::vector<std::vector<uint8_t>> adj(n2, std::vector<uint8_t>(n1, 0));
  std::vector<std::vector<uint32_t>> nbr21(n2), nbr12(n1);
  for (size_t i2 = 0; i2 < n2; ++i2)
    for (size_t i1 = 0; i1 < n1; ++i1)
      if (trivial_intersection(x2[i2], x1[i1])) {
        adj[i2][i1] = 1;
        nbr21[i2].push_back(static_cast<uint32_t>(i1));
        nbr12[i1].push_back(static_cast<uint32_t>(i2));
      }

  uint64_t walks = 0, arcs = 0, closed_walks = 0, closed_arcs = 0;
  if (!reversed) {
    // (S0,S1,S2,S3) in X2 x X1 x X2 x X1.
    for (uint32_t s0 = 0; s0 < n2; ++s0)
      for (uint32_t s1 : nbr21[s0])
        for (uint32_t s2 : nbr12[s1]) {
          const bool arc02 = (s2 != s0);
          for (uint32_t s3 : nbr21[s2]) {
            ++walks;
            const bool arc = arc02 && (s3 != s1);
            arcs += arc;
            const bool closed = adj[s0][s3];
            closed_walks += closed;
            closed_arcs += (closed && arc);
          }
        }
  } else {
    for (uint32_t s0 = 0; s0 < n1; ++s0)
      for (uint32_t s1 : nbr12[s0])
        for (uint32_t s2 : nbr21[s1]) {
          const bool arc02 = (s2 != s0);
          for (uint32_t s3 : nbr12[s2]) {
            ++walks;
            const bool arc = arc02 && (s3 != s1);
            arcs += arc;
            const bool closed = adj[s3][s0];
            closed_walks += closed;
            closed_arcs += (closed && arc);
          }
        }
  }

  WalkCensus wc;
  wc.e1 = e1;
  wc.e2 = e2;
  wc.q = f.q();
  wc.walks3 = BigInt(static_cast<unsigned long>(walks));
  wc.arcs3 = BigInt(static_cast<unsigned long>(arcs));
  wc.closed_walks3 = BigInt(static_cast<unsigned long>(closed_walks));
  wc.closed_arcs3 = BigInt(static_cast<unsigned long>(closed_arcs));
  wc.oracle_kind = OracleKind::graph;
  wc.wall_seconds = seconds_since(t0);
  return wc;
}

WalkCensus ab_walk_census(const Field& f, uint32_t e1, uint32_t e2, const Caps& caps) {
  const auto t0 = std::chrono::steady_clock::now();
  const uint32_t q = f.q();
  const uint64_t m = uint64_t(e1) * e2;
  uint64_t pair_count = 1;
  for (uint64_t i = 0; i < 2 * m; ++i) {
    pair_count *= q;
    if (pair_count > caps.ab_pairs)
      throw EnumerationTooLarge("(A,B) census: q^{2 e1 e2} exceeds the cap");
  }

  uint64_t closed_hits = 0, closed_arc_hits = 0;
  Matrix a(f, e2, e1), b(f, e1, e2);
  const uint64_t a_total = [&] {
    uint64_t t = 1;
    for (uint64_t i = 0; i < m; ++i) t *= q;
    return t;
  }();
  std::vector<uint16_t> adig(m, 0), bdig(m, 0);
  for (uint64_t ai = 0; ai < a_total; ++ai) {
    bool a_zero = a.is_zero();
    std::fill(bdig.begin(), bdig.end(), 0);
    b = Matrix(f, e1, e2);
    for (uint64_t bi = 0; bi < a_total; ++bi) {
      Matrix prod = a * b;  // e2 x e2
      Matrix i_minus = Matrix::identity(f, e2) - prod;
      if (rank(std::move(i_minus)) == e2) {
        ++closed_hits;
        if (!a_zero && bi != 0) ++closed_arc_hits;
      }
      // odometer on B
      size_t t = 0;
      for (; t < bdig.size(); ++t) {
        if (++bdig[t] < q) break;
        bdig[t] = 0;
      }
      if (t == bdig.size()) break;
      b.set_raw(static_cast<uint32_t>(t / e2), static_cast<uint32_t>(t % e2), bdig[t]);
      for (size_t u = 0; u < t; ++u)
        b.set_raw(static_cast<uint32_t>(u / e2), static_cast<uint32_t>(u % e2), 0);
    }
    // odometer on A
    size_t t = 0;
    for (; t < adig.size(); ++t) {
      if (++adig[t] < q) break;
      adig[t] = 0;
    }
    if (t == adig.size() && ai + 1 < a_total) throw Error("odometer exhausted early");
    if (t < adig.size()) {
      a.set_raw(static_cast<uint32_t>(t / e1), static_cast<uint32_t>(t % e1), adig[t]);
      for (size_t u = 0; u < t; ++u)
        a.set_raw(static_cast<uint32_t>(u / e1), static_cast<uint32_t>(u % e1), 0);
    }
  }

  // Exact frame count q^{2 e1 e2} xi = |GL_d| / (|GL_e1| |GL_e2|).
  BigInt frames = gl_order(e1 + e2, q) / (gl_order(e1, q) * gl_order(e2, q));
  BigInt qm = pow_int(q, m);

  WalkCensus wc;
  wc.e1 = e1;
  wc.e2 = e2;
  wc.q = q;
  wc.walks3 = frames * qm * qm;
  wc.arcs3 = frames * (qm - 1) * (qm - 1);
  wc.closed_walks3 = frames * BigInt(static_cast<unsigned long>(closed_hits));
  wc.closed_arcs3 = frames * BigInt(static_cast<unsigned long>(closed_arc_hits));
  wc.oracle_kind = OracleKind::matrix_ab;
  wc.wall_seconds = seconds_since(t0);
  return wc;
}

std::vector<Poly> stingray_charpolys(const Field& f, uint32_t e) {
  // Monic irreducibles of degree e over GF(q), excluding t and (for e = 1) t-1.
  std::vector<Poly> out;
  const uint64_t q = f.q();
  uint64_t total = 1;
  for (uint32_t i = 0; i < e; ++i) total *= q;
  const uint32_t minus_one = f.neg_idx(1);
  for (uint64_t mcode = 0; mcode < total; ++mcode) {
    std::vector<uint32_t> c(e + 1, 0);
    c[e] = 1;
    uint64_t rest = mcode;
    for (uint32_t i = 0; i < e; ++i) {
      c[i] = static_cast<uint32_t>(rest % q);
      rest /= q;
    }
    Poly cand{std::move(c)};
    if (cand.c[0] == 0) continue;  // divisible by t, not invertible
    if (e == 1 && cand.c[0] == minus_one) continue;  // t - 1: trivial action
    if (poly_is_irreducible(cand, f)) out.push_back(std::move(cand));
  }
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return a.c < b.c; });
  return out;
}

namespace {

std::vector<Matrix> conjugation_orbit(const Matrix& rep, const std::vector<Matrix>& gens,
                                      uint64_t cap) {
  std::vector<Matrix> inv_gens;
  inv_gens.reserve(gens.size());
  for (const Matrix& g : gens) inv_gens.push_back(inverse(g));
  std::unordered_set<std::string> seen;
  std::vector<Matrix> orbit;
  std::deque<size_t> queue;
  seen.insert(matrix_key(rep));
  orbit.push_back(rep);
  queue.push_back(0);
  while (!queue.empty()) {
    const Matrix cur = orbit[queue.front()];
    queue.pop_front();
    for (size_t i = 0; i < gens.size(); ++i) {
      Matrix next = inv_gens[i] * cur * gens[i];
      auto ins = seen.insert(matrix_key(next));
      if (!ins.second) continue;
      orbit.push_back(std::move(next));
      if (orbit.size() > cap) throw EnumerationTooLarge("conjugation orbit exceeds the cap");
      queue.push_back(orbit.size() - 1);
    }
  }
  return orbit;
}

}  // namespace

std::vector<StingrayClass> enumerate_stingray_elements(const Field& f, uint32_t d, uint32_t e,
                                                       const Caps& caps) {
  if (!stingray_class_exists(e, f.q()))
    throw EmptyClass("no " + std::to_string(e) + "-stingray elements over GF(" +
                     std::to_string(f.q()) + ")");
  if (e > d) throw Error("e exceeds d");

  std::map<std::string, StingrayClass> by_key;
  BigInt order = gl_order(d, f.q());
  if (order <= BigInt(static_cast<unsigned long>(caps.group_sweep))) {
    // Full sweep of GL_d(q) inside the q^{d^2} cube.
    const uint32_t q = f.q();
    const uint64_t cells = uint64_t(d) * d;
    Matrix g(f, d, d);
    std::vector<uint16_t> dig(cells, 0);
    for (;;) {
      {
        Matrix copy = g;
        if (rank(std::move(copy)) == d && !g.is_identity()) {
          auto p = stingray_profile_unchecked(g);
          if (p && p->e == e) {
            std::string key = poly_to_string(p->restriction_charpoly);
            auto& cls = by_key[key];
            if (cls.elements.empty()) {
              cls.charpoly = p->restriction_charpoly;
              cls.key = key;
            }
            cls.elements.push_back(g);
          }
        }
      }
      size_t t = 0;
      for (; t < cells; ++t) {
        if (++dig[t] < q) break;
        dig[t] = 0;
      }
      if (t == cells) break;
      g.set_raw(static_cast<uint32_t>(t / d), static_cast<uint32_t>(t % d), dig[t]);
      for (size_t u = 0; u < t; ++u)
        g.set_raw(static_cast<uint32_t>(u / d), static_cast<uint32_t>(u % d), 0);
    }
  } else {
    // One conjugation orbit per restriction charpoly.
    auto gens = gl_generators(f, d);
    for (const Poly& a : stingray_charpolys(f, e)) {
      StingrayClass cls;
      cls.charpoly = a;
      cls.key = poly_to_string(a);
      cls.elements = conjugation_orbit(stingray_representative(f, d, a), gens, caps.orbit);
      by_key.emplace(cls.key, std::move(cls));
    }
  }

  std::vector<StingrayClass> out;
  out.reserve(by_key.size());
  for (auto& [key, cls] : by_key) out.push_back(std::move(cls));
  return out;
}

namespace {

// Interns canonical subspaces per dimension so pair classification reduces to
// table lookups on small integer ids.
struct SubspaceInterner {
  std::unordered_map<std::string, uint32_t> ids;
  std::vector<Subspace> spaces;

  uint32_t intern(const Subspace& s) {
    std::string key = matrix_key(s.basis());
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(spaces.size());
    ids.emplace(std::move(key), id);
    spaces.push_back(s);
    return id;
  }
};

}  // namespace

DuoCensus exhaustive_duo_census(const Field& f, uint32_t d, uint32_t e1, uint32_t e2,
                                const Caps& caps) {
  const auto t0 = std::chrono::steady_clock::now();
  DuoCensus dc;
  dc.d = d;
  dc.q = f.q();
  dc.e1 = e1;
  dc.e2 = e2;

  std::vector<StingrayClass> cls1, cls2;
  try {
    cls1 = enumerate_stingray_elements(f, d, e1, caps);
    cls2 = enumerate_stingray_elements(f, d, e2, caps);
  } catch (const EmptyClass&) {
    dc.status = DuoCensus::Status::skipped_empty_class;
    dc.wall_seconds = seconds_since(t0);
    return dc;
  }

  uint64_t total1 = 0, total2 = 0;
  for (const auto& c : cls1) total1 += c.elements.size();
  for (const auto& c : cls2) total2 += c.elements.size();
  if (total1 * total2 > caps.pair_sweep)
    throw EnumerationTooLarge("duo census: pair count exceeds the cap");

  const BigInt expect1 = class_size(d, e1, f.q());
  const BigInt expect2 = class_size(d, e2, f.q());
  dc.class_sizes_match_formula = true;
  for (const auto& c : cls1) {
    dc.classes1.emplace_back(c.key, c.elements.size());
    if (BigInt(static_cast<unsigned long>(c.elements.size())) != expect1)
      dc.class_sizes_match_formula = false;
  }
  for (const auto& c : cls2) {
    dc.classes2.emplace_back(c.key, c.elements.size());
    if (BigInt(static_cast<unsigned long>(c.elements.size())) != expect2)
      dc.class_sizes_match_formula = false;
  }

  // Profile every element once; classification then runs on interned ids.
  std::map<uint32_t, SubspaceInterner> interners;  // by dimension
  struct Rec {
    uint32_t cls, u, fx;
    const Matrix* mat;
  };
  auto build = [&](const std::vector<StingrayClass>& classes) {
    std::vector<Rec> recs;
    for (uint32_t ci = 0; ci < classes.size(); ++ci)
      for (const Matrix& g : classes[ci].elements) {
        auto p = stingray_profile_unchecked(g);
        if (!p) throw Error("census element lost its profile");
        Rec r;
        r.cls = ci;
        r.u = interners[p->image.dim()].intern(p->image);
        r.fx = interners[p->fixed.dim()].intern(p->fixed);
        r.mat = &g;
        recs.push_back(r);
      }
    return recs;
  };
  std::vector<Rec> side1 = build(cls1), side2 = build(cls2);

  auto disjoint_table = [&](uint32_t dim_a, uint32_t dim_b) {
    const auto& sa = interners[dim_a].spaces;
    const auto& sb = interners[dim_b].spaces;
    std::vector<std::vector<uint8_t>> t(sa.size(), std::vector<uint8_t>(sb.size(), 0));
    for (size_t i = 0; i < sa.size(); ++i)
      for (size_t j = 0; j < sb.size(); ++j) t[i][j] = trivial_intersection(sa[i], sb[j]);
    return t;
  };
  const auto disjoint_uu = disjoint_table(e1, e2);             // U1 vs U2
  const auto disjoint_ff = disjoint_table(d - e1, d - e2);     // F1 vs F2
  const bool spin_possible = d <= SpinCaps{}.max_d && f.q() <= SpinCaps{}.max_q;

  // Per-class-pair fibre histograms over (F1, U1, U2, F2) ids.
  const uint64_t nu1 = interners[e1].spaces.size();
  const uint64_t nf1 = interners[d - e1].spaces.size();
  const uint64_t nu2 = interners[e2].spaces.size();
  const uint64_t nf2 = interners[d - e2].spaces.size();
  const uint64_t fibre_cells = nf1 * nu1 * nu2 * nf2;
  const bool track_fibres = fibre_cells > 0 && fibre_cells * cls1.size() * cls2.size() <= 50'000'000;
  std::vector<std::vector<uint32_t>> fibre(
      track_fibres ? cls1.size() * cls2.size() : 0,
      std::vector<uint32_t>());
  if (track_fibres)
    for (auto& v : fibre) v.assign(fibre_cells, 0);

  std::vector<ClassPairStats> stats(cls1.size() * cls2.size());
  for (uint32_t a = 0; a < cls1.size(); ++a)
    for (uint32_t b = 0; b < cls2.size(); ++b) {
      stats[a * cls2.size() + b].c1 = cls1[a].key;
      stats[a * cls2.size() + b].c2 = cls2[b].key;
    }

  const uint64_t stride = caps.full_spin ? 1 : std::max<uint64_t>(1, caps.spin_stride);
  uint64_t pair_index = 0;
  std::vector<Matrix> gen_pair;
  for (const Rec& r1 : side1) {
    for (const Rec& r2 : side2) {
      auto& st = stats[r1.cls * cls2.size() + r2.cls];
      ++st.pairs;
      const bool duo = disjoint_uu[r1.u][r2.u];
      bool irreducible = false;
      if (!duo) {
        ++dc.non_duo;
      } else {
        irreducible = (e1 + e2 == d) && disjoint_ff[r1.fx][r2.fx] &&
                      !(e1 == d - e2 && r1.u == r2.fx) && !(e2 == d - e1 && r2.u == r1.fx);
        if (irreducible)
          ++dc.irreducible_duo;
        else
          ++dc.reducible_duo;
        ++st.duos;
        st.irreducible += irreducible;
        if (track_fibres) {
          const uint64_t key = ((uint64_t(r1.fx) * nu1 + r1.u) * nu2 + r2.u) * nf2 + r2.fx;
          ++fibre[r1.cls * cls2.size() + r2.cls][key];
        }
      }
      if (spin_possible && pair_index % stride == 0) {
        gen_pair = {*r1.mat, *r2.mat};
        const bool spin_irred = is_irreducible_group(gen_pair);
        ++dc.spin_checked;
        if (spin_irred != (duo && irreducible)) ++dc.spin_mismatches;
      }
      ++pair_index;
    }
  }
  dc.pairs = pair_index;

  if (track_fibres) {
    const BigInt expected_fibre = duo_fibre(e1, e2, f.q());
    for (size_t cp = 0; cp < fibre.size(); ++cp) {
      auto& st = stats[cp];
      st.fibre_constant = true;
      st.fibre_size = 0;
      for (uint32_t count : fibre[cp]) {
        if (!count) continue;
        ++st.distinct_walk_images;
        if (st.fibre_size == 0) st.fibre_size = count;
        if (count != st.fibre_size) st.fibre_constant = false;
      }
      if (BigInt(static_cast<unsigned long>(st.fibre_size)) != expected_fibre)
        st.fibre_constant = false;
    }
  }
  dc.class_pairs = std::move(stats);
  dc.wall_seconds = seconds_since(t0);
  return dc;
}

std::vector<std::string> duo_census_discrepancies(const DuoCensus& dc) {
  std::vector<std::string> out;
  if (dc.status != DuoCensus::Status::ok) return out;
  const KneserParams kp(std::max(dc.e1, dc.e2), std::min(dc.e1, dc.e2), dc.q);
  if (!dc.class_sizes_match_formula) out.push_back("class size formula violated");
  if (BigInt(static_cast<unsigned long>(dc.classes1.size())) != stingray_class_count(dc.e1, dc.q))
    out.push_back("class count (e1 side) unexpected");
  if (BigInt(static_cast<unsigned long>(dc.classes2.size())) != stingray_class_count(dc.e2, dc.q))
    out.push_back("class count (e2 side) unexpected");
  if (dc.duos() == 0 || dc.pairs == 0) {
    out.push_back("census saw no duos");
    return out;
  }
  if (dc.e1 + dc.e2 == dc.d) {
    BigRat pooled_duo(static_cast<unsigned long>(dc.duos()), static_cast<unsigned long>(dc.pairs));
    pooled_duo.canonicalize();
    if (!(pooled_duo == duo_fraction(dc.e1, dc.e2, dc.q)))
      out.push_back("pooled duo fraction != 1/xi");
    BigRat pooled_irr(static_cast<unsigned long>(dc.irreducible_duo),
                      static_cast<unsigned long>(dc.duos()));
    pooled_irr.canonicalize();
    if (!(pooled_irr == proportion_P(kp))) out.push_back("pooled irreducible/duo != P");
    const BigInt expected_images = walk3_count(kp);
    const BigInt expected_fibre = duo_fibre(dc.e1, dc.e2, dc.q);
    for (const auto& st : dc.class_pairs) {
      BigRat dfrac(static_cast<unsigned long>(st.duos), static_cast<unsigned long>(st.pairs));
      dfrac.canonicalize();
      if (!(dfrac == duo_fraction(dc.e1, dc.e2, dc.q)))
        out.push_back("class-pair duo fraction != 1/xi (" + st.c1 + " x " + st.c2 + ")");
      BigRat ifrac(static_cast<unsigned long>(st.irreducible),
                   static_cast<unsigned long>(st.duos));
      ifrac.canonicalize();
      if (!(ifrac == proportion_P(kp)))
        out.push_back("class-pair irreducible/duo != P (" + st.c1 + " x " + st.c2 + ")");
      if (!st.fibre_constant || BigInt(static_cast<unsigned long>(st.fibre_size)) != expected_fibre)
        out.push_back("fibre not constant at the predicted size (" + st.c1 + " x " + st.c2 + ")");
      if (BigInt(static_cast<unsigned long>(st.distinct_walk_images)) != expected_images)
        out.push_back("3-walk image count misses surjectivity (" + st.c1 + " x " + st.c2 + ")");
    }
  }
  if (dc.spin_mismatches) out.push_back("spin re-verification disagreed");
  return out;
}

ClassIndependenceReport verify_class_independence(const Field& f, uint32_t d, const Matrix& rep,
                                                  const Caps& caps) {
  ClassIndependenceReport r;
  if (f.q() == 2) {
    r.status = ClassIndependenceReport::Status::skipped_trivial_quotient;
    return r;
  }
  auto prof = stingray_profile(rep);
  if (!prof) throw Error("class independence needs a stingray representative");
  r.expected = class_size(d, prof->e, f.q());
  r.sl_orbit = conjugation_orbit(rep, sl_generators(f, d), caps.orbit).size();
  r.gl_orbit = conjugation_orbit(rep, gl_generators(f, d), caps.orbit).size();
  r.pass = r.sl_orbit == r.gl_orbit &&
           BigInt(static_cast<unsigned long>(r.gl_orbit)) == r.expected;
  return r;
}

std::vector<BigInt> rank_census(const Field& f, uint32_t e2, uint32_t e1, const Caps& caps) {
  const uint32_t q = f.q();
  uint64_t total = 1;
  for (uint64_t i = 0; i < uint64_t(e1) * e2; ++i) {
    total *= q;
    if (total > caps.ab_pairs) throw EnumerationTooLarge("rank census exceeds the cap");
  }
  std::vector<uint64_t> hist(std::min(e1, e2) + 1, 0);
  Matrix m(f, e2, e1);
  std::vector<uint16_t> dig(uint64_t(e1) * e2, 0);
  for (uint64_t i = 0;; ++i) {
    Matrix copy = m;
    ++hist[rank(std::move(copy))];
    size_t t = 0;
    for (; t < dig.size(); ++t) {
      if (++dig[t] < q) break;
      dig[t] = 0;
    }
    if (t == dig.size()) break;
    m.set_raw(static_cast<uint32_t>(t / e1), static_cast<uint32_t>(t % e1), dig[t]);
    for (size_t u = 0; u < t; ++u)
      m.set_raw(static_cast<uint32_t>(u / e1), static_cast<uint32_t>(u % e1), 0);
  }
  std::vector<BigInt> out;
  for (uint64_t h : hist) out.emplace_back(static_cast<unsigned long>(h));
  return out;
}

std::string to_json(const WalkCensus& wc) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "walk_census";
  j["params"] = {{"e1", wc.e1}, {"e2", wc.e2}, {"q", wc.q}};
  j["counts"] = {{"walks3", wc.walks3.get_str()},
                 {"arcs3", wc.arcs3.get_str()},
                 {"closed_walks3", wc.closed_walks3.get_str()},
                 {"closed_arcs3", wc.closed_arcs3.get_str()}};
  j["oracle_kind"] = wc.oracle_kind == OracleKind::graph ? "graph" : "matrix_ab";
  j["wall_seconds"] = wc.wall_seconds;
  return j.dump(2);
}

std::string to_json(const DuoCensus& dc) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "duo_census";
  j["params"] = {{"d", dc.d}, {"q", dc.q}, {"e1", dc.e1}, {"e2", dc.e2}};
  j["status"] = dc.status == DuoCensus::Status::ok ? "ok" : "skipped (no such stingray elements)";
  if (dc.status == DuoCensus::Status::ok) {
    auto classes = [](const std::vector<std::pair<std::string, uint64_t>>& cs) {
      json arr = json::array();
      for (const auto& [key, size] : cs) arr.push_back({{"charpoly", key}, {"size", size}});
      return arr;
    };
    j["classes_e1"] = classes(dc.classes1);
    j["classes_e2"] = classes(dc.classes2);
    j["counts"] = {{"pairs", dc.pairs},
                   {"non_duo", dc.non_duo},
                   {"reducible_duo", dc.reducible_duo},
                   {"irreducible_duo", dc.irreducible_duo}};
    json pairs = json::array();
    for (const auto& st : dc.class_pairs)
      pairs.push_back({{"c1", st.c1},
                       {"c2", st.c2},
                       {"pairs", st.pairs},
                       {"duos", st.duos},
                       {"irreducible", st.irreducible},
                       {"fibre_constant", st.fibre_constant},
                       {"fibre_size", st.fibre_size},
                       {"distinct_walk_images", st.distinct_walk_images}});
    j["class_pairs"] = pairs;
    j["spin"] = {{"checked", dc.spin_checked}, {"mismatches", dc.spin_mismatches}};
    j["class_sizes_match_formula"] = dc.class_sizes_match_formula;
  }
  j["wall_seconds"] = dc.wall_seconds;
  return j.dump(2);
}

}  // namespace stingray
