#include "stingray/verify.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

namespace stingray {

uint32_t default_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return std::min(hw, 8u);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Failures {
  std::ostringstream os;
  uint64_t count = 0;
  void add(const std::string& msg) {
    if (count < 8) os << (count ? "; " : "") << msg;
    ++count;
  }
  std::string summary(const std::string& ok_msg) const {
    if (!count) return ok_msg;
    std::string s = os.str();
    if (count > 8) s += "; ... (" + std::to_string(count) + " failures total)";
    return s;
  }
};

CriterionResult criterion1_q_identity(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult r{1, "q-identity sum = 1 on the (e1,e2,q) grid"};
  Failures fails;
  uint64_t cases = 0;
  const uint32_t emax = std::max(1u, opt.max_e);
  for (uint32_t e1 = 1; e1 <= emax; ++e1)
    for (uint32_t e2 = 1; e2 <= e1; ++e2)
      for (uint32_t q = 2; q <= std::max(2u, opt.max_q); ++q) {
        ++cases;
        if (!(q_identity_sum(e1, e2, q) == BigRat(1)))
          fails.add("(" + std::to_string(e1) + "," + std::to_string(e2) + "," + std::to_string(q) +
                    ") != 1");
      }
  r.pass = fails.count == 0;
  r.detail = fails.summary(std::to_string(cases) + " cases exact");
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult criterion2_oracle_vs_formula(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult r{2, "graph and (A,B) censuses match the closed-form counts"};
  Failures fails;
  const std::vector<std::array<uint32_t, 3>> params = {
      {1, 1, 2}, {1, 1, 3}, {1, 1, 4}, {2, 1, 2}, {2, 1, 3},
      {2, 2, 2}, {3, 1, 2}, {3, 2, 2}, {2, 2, 3}};
  uint64_t cases = 0;
  for (auto [e1, e2, q] : params) {
    if (e1 > opt.max_e || q > opt.max_q) continue;
    ++cases;
    const Field f(q);
    const KneserParams kp(e1, e2, q);
    const BigInt w = walk3_count(kp), a = arc3_count(kp);
    const BigInt cw = closed_walk3_count(kp), ca = closed_arc3_count(kp);
    const std::string tag =
        "(" + std::to_string(e1) + "," + std::to_string(e2) + "," + std::to_string(q) + ")";
    WalkCensus g = graph_walk_census(f, e1, e2);
    if (g.walks3 != w || g.arcs3 != a || g.closed_walks3 != cw || g.closed_arcs3 != ca)
      fails.add("graph census mismatch at " + tag);
    WalkCensus ab = ab_walk_census(f, e1, e2);
    if (ab.walks3 != w || ab.arcs3 != a || ab.closed_walks3 != cw || ab.closed_arcs3 != ca)
      fails.add("(A,B) census mismatch at " + tag);
    if (e1 == 1 && e2 == 1 && q == 2) {
      // Hand-anchored: three lines of GF(2)^2.
      if (!(g.walks3 == 24 && g.arcs3 == 6 && g.closed_walks3 == 18 && g.closed_arcs3 == 0))
        fails.add("hand anchor 24/6/18/0 failed at (1,1,2)");
    }
  }
  r.pass = fails.count == 0;
  r.detail = fails.summary(std::to_string(cases) + " parameter sets, both oracles exact");
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult criterion3_rank_census(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult r{3, "exhaustive rank histograms match the rank-count formula"};
  Failures fails;
  uint64_t cases = 0;
  for (uint32_t q : {2u, 3u}) {
    if (q > opt.max_q) continue;
    for (uint32_t e1 = 1; e1 <= std::min(3u, opt.max_e); ++e1)
      for (uint32_t e2 = 1; e2 <= e1; ++e2) {
        ++cases;
        const Field f(q);
        auto hist = rank_census(f, e2, e1);
        for (uint32_t k = 0; k < hist.size(); ++k)
          if (hist[k] != rank_matrix_count(e2, e1, k, q))
            fails.add("rank_matrix_count mismatch at (e2=" + std::to_string(e2) +
                      ",e1=" + std::to_string(e1) + ",k=" + std::to_string(k) +
                      ",q=" + std::to_string(q) + ")");
        BigInt total(0);
        for (const auto& h : hist) total += h;
        if (total != pow_int(q, uint64_t(e1) * e2))
          fails.add("rank histogram total != q^(e1 e2)");
      }
  }
  if (opt.max_q >= 2 && opt.max_e >= 2) {
    auto hist = rank_census(Field(2), 2, 2);
    if (!(hist.size() == 3 && hist[0] == 1 && hist[1] == 9 && hist[2] == 6))
      fails.add("M_{2x2}(GF(2)) histogram != [1,9,6]");
  }
  r.pass = fails.count == 0;
  r.detail = fails.summary(std::to_string(cases) + " matrix spaces exhaustively checked");
  r.seconds = seconds_since(t0);
  return r;
}

void check_duo_census(const DuoCensus& dc, Failures& fails, const std::string& tag) {
  if (dc.status != DuoCensus::Status::ok) {
    fails.add(tag + ": census skipped unexpectedly");
    return;
  }
  for (const std::string& msg : duo_census_discrepancies(dc)) fails.add(tag + ": " + msg);
}

CriterionResult criterion4_group_census(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult r{4, "exhaustive group censuses (GL_4(2) and GL_3(3))"};
  if (opt.max_e < 2 || opt.max_q < 3) {
    r.skipped = true;
    r.pass = true;
    r.detail = "grid too small for the group censuses";
    return r;
  }
  Failures fails;

  DuoCensus c42 = exhaustive_duo_census(Field(2), 4, 2, 2);
  check_duo_census(c42, fails, "GL_4(2) (2,2)");
  if (!(c42.classes1.size() == 1 && c42.classes1[0].second == 1120))
    fails.add("GL_4(2): stingray class size != 1120");
  if (c42.duos() != 573440) fails.add("GL_4(2): duo count != 573440");
  if (c42.irreducible_duo != 208320) fails.add("GL_4(2): irreducible duo count != 208320");

  DuoCensus c33 = exhaustive_duo_census(Field(3), 3, 2, 1);
  check_duo_census(c33, fails, "GL_3(3) (2,1)");
  if (c33.classes1.size() != 3) fails.add("GL_3(3): expected 3 quadratic classes");
  for (const auto& [key, size] : c33.classes1)
    if (size != 702) fails.add("GL_3(3): quadratic class size != 702 (" + key + ")");
  if (!(c33.classes2.size() == 1 && c33.classes2[0].second == 117))
    fails.add("GL_3(3): scalar class size != 117");
  if (c33.duos() != 170586) fails.add("GL_3(3): pooled duo count != 170586");
  if (c33.irreducible_duo != 84240) fails.add("GL_3(3): pooled irreducible count != 84240");

  // Class independence (SL vs GL conjugacy) at q = 3; vacuous at q = 2.
  {
    const Field f3(3);
    auto rep = canonical_stingray_representative(f3, 3, 2);
    auto ci = verify_class_independence(f3, 3, rep);
    if (ci.status != ClassIndependenceReport::Status::ok || !ci.pass ||
        ci.gl_orbit != 702)
      fails.add("GL_3(3): SL/GL class independence failed");
  }

  r.pass = fails.count == 0;
  r.detail = fails.summary("GL_4(2): 1254400 pairs, 573440 duos, 208320 irreducible; "
                           "GL_3(3): 246402 pairs, 170586 duos, 84240 irreducible");
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult criterion5_criterion_vs_spin(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult r{5, "irreducibility criterion agrees with spinning on random duos"};
  Failures fails;
  const uint64_t duos_per_combo =
      std::max<uint64_t>(50, static_cast<uint64_t>(std::llround(10'000 * opt.trial_scale)));
  const std::vector<std::pair<uint32_t, uint32_t>> combos = {{4, 2}, {4, 3}, {5, 2}, {6, 2}};
  uint64_t combo_index = 0, total = 0;
  for (auto [d, q] : combos) {
    ++combo_index;
    if (q > opt.max_q || d > 2 * opt.max_e) continue;
    const Field f(q);
    struct Side {
      std::vector<Matrix> reps;
      std::vector<StingrayProfile> profs;
    };
    std::map<uint32_t, Side> sides;  // by e
    std::vector<std::pair<uint32_t, uint32_t>> splits;
    for (uint32_t e2 = 1; 2 * e2 <= d; ++e2) {
      const uint32_t e1 = d - e2;
      if (!stingray_class_exists(e1, q) || !stingray_class_exists(e2, q)) continue;
      splits.emplace_back(e1, e2);
      for (uint32_t e : {e1, e2})
        if (!sides.count(e)) {
          Side s;
          for (const Poly& a : stingray_charpolys(f, e)) {
            Matrix rep = stingray_representative(f, d, a);
            s.profs.push_back(*stingray_profile(rep));
            s.reps.push_back(std::move(rep));
          }
          sides.emplace(e, std::move(s));
        }
    }
    if (splits.empty()) continue;
    uint64_t mismatches = 0;
    for (uint64_t t = 0; t < duos_per_combo; ++t) {
      Rng rng(0xC5u * 1000 + combo_index, t);
      auto [e1, e2] = splits[t % splits.size()];
      const Side& s1 = sides[e1];
      const Side& s2 = sides[e2];
      const Matrix& rep1 = s1.reps[rng.below(static_cast<uint32_t>(s1.reps.size()))];
      const Matrix& rep2 = s2.reps[rng.below(static_cast<uint32_t>(s2.reps.size()))];
      Matrix g1 = conjugate(rep1, random_gl(f, d, rng));
      Matrix g2 = conjugate(rep2, random_gl(f, d, rng));
      DuoCheck c = check_duo(g1, g2);
      while (!c.duo) {
        g2 = conjugate(rep2, random_gl(f, d, rng));
        c = check_duo(g1, g2);
      }
      const bool by_criterion = l1_criterion(c, d);
      const std::vector<Matrix> gens = {g1, g2};
      const bool by_spin = is_irreducible_group(gens);
      if (by_criterion != by_spin) ++mismatches;
      ++total;
    }
    if (mismatches)
      fails.add("(d=" + std::to_string(d) + ",q=" + std::to_string(q) + "): " +
                std::to_string(mismatches) + " disagreements");
  }
  r.pass = fails.count == 0;
  r.detail = fails.summary(std::to_string(total) + " random duos, zero disagreements");
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult criterion6_bound_grid(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult r{6, "exact bound grid (P bounds, reducible bounds, xi bounds)"};
  Failures fails;
  uint64_t cases = 0;
  const uint32_t emax = std::max(2u, opt.max_e);
  for (uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
    if (q > opt.max_q) continue;
    for (uint32_t e1 = 1; e1 <= emax; ++e1)
      for (uint32_t e2 = 1; e2 <= e1; ++e2) {
        const KneserParams kp(e1, e2, q);
        const std::string tag =
            "(" + std::to_string(e1) + "," + std::to_string(e2) + "," + std::to_string(q) + ")";
        if (e2 >= 2) {
          ++cases;
          if (!bounds_P(kp).holds) fails.add("P bounds fail at " + tag);
          if (!reducible_duo_bound(kp).holds) fails.add("1-P bound fails at " + tag);
          if (!xi_bounds(e1, e2, q).holds) fails.add("xi bounds fail at " + tag);
          if (!(reducible_pair_value(kp) < reducible_pair_bound(q)))
            fails.add("1-P/xi bound fails at " + tag);
          const uint32_t d = e1 + e2;
          if (d % 2 == 0 && !(reducible_pair_bound(q) < psy_pair_bound(d, q)))
            fails.add("bound comparison fails at " + tag);
        } else if (e1 >= 3) {
          ++cases;
          if (!bounds_P(kp).holds) fails.add("P bounds (e2=1) fail at " + tag);
        }
      }
  }
  // omega(64) sits above the analytic lower bound for omega(infinity).
  for (uint32_t q = 2; q <= std::max(2u, opt.max_q); ++q) {
    const BigRat bound = BigRat(1) - q_pow(-1, q) - q_pow(-2, q) + q_pow(-5, q);
    if (!(bound < omega(64, q))) fails.add("omega(64) below the analytic bound at q=" +
                                           std::to_string(q));
  }
  r.pass = fails.count == 0;
  r.detail = fails.summary(std::to_string(cases) + " grid points, all exact comparisons hold");
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult criterion7_monte_carlo(const VerifyOptions& opt, uint32_t workers) {
  const auto t0 = Clock::now();
  CriterionResult r{7, "Monte Carlo battery within 4 sigma of exact targets"};
  BatteryOutcome out = run_standard_battery(opt.trial_scale, workers);
  Failures fails;
  uint64_t ran = 0;
  for (const auto& tr : out.trials) {
    if (tr.status == TrialReport::Status::skipped_empty_class) continue;
    ++ran;
    if (!tr.z_ok())
      fails.add(tr.experiment + "(" + std::to_string(tr.params.e1) + "," +
                std::to_string(tr.params.e2) + ",q=" + std::to_string(tr.params.q) +
                ") z=" + std::to_string(tr.z));
  }
  for (const auto& cr : out.chis) {
    ++ran;
    if (!cr.pass)
      fails.add(cr.experiment + "(d=" + std::to_string(cr.params.d) + ",e=" +
                std::to_string(cr.params.e1) + ",q=" + std::to_string(cr.params.q) +
                ") z=" + std::to_string(cr.z));
  }
  r.pass = fails.count == 0;
  r.detail = fails.summary(std::to_string(ran) + " experiments, all |z| < 4");
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult criterion8_poly_witnesses(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult r{8, "closed forms for P(e1,1) and P(2,2) at 20 integer points"};
  Failures fails;
  uint64_t cases = 0;
  for (uint32_t e1 = 1; e1 <= std::max(1u, opt.max_e); ++e1)
    for (uint32_t q = 2; q <= 21; ++q) {
      ++cases;
      if (!(p_e1_1_closed_form(e1, q) == proportion_P(KneserParams(e1, 1, q))))
        fails.add("P(e1,1) closed form fails at (e1=" + std::to_string(e1) +
                  ",q=" + std::to_string(q) + ")");
    }
  for (uint32_t q = 2; q <= 21; ++q) {
    ++cases;
    if (!(p_22_closed_form(q) == proportion_P(KneserParams(2, 2, q))))
      fails.add("P(2,2) closed form fails at q=" + std::to_string(q));
  }
  r.pass = fails.count == 0;
  r.detail = fails.summary(std::to_string(cases) + " evaluation points exact");
  r.seconds = seconds_since(t0);
  return r;
}

}  // namespace

BatteryOutcome run_standard_battery(double scale, uint32_t workers) {
  if (workers == 0) workers = default_workers();
  auto n = [&](uint64_t base) {
    return std::max<uint64_t>(500, static_cast<uint64_t>(std::llround(double(base) * scale)));
  };
  BatteryOutcome out;
  auto add = [&](TrialReport tr) { out.trials.push_back(std::move(tr)); };

  using SM = SampleMode;
  // Irreducible-duo proportion vs P(e1,e2) — Theorem-level targets.
  add(estimate_irreducible_proportion(2, 2, 2, n(100'000), 1001, SM::uniform_group, workers));
  add(estimate_irreducible_proportion(2, 2, 2, n(100'000), 1002, SM::fixed_class_pair, workers));
  add(estimate_irreducible_proportion(3, 3, 2, n(100'000), 42, SM::uniform_group, workers));
  add(estimate_irreducible_proportion(3, 2, 2, n(100'000), 1003, SM::uniform_group, workers));
  add(estimate_irreducible_proportion(2, 1, 3, n(100'000), 1004, SM::uniform_group, workers));
  add(estimate_irreducible_proportion(2, 2, 3, n(100'000), 1005, SM::uniform_group, workers));
  add(estimate_irreducible_proportion(2, 2, 4, n(100'000), 1006, SM::fixed_class_pair, workers));
  add(estimate_irreducible_proportion(3, 1, 3, n(100'000), 1007, SM::fixed_class_pair, workers));
  add(estimate_irreducible_proportion(4, 2, 2, n(100'000), 1008, SM::fixed_class_pair, workers));
  add(estimate_irreducible_proportion(3, 3, 3, n(100'000), 1009, SM::fixed_class_pair, workers));
  add(estimate_irreducible_proportion(1, 1, 3, n(100'000), 1010, SM::uniform_group, workers));
  add(estimate_irreducible_proportion(1, 1, 4, n(100'000), 1011, SM::fixed_class_pair, workers));
  // Duo fraction vs 1/xi.
  add(estimate_duo_fraction(2, 2, 2, n(1'000'000), 2001, workers));
  add(estimate_duo_fraction(1, 1, 3, n(1'000'000), 2002, workers));
  add(estimate_duo_fraction(3, 2, 2, n(1'000'000), 2003, workers));
  add(estimate_duo_fraction(2, 1, 3, n(1'000'000), 2004, workers));
  add(estimate_duo_fraction(3, 3, 2, n(100'000), 2005, workers));
  add(estimate_duo_fraction(2, 2, 5, n(100'000), 2006, workers));
  // Reducible class-pair fraction vs 1 - P/xi.
  add(estimate_reducible_pair_fraction(2, 2, 2, n(1'000'000), 3001, workers));
  add(estimate_reducible_pair_fraction(2, 2, 9, n(100'000), 3002, workers));
  add(estimate_reducible_pair_fraction(3, 2, 3, n(100'000), 3003, workers));
  // Rejection acceptance rates vs the class-size formula.
  add(stingray_acceptance_rate(3, 2, 2, n(100'000), 4001, workers));
  add(stingray_acceptance_rate(4, 2, 2, n(100'000), 4002, workers));
  add(stingray_acceptance_rate(3, 1, 3, n(100'000), 4003, workers));
  add(stingray_acceptance_rate(4, 3, 2, n(100'000), 4004, workers));
  // random_gl acceptance vs omega(d), determinant coset balance.
  add(gl_acceptance_rate(4, 2, n(100'000), 5001, workers));
  add(gl_acceptance_rate(3, 3, n(100'000), 5002, workers));
  add(det_distribution(2, 3, n(100'000), 5003, workers));
  // Frame uniformity of class conjugates.
  out.chis.push_back(frame_uniformity_chi2(3, 1, 3, n(100'000), 6001));
  out.chis.push_back(frame_uniformity_chi2(3, 2, 2, n(100'000), 6002));

  for (const auto& tr : out.trials)
    if (!tr.z_ok()) out.pass = false;
  for (const auto& cr : out.chis)
    if (!cr.pass) out.pass = false;
  return out;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt) {
  const uint32_t workers = opt.workers ? opt.workers : default_workers();
  std::vector<CriterionResult> results;
  results.push_back(criterion1_q_identity(opt));
  results.push_back(criterion2_oracle_vs_formula(opt));
  results.push_back(criterion3_rank_census(opt));
  results.push_back(criterion4_group_census(opt));
  results.push_back(criterion5_criterion_vs_spin(opt));
  results.push_back(criterion6_bound_grid(opt));
  results.push_back(criterion7_monte_carlo(opt, workers));
  results.push_back(criterion8_poly_witnesses(opt));
  return results;
}

bool all_pass(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass && !r.skipped) return false;
  return true;
}

std::string format_result_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.skipped ? "[SKIP]" : (r.pass ? "[PASS]" : "[FAIL]")) << " criterion " << r.index
     << ": " << r.name << " — " << r.detail;
  char buf[32];
  std::snprintf(buf, sizeof buf, " (%.1fs)", r.seconds);
  os << buf;
  return os.str();
}

}  // namespace stingray
