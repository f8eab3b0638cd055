#include "stingray/sampler.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <thread>

#include "nlohmann/json.hpp"
#include "stingray/io.hpp"

namespace stingray {

using json = nlohmann::json;

bool TrialReport::z_ok(double threshold) const {
  return status == Status::skipped_empty_class || std::abs(z) < threshold;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Runs `trials` Bernoulli trials, trial t seeded from (seed, t); returns the
/// hit count.  Partitioning across workers cannot change the outcome.
uint64_t run_trials(uint64_t trials, uint32_t workers, uint64_t seed,
                    const std::function<bool(uint64_t, Rng&)>& trial) {
  workers = std::max<uint32_t>(1, workers);
  if (workers == 1 || trials < 2 * workers) {
    uint64_t hits = 0;
    for (uint64_t t = 0; t < trials; ++t) {
      Rng rng(seed, t);
      hits += trial(t, rng);
    }
    return hits;
  }
  std::vector<uint64_t> partial(workers, 0);
  std::vector<std::thread> pool;
  const uint64_t chunk = (trials + workers - 1) / workers;
  for (uint32_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const uint64_t lo = uint64_t(w) * chunk;
      const uint64_t hi = std::min(trials, lo + chunk);
      uint64_t hits = 0;
      for (uint64_t t = lo; t < hi; ++t) {
        Rng rng(seed, t);
        hits += trial(t, rng);
      }
      partial[w] = hits;
    });
  }
  for (auto& th : pool) th.join();
  uint64_t hits = 0;
  for (uint64_t h : partial) hits += h;
  return hits;
}

void finish_report(TrialReport& r, const BigRat& target) {
  r.exact_target = target;
  r.estimate = r.trials ? double(r.hits) / double(r.trials) : 0.0;
  r.stderr_est = r.trials ? std::sqrt(r.estimate * (1.0 - r.estimate) / double(r.trials)) : 0.0;
  const double p = mpq_get_d(target.get_mpq_t());
  if (p <= 0.0 || p >= 1.0) {
    // Degenerate target: any deviation is an exact failure.
    r.z = (r.estimate == p) ? 0.0 : INFINITY;
  } else {
    r.z = (double(r.hits) - double(r.trials) * p) / std::sqrt(double(r.trials) * p * (1.0 - p));
  }
}

struct TransportedProfile {
  Subspace image, fixed;
};

// U(x^{-1} r x) = U(r) x and F(x^{-1} r x) = F(r) x: a class conjugate's frame
// is the representative's frame transported by x.
TransportedProfile transport(const StingrayProfile& rep, const Matrix& x) {
  return {Subspace::from_rows(rep.image.basis() * x), Subspace::from_rows(rep.fixed.basis() * x)};
}

void assert_decomposition(const Subspace& image, const Subspace& fixed, uint32_t d) {
  if (image.dim() + fixed.dim() != d || !trivial_intersection(image, fixed))
    throw Error("verify mode: V = U + F is not direct for an accepted element");
}

}  // namespace

Matrix sample_stingray(const Field& f, uint32_t d, uint32_t e, Rng& rng, uint64_t budget,
                       StingrayProfile* profile_out, uint64_t* draws_out) {
  if (!stingray_class_exists(e, f.q()))
    throw EmptyClass("no " + std::to_string(e) + "-stingray elements over GF(" +
                     std::to_string(f.q()) + ")");
  for (uint64_t draw = 1; draw <= budget; ++draw) {
    Matrix g = random_gl(f, d, rng);
    Matrix h = g.minus_identity();
    {
      Matrix copy = h;
      if (rank(std::move(copy)) != e) continue;  // cheap gate before profiling
    }
    if (e == d && g.is_identity()) continue;
    auto p = stingray_profile_unchecked(g);
    if (p && p->e == e) {
      if (draws_out) *draws_out = draw;
      if (profile_out) *profile_out = std::move(*p);
      return g;
    }
  }
  throw RejectionBudgetExceeded("no " + std::to_string(e) + "-stingray element within " +
                                std::to_string(budget) + " group draws");
}

Matrix sample_class_conjugate(const Matrix& rep, Rng& rng) {
  auto p = stingray_profile(rep);
  if (!p) throw Error("sample_class_conjugate needs a stingray representative");
  Matrix x = random_gl(rep.field(), rep.rows(), rng);
  return conjugate(rep, x);
}

TrialReport estimate_irreducible_proportion(uint32_t e1, uint32_t e2, uint32_t q, uint64_t trials,
                                            uint64_t seed, SampleMode mode, uint32_t workers) {
  const auto t0 = std::chrono::steady_clock::now();
  const uint32_t d = e1 + e2;
  TrialReport r;
  r.experiment = "irreducible_proportion";
  r.params = {d, q, e1, e2, mode};
  r.trials = trials;
  r.seed = seed;
  r.workers = workers;
  if (!stingray_class_exists(e1, q) || !stingray_class_exists(e2, q)) {
    r.status = TrialReport::Status::skipped_empty_class;
    r.exact_target = BigRat(0);
    return r;
  }
  const Field f(q);
  const BigRat target = proportion_P(KneserParams(std::max(e1, e2), std::min(e1, e2), q));
  const bool verify = verify_mode();

  std::function<bool(uint64_t, Rng&)> trial;
  if (mode == SampleMode::uniform_group) {
    trial = [&, d, e1, e2, verify](uint64_t, Rng& rng) {
      StingrayProfile p1, p2;
      sample_stingray(f, d, e1, rng, 1'000'000, &p1);
      // Redrawing only g2 leaves the duo-conditioned distribution unchanged:
      // P(duo | g1) does not depend on g1.
      do {
        sample_stingray(f, d, e2, rng, 1'000'000, &p2);
      } while (!trivial_intersection(p1.image, p2.image));
      if (verify) {
        assert_decomposition(p1.image, p1.fixed, d);
        assert_decomposition(p2.image, p2.fixed, d);
      }
      DuoCheck c;
      c.p1 = std::move(p1);
      c.p2 = std::move(p2);
      c.duo = true;
      return l1_criterion(c, d);
    };
  } else {
    const Matrix rep1 = canonical_stingray_representative(f, d, e1);
    const Matrix rep2 = canonical_stingray_representative(f, d, e2);
    const StingrayProfile prof1 = *stingray_profile(rep1);
    const StingrayProfile prof2 = *stingray_profile(rep2);
    trial = [&, d, verify, prof1, prof2](uint64_t, Rng& rng) {
      TransportedProfile a = transport(prof1, random_gl(f, d, rng));
      TransportedProfile b = transport(prof2, random_gl(f, d, rng));
      while (!trivial_intersection(a.image, b.image))
        b = transport(prof2, random_gl(f, d, rng));
      if (verify) {
        assert_decomposition(a.image, a.fixed, d);
        assert_decomposition(b.image, b.fixed, d);
      }
      DuoCheck c;
      StingrayProfile p1 = prof1, p2 = prof2;
      p1.image = std::move(a.image);
      p1.fixed = std::move(a.fixed);
      p2.image = std::move(b.image);
      p2.fixed = std::move(b.fixed);
      c.p1 = std::move(p1);
      c.p2 = std::move(p2);
      c.duo = true;
      return l1_criterion(c, d);
    };
  }
  r.hits = run_trials(trials, workers, seed, trial);
  finish_report(r, target);
  r.wall_seconds = seconds_since(t0);
  return r;
}

TrialReport estimate_duo_fraction(uint32_t e1, uint32_t e2, uint32_t q, uint64_t trials,
                                  uint64_t seed, uint32_t workers) {
  const auto t0 = std::chrono::steady_clock::now();
  const uint32_t d = e1 + e2;
  TrialReport r;
  r.experiment = "duo_fraction";
  r.params = {d, q, e1, e2, SampleMode::fixed_class_pair};
  r.trials = trials;
  r.seed = seed;
  r.workers = workers;
  if (!stingray_class_exists(e1, q) || !stingray_class_exists(e2, q)) {
    r.status = TrialReport::Status::skipped_empty_class;
    r.exact_target = BigRat(0);
    return r;
  }
  const Field f(q);
  const StingrayProfile prof1 = *stingray_profile(canonical_stingray_representative(f, d, e1));
  const StingrayProfile prof2 = *stingray_profile(canonical_stingray_representative(f, d, e2));
  r.hits = run_trials(trials, workers, seed, [&](uint64_t, Rng& rng) {
    Subspace u1 = Subspace::from_rows(prof1.image.basis() * random_gl(f, d, rng));
    Subspace u2 = Subspace::from_rows(prof2.image.basis() * random_gl(f, d, rng));
    return trivial_intersection(u1, u2);
  });
  finish_report(r, duo_fraction(e1, e2, q));
  r.wall_seconds = seconds_since(t0);
  return r;
}

TrialReport estimate_reducible_pair_fraction(uint32_t e1, uint32_t e2, uint32_t q, uint64_t trials,
                                             uint64_t seed, uint32_t workers) {
  const auto t0 = std::chrono::steady_clock::now();
  const uint32_t d = e1 + e2;
  TrialReport r;
  r.experiment = "reducible_pair_fraction";
  r.params = {d, q, e1, e2, SampleMode::fixed_class_pair};
  r.trials = trials;
  r.seed = seed;
  r.workers = workers;
  if (!stingray_class_exists(e1, q) || !stingray_class_exists(e2, q)) {
    r.status = TrialReport::Status::skipped_empty_class;
    r.exact_target = BigRat(0);
    return r;
  }
  const Field f(q);
  const StingrayProfile prof1 = *stingray_profile(canonical_stingray_representative(f, d, e1));
  const StingrayProfile prof2 = *stingray_profile(canonical_stingray_representative(f, d, e2));
  r.hits = run_trials(trials, workers, seed, [&](uint64_t, Rng& rng) {
    TransportedProfile a = transport(prof1, random_gl(f, d, rng));
    TransportedProfile b = transport(prof2, random_gl(f, d, rng));
    // irreducible <=> duo AND criterion; everything else is reducible
    if (!trivial_intersection(a.image, b.image)) return true;
    const bool irr = trivial_intersection(a.fixed, b.fixed) && !(a.image == b.fixed) &&
                     !(b.image == a.fixed);
    return !irr;
  });
  finish_report(r, reducible_pair_value(KneserParams(std::max(e1, e2), std::min(e1, e2), q)));
  r.wall_seconds = seconds_since(t0);
  return r;
}

TrialReport stingray_acceptance_rate(uint32_t d, uint32_t e, uint32_t q, uint64_t draws,
                                     uint64_t seed, uint32_t workers) {
  const auto t0 = std::chrono::steady_clock::now();
  TrialReport r;
  r.experiment = "stingray_acceptance_rate";
  r.params = {d, q, e, e, SampleMode::uniform_group};
  r.trials = draws;
  r.seed = seed;
  r.workers = workers;
  if (!stingray_class_exists(e, q)) {
    r.status = TrialReport::Status::skipped_empty_class;
    r.exact_target = BigRat(0);
    return r;
  }
  const Field f(q);
  r.hits = run_trials(draws, workers, seed, [&](uint64_t, Rng& rng) {
    Matrix g = random_gl(f, d, rng);
    if (g.is_identity()) return false;
    {
      Matrix h = g.minus_identity();
      if (rank(std::move(h)) != e) return false;
    }
    auto p = stingray_profile_unchecked(g);
    return p && p->e == e;
  });
  BigRat target(stingray_class_count(e, q) * class_size(d, e, q), gl_order(d, q));
  target.canonicalize();
  finish_report(r, target);
  r.wall_seconds = seconds_since(t0);
  return r;
}

TrialReport gl_acceptance_rate(uint32_t d, uint32_t q, uint64_t draws, uint64_t seed,
                               uint32_t workers) {
  const auto t0 = std::chrono::steady_clock::now();
  TrialReport r;
  r.experiment = "gl_acceptance_rate";
  r.params = {d, q, d, d, SampleMode::uniform_group};
  r.trials = draws;
  r.seed = seed;
  r.workers = workers;
  const Field f(q);
  r.hits = run_trials(draws, workers, seed, [&](uint64_t, Rng& rng) {
    Matrix m = random_matrix(f, d, d, rng);
    return rank(std::move(m)) == d;
  });
  finish_report(r, omega(d, q));
  r.wall_seconds = seconds_since(t0);
  return r;
}

TrialReport det_distribution(uint32_t d, uint32_t q, uint64_t draws, uint64_t seed,
                             uint32_t workers) {
  const auto t0 = std::chrono::steady_clock::now();
  TrialReport r;
  r.experiment = "det_distribution";
  r.params = {d, q, d, d, SampleMode::uniform_group};
  r.trials = draws;
  r.seed = seed;
  r.workers = workers;
  const Field f(q);
  r.hits = run_trials(draws, workers, seed, [&](uint64_t, Rng& rng) {
    return determinant(random_gl(f, d, rng)).index == 1;
  });
  BigRat target(1, int64_t(q) - 1);
  target.canonicalize();
  finish_report(r, target);
  r.wall_seconds = seconds_since(t0);
  return r;
}

ChiSquareReport frame_uniformity_chi2(uint32_t d, uint32_t e, uint32_t q, uint64_t draws,
                                      uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  ChiSquareReport r;
  r.experiment = "frame_uniformity_chi2";
  r.params = {d, q, e, e, SampleMode::fixed_class_pair};
  r.draws = draws;
  r.seed = seed;
  const Field f(q);
  const StingrayProfile prof = *stingray_profile(canonical_stingray_representative(f, d, e));
  std::map<std::pair<std::string, std::string>, uint64_t> counts;
  for (uint64_t t = 0; t < draws; ++t) {
    Rng rng(seed, t);
    TransportedProfile tp = transport(prof, random_gl(f, d, rng));
    std::string ku(reinterpret_cast<const char*>(tp.image.basis().data().data()),
                   tp.image.basis().data().size() * sizeof(uint16_t));
    std::string kf(reinterpret_cast<const char*>(tp.fixed.basis().data().data()),
                   tp.fixed.basis().data().size() * sizeof(uint16_t));
    ++counts[{std::move(ku), std::move(kf)}];
  }
  BigRat cells_rat(class_size(d, e, q), fibre_size(e, q));
  cells_rat.canonicalize();
  if (cells_rat.get_den() != 1) throw Error("frame count is not integral");
  const uint64_t cells = cells_rat.get_num().get_ui();
  if (counts.size() > cells) throw Error("observed more frames than exist");
  const double expect = double(draws) / double(cells);
  double stat = 0;
  uint64_t seen = 0;
  for (const auto& [frame, n] : counts) {
    const double diff = double(n) - expect;
    stat += diff * diff / expect;
    ++seen;
  }
  stat += double(cells - seen) * expect;  // unseen cells contribute (0-E)^2/E
  const double df = double(cells - 1);
  r.cells = static_cast<uint32_t>(cells);
  r.statistic = stat;
  r.z = (stat - df) / std::sqrt(2.0 * df);
  r.pass = std::abs(r.z) < 4.0;
  r.wall_seconds = seconds_since(t0);
  return r;
}

std::string to_json(const TrialReport& r) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "trial_report";
  j["experiment"] = r.experiment;
  j["params"] = {{"d", r.params.d},
                 {"q", r.params.q},
                 {"e1", r.params.e1},
                 {"e2", r.params.e2},
                 {"mode", r.params.mode == SampleMode::uniform_group ? "uniform-group"
                                                                     : "fixed-class-pair"}};
  j["status"] =
      r.status == TrialReport::Status::ok ? "ok" : "skipped (no such stingray elements)";
  j["trials"] = r.trials;
  j["hits"] = r.hits;
  j["estimate"] = r.estimate;
  j["stderr"] = r.stderr_est;
  j["exact_target"] = rational_string(r.exact_target);
  j["target_decimal"] = decimal12(r.exact_target);
  j["z"] = r.z;
  j["seed"] = r.seed;
  j["workers"] = r.workers;
  j["wall_seconds"] = r.wall_seconds;
  return j.dump(2);
}

std::string trial_csv_header() {
  return "experiment,d,q,e1,e2,mode,status,trials,hits,estimate,stderr,exact_target,"
         "target_decimal,z,seed,workers";
}

std::string to_csv_row(const TrialReport& r) {
  std::string mode =
      r.params.mode == SampleMode::uniform_group ? "uniform-group" : "fixed-class-pair";
  std::string status =
      r.status == TrialReport::Status::ok ? "ok" : "skipped (no such stingray elements)";
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g", r.estimate, r.stderr_est, r.z);
  std::string nums = buf;
  auto comma_join = [](std::initializer_list<std::string> parts) {
    std::string out;
    for (const auto& p : parts) {
      if (!out.empty()) out += ',';
      out += p;
    }
    return out;
  };
  const size_t comma1 = nums.find(',');
  const size_t comma2 = nums.rfind(',');
  return comma_join({r.experiment, std::to_string(r.params.d), std::to_string(r.params.q),
                     std::to_string(r.params.e1), std::to_string(r.params.e2), mode,
                     csv_escape(status), std::to_string(r.trials), std::to_string(r.hits),
                     nums.substr(0, comma1), nums.substr(comma1 + 1, comma2 - comma1 - 1),
                     rational_string(r.exact_target), decimal12(r.exact_target),
                     nums.substr(comma2 + 1), std::to_string(r.seed), std::to_string(r.workers)});
}

}  // namespace stingray
