#include "doctest.h"
#include "nlohmann/json.hpp"
#include "stingray/sampler.hpp"

using namespace stingray;

namespace {
BigRat frac(int64_t n, int64_t d) {
  BigRat r(n, d);
  r.canonicalize();
  return r;
}
}  // namespace

TEST_CASE("sample_stingray basics") {
  Field f2(2);
  Rng rng(1, 0);
  StingrayProfile prof;
  Matrix g = sample_stingray(f2, 3, 2, rng, 100000, &prof);
  CHECK(prof.e == 2);
  CHECK(prof.restriction_charpoly == Poly{{1, 1, 1}});
  Matrix copy = g;
  CHECK(rank(std::move(copy)) == 3);

  Rng rng2(1, 0);
  CHECK_THROWS_AS(sample_stingray(f2, 3, 1, rng2, 1000), EmptyClass);
  Rng rng3(2, 0);
  CHECK_THROWS_AS(sample_stingray(f2, 4, 2, rng3, 1), RejectionBudgetExceeded);
}

TEST_CASE("sample_class_conjugate stays in the class") {
  Field f3(3);
  Matrix rep = canonical_stingray_representative(f3, 3, 2);
  Rng rng(3, 0);
  for (int i = 0; i < 10; ++i) {
    Matrix g = sample_class_conjugate(rep, rng);
    auto p = stingray_profile(g);
    REQUIRE(p.has_value());
    CHECK(p->restriction_charpoly == canonical_stingray_charpoly(f3, 2));
  }
}

TEST_CASE("reports are bit-reproducible and worker-count invariant") {
  TrialReport a = estimate_irreducible_proportion(2, 2, 2, 4000, 99, SampleMode::uniform_group, 1);
  TrialReport b = estimate_irreducible_proportion(2, 2, 2, 4000, 99, SampleMode::uniform_group, 1);
  TrialReport c = estimate_irreducible_proportion(2, 2, 2, 4000, 99, SampleMode::uniform_group, 3);
  CHECK(a.hits == b.hits);
  CHECK(a.hits == c.hits);  // per-trial streams: any partition gives the same totals
  CHECK(a.estimate == c.estimate);
  TrialReport d = estimate_irreducible_proportion(2, 2, 2, 4000, 100, SampleMode::uniform_group, 1);
  CHECK(a.hits != d.hits);  // different seed, different stream
}

TEST_CASE("irreducible proportion concentrates near P") {
  for (SampleMode mode : {SampleMode::uniform_group, SampleMode::fixed_class_pair}) {
    TrialReport r = estimate_irreducible_proportion(2, 2, 2, 20000, 7, mode, 2);
    CHECK(r.exact_target == frac(93, 256));
    CHECK(std::abs(r.z) < 5);
  }
  TrialReport skip =
      estimate_irreducible_proportion(2, 1, 2, 100, 7, SampleMode::uniform_group, 1);
  CHECK(skip.status == TrialReport::Status::skipped_empty_class);
}

TEST_CASE("duo fraction targets 1/xi") {
  TrialReport r = estimate_duo_fraction(1, 1, 3, 20000, 11, 2);
  CHECK(r.exact_target == frac(3, 4));
  CHECK(std::abs(r.z) < 5);
  TrialReport r2 = estimate_duo_fraction(2, 2, 2, 20000, 12, 2);
  CHECK(r2.exact_target == frac(16, 35));
  CHECK(std::abs(r2.z) < 5);
}

TEST_CASE("reducible pair fraction targets 1 - P/xi") {
  TrialReport r = estimate_reducible_pair_fraction(2, 2, 2, 20000, 13, 2);
  CHECK(r.exact_target == frac(467, 560));
  CHECK(std::abs(r.z) < 5);
}

TEST_CASE("acceptance rates match the class-size formula") {
  TrialReport r = stingray_acceptance_rate(3, 2, 2, 20000, 17, 2);
  CHECK(r.exact_target == frac(1, 3));
  CHECK(std::abs(r.z) < 5);

  TrialReport gl = gl_acceptance_rate(4, 2, 20000, 19, 2);
  CHECK(gl.exact_target == frac(315, 1024));
  CHECK(std::abs(gl.z) < 5);

  TrialReport det = det_distribution(2, 3, 20000, 23, 2);
  CHECK(det.exact_target == frac(1, 2));
  CHECK(std::abs(det.z) < 5);
}

TEST_CASE("frame uniformity chi-square") {
  ChiSquareReport r = frame_uniformity_chi2(3, 1, 3, 20000, 29);
  CHECK(r.cells == 117);
  CHECK(r.pass);
  ChiSquareReport r2 = frame_uniformity_chi2(3, 2, 2, 20000, 31);
  CHECK(r2.cells == 28);
  CHECK(r2.pass);
}

TEST_CASE("trial report serialization round trip") {
  TrialReport r = estimate_duo_fraction(2, 2, 2, 5000, 37, 1);
  nlohmann::json j = nlohmann::json::parse(to_json(r));
  CHECK(j["schema"] == "stingray-kneser/1");
  CHECK(j["experiment"] == "duo_fraction");
  CHECK(j["trials"] == 5000);
  // Rationals travel as "num/den" strings and re-parse exactly.
  std::string target = j["exact_target"];
  const auto slash = target.find('/');
  BigRat parsed(BigInt(target.substr(0, slash)), BigInt(target.substr(slash + 1)));
  parsed.canonicalize();
  CHECK(parsed == r.exact_target);

  std::string row = to_csv_row(r);
  CHECK(std::count(row.begin(), row.end(), ',') >= 15);
  CHECK(row.find("16/35") != std::string::npos);
}
