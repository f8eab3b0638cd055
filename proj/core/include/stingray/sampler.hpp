#pragma once

#include <cstdint>
#include <string>

#include "stingray/element.hpp"
#include "stingray/exactq.hpp"
#include "stingray/rng.hpp"

namespace stingray {

enum class SampleMode { uniform_group, fixed_class_pair };

struct TrialParams {
  uint32_t d = 0, q = 0, e1 = 0, e2 = 0;
  SampleMode mode = SampleMode::uniform_group;
};

/// Record of one seeded Monte Carlo experiment.  Bit-reproducible for equal
/// (seed, params) at ANY worker count: trial t draws from Rng(seed, t).
struct TrialReport {
  std::string experiment;
  TrialParams params;
  uint64_t trials = 0, hits = 0;
  double estimate = 0;
  double stderr_est = 0;  // sqrt(p̂ (1-p̂) / trials)
  double z = 0;           // (hits - trials p) / sqrt(trials p (1-p)), p the exact target
  BigRat exact_target;
  uint64_t seed = 0;
  uint32_t workers = 1;
  enum class Status { ok, skipped_empty_class } status = Status::ok;
  double wall_seconds = 0;

  bool z_ok(double threshold = 4.0) const;
};

/// Uniform e-stingray element of GL_d(q) by rejection from random_gl draws.
/// Throws EmptyClass when no such element exists, RejectionBudgetExceeded
/// after `budget` group draws.  `draws_out`, when given, receives the number
/// of group elements drawn (for acceptance-rate experiments).
Matrix sample_stingray(const Field& f, uint32_t d, uint32_t e, Rng& rng,
                       uint64_t budget = 1'000'000, StingrayProfile* profile_out = nullptr,
                       uint64_t* draws_out = nullptr);

/// x^{-1} rep x for uniform x in GL_d(q); uniform over the class of rep.
Matrix sample_class_conjugate(const Matrix& rep, Rng& rng);

/// Proportion of stingray duos that are irreducible; exact target P(e1,e2).
/// mode uniform_group draws the duo from all stingray pairs of G x G; mode
/// fixed_class_pair from the canonical class pair.
TrialReport estimate_irreducible_proportion(uint32_t e1, uint32_t e2, uint32_t q, uint64_t trials,
                                            uint64_t seed, SampleMode mode, uint32_t workers = 1);

/// Fraction of a fixed class pair C1 x C2 that are duos; exact target 1/xi.
TrialReport estimate_duo_fraction(uint32_t e1, uint32_t e2, uint32_t q, uint64_t trials,
                                  uint64_t seed, uint32_t workers = 1);

/// Fraction of C1 x C2 generating a reducible subgroup (irreducible means:
/// duo AND the irreducibility criterion); exact target 1 - P/xi.
TrialReport estimate_reducible_pair_fraction(uint32_t e1, uint32_t e2, uint32_t q, uint64_t trials,
                                             uint64_t seed, uint32_t workers = 1);

/// Acceptance rate of sample_stingray's rejection loop over `draws` group
/// draws; exact target (#classes * class size) / |GL_d(q)| — a statistical
/// check of the class-size formula.
TrialReport stingray_acceptance_rate(uint32_t d, uint32_t e, uint32_t q, uint64_t draws,
                                     uint64_t seed, uint32_t workers = 1);

/// Acceptance rate of random_gl's rejection from uniform matrices; exact
/// target omega(d).
TrialReport gl_acceptance_rate(uint32_t d, uint32_t q, uint64_t draws, uint64_t seed,
                               uint32_t workers = 1);

/// P(det = 1) over uniform GL_d(q); exact target 1/(q-1) (SL cosets).
TrialReport det_distribution(uint32_t d, uint32_t q, uint64_t draws, uint64_t seed,
                             uint32_t workers = 1);

/// Chi-square uniformity of the (U, F) frame of random class conjugates over
/// all class_size/fibre_size frames; z is the normal approximation
/// (X^2 - df) / sqrt(2 df).
struct ChiSquareReport {
  std::string experiment;
  TrialParams params;
  uint64_t draws = 0;
  uint32_t cells = 0;
  double statistic = 0, z = 0;
  uint64_t seed = 0;
  bool pass = false;
  double wall_seconds = 0;
};

ChiSquareReport frame_uniformity_chi2(uint32_t d, uint32_t e, uint32_t q, uint64_t draws,
                                      uint64_t seed);

std::string to_json(const TrialReport& r);
std::string trial_csv_header();
std::string to_csv_row(const TrialReport& r);

}  // namespace stingray
