#pragma once

// Empirical flag type of a semigroup from lower bounds of root cocycles.
//
// At a core point x0 of the invariant control set, log rho_alpha(g, x0) is
// bounded below over g in S exactly for the simple roots outside the flag
// type, and has infimum -infinity for the roots inside it. For each simple
// root we search for small values with guided words (each step keeps the
// candidate letter with the smallest cocycle increment), record the running
// minimum against word length on a geometric ladder and classify the curve
// as Decaying, BoundedBelow or Inconclusive. Sampling only ever produces
// upper bounds of the infimum, hence the abstaining third state.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flagtype/cocycle.hpp"
#include "flagtype/semigroup.hpp"

namespace flagtype {

struct RootDecayCurve {
  int root_index = 0;
  std::vector<int> lengths;
  // Running minimum of log rho_alpha over all sampled words (and their
  // prefixes) of length <= lengths[l]; non-increasing.
  std::vector<double> min_log_rho;
  int samples_per_length = 0;
  // Median |log rho_alpha(g, x0)| over single letters g.
  double letter_gain = 0.0;
};

struct Thresholds {
  // slope_min = slope_fraction * letter_gain.
  double slope_fraction = 0.01;
  // BoundedBelow needs final min >= floor_min; Decaying needs <= floor_max.
  double floor_min = -8.0;
  double floor_max = -8.0;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

enum class Decision { Decaying, BoundedBelow, Inconclusive };

const char* to_string(Decision d);

struct RootClassification {
  Decision decision = Decision::Inconclusive;
  // Least-squares slope of min_log_rho against length over the top half of
  // the ladder (nats per letter).
  double slope = 0.0;
  double final_min = 0.0;
  double slope_min = 0.0;
};

struct GuidedWord {
  std::vector<GroupElement> letters;
  WordTrace trace;
};

// Builds a word of the given length starting at base: at each step
// `candidates` feasible letters are drawn and the one with the smallest
// lambda-increment at the current flag is kept. prefix letters, if any,
// are applied first without choice (and are not part of trace's minimum
// search, though they are part of the trace).
GuidedWord guided_word(const SemigroupSpec& spec, const Flag& base,
                       const Functional& lambda, int length, int candidates,
                       Rng& rng, int rejection_budget,
                       std::span<const GroupElement> prefix = {});

// Median |log rho_alpha_i(g, x0)| over params.gain_samples letters.
double letter_gain(const SemigroupSpec& spec, const Flag& x0, int root_index,
                   const SamplingParams& params, SeedStream seed);

RootDecayCurve decay_curve(const SemigroupSpec& spec, const Flag& x0,
                           int root_index, const SamplingParams& params,
                           SeedStream seed);

// Needs at least 4 ladder points (PreconditionError otherwise).
RootClassification classify(const RootDecayCurve& curve,
                            const Thresholds& thresholds = {});

struct CrossCheck {
  ThetaSet theta_hat;
  std::vector<Decision> decisions;
  bool agrees = false;
};

struct FlagTypeReport {
  ThetaSet theta_hat;
  std::vector<RootDecayCurve> curves;
  std::vector<RootClassification> decisions;
  // Per-root failure messages (empty when the root ran to completion).
  std::vector<std::string> errors;
  CorePointEstimate core_point;
  std::optional<CrossCheck> cross_check;
  SamplingParams params;
  Thresholds thresholds;
  std::uint64_t seed = 0;

  bool any_inconclusive() const;
};

// Seeds: core point from seed.child(0), root i from seed.child(1).child(i);
// the cross-check uses seed.child(2) and seed.child(3) the same way.
FlagTypeReport estimate_flag_type(const SemigroupSpec& spec,
                                  const SamplingParams& params,
                                  const Thresholds& thresholds,
                                  std::uint64_t seed);

struct CosetUniformReport {
  int power = 0;
  // min over sampled g in S, grid y of log rho_lambda(g h, y), h = witness^power.
  double coset_min_log = 0.0;
  // Same without h: min over g of log rho_lambda(g, y).
  double plain_min_log = 0.0;
  std::vector<double> coset_min_per_point;
  std::vector<double> plain_min_per_point;
};

// lambda must lie in the partial chamber of theta (PreconditionError
// otherwise). The witness comes from estimate_core_point(spec, params,
// seed.child(0)); grid point j uses seed.child(1).child(j) for both runs.
CosetUniformReport coset_uniform_check(const SemigroupSpec& spec,
                                       const Functional& lambda,
                                       const ThetaSet& theta, int power,
                                       const std::vector<Flag>& grid,
                                       const SamplingParams& params,
                                       std::uint64_t seed);

}  // namespace flagtype
