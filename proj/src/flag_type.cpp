#include "flagtype/flag_type.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flagtype/errors.hpp"
#include "parallel.hpp"

namespace flagtype {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-ladder running minima of lambda-cocycles of guided words g (times a
// fixed prefix h) at base.
std::vector<double> guided_minima(const SemigroupSpec& spec, const Flag& base,
                                  const Functional& lambda,
                                  std::span<const GroupElement> prefix,
                                  const std::vector<int>& ladder,
                                  const SamplingParams& params, SeedStream seed) {
  const std::size_t samples = static_cast<std::size_t>(params.samples_per_length);
  std::vector<double> word_min(ladder.size() * samples, kInf);
  detail::parallel_for(word_min.size(), params.workers, [&](std::size_t task) {
    const std::size_t l = task / samples;
    const std::size_t s = task % samples;
    Rng rng = seed.child(l).child(s).rng();
    const GuidedWord word =
        guided_word(spec, base, lambda, ladder[l], params.candidates, rng,
                    params.rejection_budget, prefix);
    const auto& logs = word.trace.partial_logs;
    word_min[task] = *std::min_element(logs.begin() + static_cast<long>(prefix.size()), logs.end());
  });
  std::vector<double> out(ladder.size());
  double running = kInf;
  for (std::size_t l = 0; l < ladder.size(); ++l) {
    for (std::size_t s = 0; s < samples; ++s) running = std::min(running, word_min[l * samples + s]);
    out[l] = running;
  }
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<long>(mid));
  return 0.5 * (lower + upper);
}

ThetaSet theta_from(int n, const std::vector<Decision>& decisions) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (decisions[i] == Decision::Decaying) idx.push_back(static_cast<int>(i) + 1);
  }
  return ThetaSet(n, std::move(idx));
}

struct RootRun {
  std::vector<RootDecayCurve> curves;
  std::vector<RootClassification> decisions;
  std::vector<std::string> errors;
};

RootRun run_roots(const SemigroupSpec& spec, const Flag& x0,
                  const SamplingParams& params, const Thresholds& thresholds,
                  SeedStream seed) {
  const int roots = spec.dim() - 1;
  RootRun run;
  for (int i = 1; i <= roots; ++i) {
    try {
      RootDecayCurve curve = decay_curve(spec, x0, i, params, seed.child(i));
      run.decisions.push_back(classify(curve, thresholds));
      run.curves.push_back(std::move(curve));
      run.errors.emplace_back();
    } catch (const Error& e) {
      RootDecayCurve empty;
      empty.root_index = i;
      empty.samples_per_length = params.samples_per_length;
      run.curves.push_back(std::move(empty));
      run.decisions.push_back(RootClassification{});
      run.errors.emplace_back(e.what());
    }
  }
  return run;
}

}  // namespace

const char* to_string(Decision d) {
  switch (d) {
    case Decision::Decaying: return "Decaying";
    case Decision::BoundedBelow: return "BoundedBelow";
    case Decision::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

GuidedWord guided_word(const SemigroupSpec& spec, const Flag& base,
                       const Functional& lambda, int length, int candidates,
                       Rng& rng, int rejection_budget,
                       std::span<const GroupElement> prefix) {
  if (length < 1) throw PreconditionError("guided_word: length must be >= 1");
  if (candidates < 1) throw PreconditionError("guided_word: candidates must be >= 1");
  GuidedWord word{{}, WordTrace{{}, base, {}, base}};
  word.letters.reserve(prefix.size() + static_cast<std::size_t>(length));
  double total = 0.0;
  for (const GroupElement& h : prefix) {
    ActionStep step = act_with_cocycle(h.matrix(), word.trace.end);
    total += lambda(step.a);
    word.trace.partial_logs.push_back(total);
    word.trace.end = std::move(step.image);
    word.letters.push_back(h);
  }
  WordBuilder builder(spec, rejection_budget);
  for (int j = 0; j < length; ++j) {
    std::optional<WordBuilder::Letter> best;
    std::optional<ActionStep> best_step;
    double best_gain = kInf;
    for (int c = 0; c < candidates; ++c) {
      WordBuilder::Letter letter = builder.propose(rng);
      ActionStep step = act_with_cocycle(letter.element.matrix(), word.trace.end);
      const double gain = lambda(step.a);
      if (gain < best_gain) {
        best_gain = gain;
        best = std::move(letter);
        best_step = std::move(step);
      }
    }
    builder.push(*best);
    total += best_gain;
    word.trace.partial_logs.push_back(total);
    word.trace.end = std::move(best_step->image);
    word.letters.push_back(std::move(best->element));
  }
  word.trace.letters = word.letters;
  return word;
}

double letter_gain(const SemigroupSpec& spec, const Flag& x0, int root_index,
                   const SamplingParams& params, SeedStream seed) {
  Rng rng = seed.rng();
  std::vector<double> gains;
  gains.reserve(static_cast<std::size_t>(params.gain_samples));
  for (int k = 0; k < params.gain_samples; ++k) {
    WordBuilder builder(spec, params.rejection_budget);
    const WordBuilder::Letter letter = builder.propose(rng);
    gains.push_back(std::abs(rho_alpha_log(root_index, letter.element, x0)));
  }
  return median(std::move(gains));
}

RootDecayCurve decay_curve(const SemigroupSpec& spec, const Flag& x0,
                           int root_index, const SamplingParams& params,
                           SeedStream seed) {
  if (x0.dim() != spec.dim()) throw DimensionMismatch("decay_curve: flag size");
  const RootDatum roots(spec.dim());
  const Functional alpha = roots.simple_root(root_index);
  RootDecayCurve curve;
  curve.root_index = root_index;
  curve.lengths = length_ladder(params.min_length, params.max_length);
  curve.samples_per_length = params.samples_per_length;
  curve.letter_gain = letter_gain(spec, x0, root_index, params, seed.child(0));
  curve.min_log_rho =
      guided_minima(spec, x0, alpha, {}, curve.lengths, params, seed.child(1));
  return curve;
}

RootClassification classify(const RootDecayCurve& curve,
                            const Thresholds& thresholds) {
  const std::size_t m = curve.min_log_rho.size();
  if (m < 4 || curve.lengths.size() != m) {
    throw PreconditionError("classify: need at least 4 ladder points");
  }
  const std::size_t first = m / 2;
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t l = first; l < m; ++l) {
    mean_x += curve.lengths[l];
    mean_y += curve.min_log_rho[l];
  }
  const double count = static_cast<double>(m - first);
  mean_x /= count;
  mean_y /= count;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t l = first; l < m; ++l) {
    const double dx = curve.lengths[l] - mean_x;
    sxy += dx * (curve.min_log_rho[l] - mean_y);
    sxx += dx * dx;
  }
  RootClassification out;
  out.slope = sxx > 0 ? sxy / sxx : 0.0;
  out.final_min = curve.min_log_rho.back();
  out.slope_min = thresholds.slope_fraction * curve.letter_gain;
  if (out.slope <= -out.slope_min && out.final_min <= thresholds.floor_max) {
    out.decision = Decision::Decaying;
  } else if (std::abs(out.slope) < out.slope_min &&
             out.final_min >= thresholds.floor_min) {
    out.decision = Decision::BoundedBelow;
  } else {
    out.decision = Decision::Inconclusive;
  }
  return out;
}

bool FlagTypeReport::any_inconclusive() const {
  return std::any_of(decisions.begin(), decisions.end(), [](const auto& d) {
    return d.decision == Decision::Inconclusive;
  });
}

FlagTypeReport estimate_flag_type(const SemigroupSpec& spec,
                                  const SamplingParams& params,
                                  const Thresholds& thresholds,
                                  std::uint64_t seed) {
  const SeedStream root(seed);
  CorePointEstimate core = estimate_core_point(spec, params, root.child(0));
  RootRun run = run_roots(spec, core.flag, params, thresholds, root.child(1));

  std::vector<Decision> decisions;
  for (const auto& d : run.decisions) decisions.push_back(d.decision);
  FlagTypeReport report{theta_from(spec.dim(), decisions),
                        std::move(run.curves),
                        std::move(run.decisions),
                        std::move(run.errors),
                        std::move(core),
                        std::nullopt,
                        params,
                        thresholds,
                        seed};

  if (params.cross_check) {
    const CorePointEstimate second = estimate_core_point(spec, params, root.child(2));
    const RootRun again = run_roots(spec, second.flag, params, thresholds, root.child(3));
    CrossCheck check;
    for (const auto& d : again.decisions) check.decisions.push_back(d.decision);
    check.theta_hat = theta_from(spec.dim(), check.decisions);
    check.agrees = check.theta_hat == report.theta_hat;
    report.cross_check = std::move(check);
  }
  return report;
}

CosetUniformReport coset_uniform_check(const SemigroupSpec& spec,
                                       const Functional& lambda,
                                       const ThetaSet& theta, int power,
                                       const std::vector<Flag>& grid,
                                       const SamplingParams& params,
                                       std::uint64_t seed) {
  if (power < 0) throw PreconditionError("coset check: power must be >= 0");
  if (grid.empty()) throw PreconditionError("coset check: empty grid");
  if (!in_partial_chamber(lambda, theta)) {
    throw PreconditionError("coset check: lambda is not in the partial chamber of theta");
  }
  const SeedStream root(seed);
  const CorePointEstimate core = estimate_core_point(spec, params, root.child(0));
  std::vector<GroupElement> h;
  for (int p = 0; p < power; ++p) {
    h.insert(h.end(), core.witness.letters.begin(), core.witness.letters.end());
  }
  const std::vector<int> ladder = length_ladder(params.min_length, params.max_length);

  CosetUniformReport out;
  out.power = power;
  out.coset_min_log = kInf;
  out.plain_min_log = kInf;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const SeedStream point_seed = root.child(1).child(j);
    const double with_h =
        guided_minima(spec, grid[j], lambda, h, ladder, params, point_seed).back();
    const double without_h =
        guided_minima(spec, grid[j], lambda, {}, ladder, params, point_seed).back();
    out.coset_min_per_point.push_back(with_h);
    out.plain_min_per_point.push_back(without_h);
    out.coset_min_log = std::min(out.coset_min_log, with_h);
    out.plain_min_log = std::min(out.plain_min_log, without_h);
  }
  return out;
}

}  // namespace flagtype
