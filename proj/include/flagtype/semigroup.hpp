#pragma once

// Semigroup descriptions and reproducible sampling of their elements.
//
// Two kinds of semigroup are supported:
//  * FinitelyGenerated: generated by eps-balls g_i exp(eps Z), |Z|_F <= 1,
//    around finitely many generators. With eps > 0 the semigroup has
//    nonempty interior; eps = 0 is allowed for diagnostics.
//  * ConeCompression: S_W = {g : g W subset W} for a pointed polyhedral
//    cone W given by its extreme rays. Membership is decidable.
//
// Words act left to right: letters[0] is applied first, so the product is
// letters[L-1] * ... * letters[0].

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "flagtype/matgroup.hpp"
#include "flagtype/random.hpp"

namespace flagtype {

struct FinitelyGenerated {
  std::vector<GroupElement> generators;
  double epsilon = 1e-3;
};

struct ConeCompression {
  std::vector<Vector> rays;
  // Scale of the Gaussian proposal exp(step_scale * Z) for walk steps.
  double step_scale = 0.3;
};

class ConeGeometry;

class SemigroupSpec {
 public:
  static SemigroupSpec finitely_generated(std::vector<GroupElement> generators,
                                          double epsilon = 1e-3);
  // Validates that the rays span R^n and that the cone is pointed.
  static SemigroupSpec cone_compression(std::vector<Vector> rays,
                                        double step_scale = 0.3);

  int dim() const { return n_; }
  bool is_cone() const { return std::holds_alternative<ConeCompression>(kind_); }
  const std::variant<FinitelyGenerated, ConeCompression>& kind() const { return kind_; }
  // Throws PreconditionError when the spec is not a cone.
  const ConeGeometry& cone() const;

 private:
  SemigroupSpec() = default;
  int n_ = 0;
  std::variant<FinitelyGenerated, ConeCompression> kind_;
  std::shared_ptr<const ConeGeometry> geometry_;
};

// Precomputed data of a pointed cone with the given extreme rays.
class ConeGeometry {
 public:
  explicit ConeGeometry(const std::vector<Vector>& rays);

  int dim() const { return static_cast<int>(rays_.rows()); }
  bool simplicial() const { return simplicial_; }
  const Matrix& rays() const { return rays_; }
  // Unit vector along the normalized sum of rays (an interior direction).
  const Vector& interior_direction() const { return center_; }

  bool contains(const Vector& v, double tol = 1e-12) const;
  // g W subset W, checked on the extreme rays.
  bool maps_into(const Matrix& g, double tol = 1e-12) const;
  // min over rays r of the largest t with g r/|g r| - t * center in W.
  // Positive iff g maps W strictly inside itself.
  double interior_margin(const Matrix& g) const;

 private:
  Matrix rays_;  // one ray per column, unit length
  bool simplicial_ = false;
  Matrix ray_inverse_;
  Vector center_;
  Vector center_coords_;
};

// False/true for cones; throws MembershipUndecidable for generated specs.
bool membership(const SemigroupSpec& spec, const GroupElement& g);

struct SamplingParams {
  // Decay curves: lengths min_length, 2 min_length, ..., max_length.
  int samples_per_length = 16;
  int min_length = 8;
  int max_length = 1024;
  // Candidate letters per step of a guided word; 1 gives plain i.i.d. words.
  int candidates = 8;
  // Letters drawn at the base flag to measure the per-letter gain scale.
  int gain_samples = 256;
  // Proposals per letter before RejectionBudgetExhausted.
  int rejection_budget = 100000;
  // Core point search.
  int core_min_length = 8;
  int core_max_length = 1024;
  int core_max_words = 64;
  // Re-run the estimate at a second core point.
  bool cross_check = true;
  // Worker threads; 0 means hardware concurrency.
  int workers = 1;

  friend bool operator==(const SamplingParams&, const SamplingParams&) = default;
};

// Geometric ladder lo, 2 lo, ... (<= hi).
std::vector<int> length_ladder(int lo, int hi);

// Draws letters for one word, keeping every prefix product inside S for
// cone specs.
class WordBuilder {
 public:
  WordBuilder(const SemigroupSpec& spec, int rejection_budget);

  // A letter g such that g * (current prefix) stays in the semigroup.
  // generator is the generator index (-1 for cones).
  struct Letter {
    int generator = -1;
    GroupElement element;
  };
  Letter propose(Rng& rng) const;
  void push(const Letter& letter);

 private:
  const SemigroupSpec* spec_;
  int budget_;
  Matrix prefix_direction_;  // prefix product / its norm
};

struct SampledWord {
  std::vector<int> generators;  // -1 entries for cone letters
  std::vector<GroupElement> letters;
  GroupElement product;

  int length() const { return static_cast<int>(letters.size()); }
};

// Unguided word of the given length. Throws NumericFailure if the product
// overflows and RejectionBudgetExhausted if the cone is too tight.
SampledWord sample_word(const SemigroupSpec& spec, int length, SeedStream seed,
                        const SamplingParams& params = {});

struct CorePointEstimate {
  Flag flag;
  SampledWord witness;
  double contraction_rate = 0.0;
  // interior_margin of the witness for cone specs, NaN otherwise.
  double margin = 0.0;
};

// Attractor flag of the first regular (and, for cones, strictly interior)
// sampled word; lengths double from core_min_length to core_max_length.
CorePointEstimate estimate_core_point(const SemigroupSpec& spec,
                                      const SamplingParams& params,
                                      SeedStream seed);

// Images of x0 under count unguided words with lengths uniform in
// [1, max_length].
std::vector<Flag> ics_sample(const SemigroupSpec& spec, const Flag& x0,
                             int count, int max_length, SeedStream seed,
                             const SamplingParams& params = {});

}  // namespace flagtype
