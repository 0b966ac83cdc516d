#include "flagtype/semigroup.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "flagtype/errors.hpp"
#include "linprog.hpp"

namespace flagtype {

namespace {

GroupElement expm_traceless(const Matrix& z) {
  return GroupElement::from_matrix(z.exp());
}

}  // namespace

ConeGeometry::ConeGeometry(const std::vector<Vector>& rays) {
  if (rays.empty()) throw InvalidSpec("cone needs at least one ray");
  const int n = static_cast<int>(rays.front().size());
  const int m = static_cast<int>(rays.size());
  rays_.resize(n, m);
  for (int j = 0; j < m; ++j) {
    if (rays[j].size() != n) throw InvalidSpec("cone rays differ in dimension");
    const double norm = rays[j].norm();
    if (!std::isfinite(norm) || norm == 0.0) throw InvalidSpec("cone ray is zero or non-finite");
    rays_.col(j) = rays[j] / norm;
  }
  Eigen::FullPivLU<Matrix> lu(rays_);
  lu.setThreshold(1e-10);
  if (lu.rank() < n) throw InvalidSpec("cone rays do not span R^n");

  // Pointed iff no convex combination of the rays vanishes.
  Matrix a(n + 1, m);
  a.topRows(n) = rays_;
  a.row(n).setOnes();
  Vector b = Vector::Zero(n + 1);
  b[n] = 1.0;
  if (detail::feasible_nonnegative(a, b)) throw InvalidSpec("cone is not pointed");

  simplicial_ = (m == n);
  if (simplicial_) ray_inverse_ = rays_.inverse();
  center_ = rays_.rowwise().sum();
  center_.normalize();
  if (simplicial_) center_coords_ = ray_inverse_ * center_;
}

bool ConeGeometry::contains(const Vector& v, double tol) const {
  const double norm = v.norm();
  if (norm == 0.0) return true;
  const Vector u = v / norm;
  if (simplicial_) return (ray_inverse_ * u).minCoeff() >= -tol;
  return detail::feasible_nonnegative(rays_, u, std::max(tol, 1e-12)).has_value();
}

bool ConeGeometry::maps_into(const Matrix& g, double tol) const {
  for (int j = 0; j < rays_.cols(); ++j) {
    if (!contains(g * rays_.col(j), tol)) return false;
  }
  return true;
}

double ConeGeometry::interior_margin(const Matrix& g) const {
  double margin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < rays_.cols(); ++j) {
    Vector image = g * rays_.col(j);
    image.normalize();
    double t = 0.0;
    if (simplicial_) {
      const Vector coords = ray_inverse_ * image;
      t = (coords.array() / center_coords_.array()).minCoeff();
    } else {
      if (!contains(image)) {
        t = -1.0;
      } else {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 40; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (contains(image - mid * center_, 0.0)) lo = mid; else hi = mid;
        }
        t = lo;
      }
    }
    margin = std::min(margin, t);
  }
  return margin;
}

SemigroupSpec SemigroupSpec::finitely_generated(std::vector<GroupElement> generators,
                                                double epsilon) {
  if (generators.empty()) throw InvalidSpec("at least one generator required");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InvalidSpec("epsilon must be >= 0");
  const int n = generators.front().dim();
  for (const auto& g : generators) {
    if (g.dim() != n) throw InvalidSpec("generators differ in size");
  }
  SemigroupSpec spec;
  spec.n_ = n;
  spec.kind_ = FinitelyGenerated{std::move(generators), epsilon};
  return spec;
}

SemigroupSpec SemigroupSpec::cone_compression(std::vector<Vector> rays,
                                              double step_scale) {
  if (!(step_scale > 0.0) || !std::isfinite(step_scale)) {
    throw InvalidSpec("step_scale must be positive");
  }
  SemigroupSpec spec;
  spec.geometry_ = std::make_shared<const ConeGeometry>(rays);
  spec.n_ = spec.geometry_->dim();
  if (spec.n_ < 2) throw InvalidSpec("cone must live in R^n with n >= 2");
  spec.kind_ = ConeCompression{std::move(rays), step_scale};
  return spec;
}

const ConeGeometry& SemigroupSpec::cone() const {
  if (!geometry_) throw PreconditionError("semigroup spec is not a cone compression");
  return *geometry_;
}

bool membership(const SemigroupSpec& spec, const GroupElement& g) {
  if (!spec.is_cone()) {
    throw MembershipUndecidable("membership is not decidable for finitely generated specs");
  }
  if (g.dim() != spec.dim()) throw DimensionMismatch("membership: element size");
  return spec.cone().maps_into(g.matrix());
}

std::vector<int> length_ladder(int lo, int hi) {
  if (lo < 1 || hi < lo) throw PreconditionError("invalid length ladder bounds");
  std::vector<int> out;
  for (long long l = lo; l <= hi; l *= 2) out.push_back(static_cast<int>(l));
  return out;
}

WordBuilder::WordBuilder(const SemigroupSpec& spec, int rejection_budget)
    : spec_(&spec),
      budget_(rejection_budget),
      prefix_direction_(Matrix::Identity(spec.dim(), spec.dim())) {}

WordBuilder::Letter WordBuilder::propose(Rng& rng) const {
  const int n = spec_->dim();
  if (const auto* gen = std::get_if<FinitelyGenerated>(&spec_->kind())) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(gen->generators.size()) - 1);
    const int i = pick(rng);
    const GroupElement& base = gen->generators[i];
    if (gen->epsilon == 0.0) return Letter{i, base};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Matrix z = random_traceless_direction(n, rng);
    const double radius = gen->epsilon * unit(rng);
    return Letter{i, base * expm_traceless(radius * z)};
  }
  const auto& cone = std::get<ConeCompression>(spec_->kind());
  const ConeGeometry& geometry = spec_->cone();
  for (int attempt = 0; attempt < budget_; ++attempt) {
    Matrix z = gaussian_matrix(n, n, rng);
    z.diagonal().array() -= z.trace() / n;
    GroupElement step = expm_traceless(cone.step_scale * z);
    if (geometry.maps_into(step.matrix() * prefix_direction_)) {
      return Letter{-1, std::move(step)};
    }
  }
  throw RejectionBudgetExhausted("no feasible cone step within " +
                                 std::to_string(budget_) + " proposals");
}

void WordBuilder::push(const Letter& letter) {
  if (!spec_->is_cone()) return;
  prefix_direction_ = letter.element.matrix() * prefix_direction_;
  const double norm = prefix_direction_.norm();
  if (!std::isfinite(norm) || norm == 0.0) throw NumericFailure("prefix product degenerated");
  prefix_direction_ /= norm;
}

SampledWord sample_word(const SemigroupSpec& spec, int length, SeedStream seed,
                        const SamplingParams& params) {
  if (length < 1) throw PreconditionError("sample_word: length must be >= 1");
  Rng rng = seed.rng();
  WordBuilder builder(spec, params.rejection_budget);
  SampledWord word{{}, {}, GroupElement::identity(spec.dim())};
  word.generators.reserve(length);
  word.letters.reserve(length);
  for (int j = 0; j < length; ++j) {
    WordBuilder::Letter letter = builder.propose(rng);
    builder.push(letter);
    word.product = letter.element * word.product;
    word.generators.push_back(letter.generator);
    word.letters.push_back(std::move(letter.element));
  }
  if (!word.product.matrix().allFinite()) {
    throw NumericFailure("word product overflowed at length " + std::to_string(length));
  }
  return word;
}

CorePointEstimate estimate_core_point(const SemigroupSpec& spec,
                                      const SamplingParams& params,
                                      SeedStream seed) {
  const std::vector<int> ladder =
      length_ladder(params.core_min_length, params.core_max_length);
  const int per_length =
      std::max(1, (params.core_max_words + static_cast<int>(ladder.size()) - 1) /
                      static_cast<int>(ladder.size()));
  int tried = 0;
  for (std::size_t l = 0; l < ladder.size(); ++l) {
    for (int w = 0; w < per_length && tried < params.core_max_words; ++w, ++tried) {
      const SeedStream word_seed = seed.child(l).child(w);
      try {
        SampledWord word = sample_word(spec, ladder[l], word_seed, params);
        Rng restart_rng = word_seed.child(0xA77).rng();
        Attractor att = find_attractor(word.product, restart_rng);
        double margin = std::numeric_limits<double>::quiet_NaN();
        if (spec.is_cone()) {
          margin = spec.cone().interior_margin(word.product.matrix());
          if (!(margin > 1e-9)) continue;
        }
        return CorePointEstimate{std::move(att.flag), std::move(word),
                                 att.contraction_rate, margin};
      } catch (const NotRegular&) {
      } catch (const NumericFailure&) {
      } catch (const DecompositionError&) {
      }
    }
  }
  throw NoRegularWordFound("no regular interior word among " +
                           std::to_string(tried) + " candidates");
}

std::vector<Flag> ics_sample(const SemigroupSpec& spec, const Flag& x0,
                             int count, int max_length, SeedStream seed,
                             const SamplingParams& params) {
  if (max_length < 1) throw PreconditionError("ics_sample: max_length must be >= 1");
  std::vector<Flag> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    Rng rng = seed.child(k).rng();
    std::uniform_int_distribution<int> pick_length(1, max_length);
    const int length = pick_length(rng);
    WordBuilder builder(spec, params.rejection_budget);
    Flag x = x0;
    for (int j = 0; j < length; ++j) {
      WordBuilder::Letter letter = builder.propose(rng);
      builder.push(letter);
      x = act(letter.element, x);
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace flagtype
