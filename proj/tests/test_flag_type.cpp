#include "doctest.h"

#include <cmath>
#include <fstream>
#include <functional>

#include "json.hpp"

#include "flagtype/errors.hpp"
#include "flagtype/flag_type.hpp"
#include "specs.hpp"
#include "test_util.hpp"

using namespace flagtype;
using namespace flagtype::testing;

namespace {

SamplingParams quick() {
  SamplingParams p;
  p.samples_per_length = 4;
  p.max_length = 256;
  p.gain_samples = 64;
  p.cross_check = false;
  return p;
}

RootDecayCurve synthetic(const std::function<double(int)>& f, double gain) {
  RootDecayCurve c;
  c.root_index = 1;
  c.lengths = length_ladder(8, 1024);
  for (int len : c.lengths) c.min_log_rho.push_back(f(len));
  c.letter_gain = gain;
  return c;
}

bool non_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1]) return false;
  return true;
}

Matrix to_matrix(const nlohmann::json& rows) {
  const int n = static_cast<int>(rows.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j].get<double>();
  return m;
}

// Exhaustive running minima over all words of length <= max_len in the
// given letters, accumulated through the cocycle identity.
std::vector<double> exhaustive_minima(const std::vector<GroupElement>& letters,
                                      const Flag& base, int root, int max_len) {
  const Functional alpha = RootDatum(base.dim()).simple_root(root);
  std::vector<double> best(max_len, std::numeric_limits<double>::infinity());
  std::function<void(const Flag&, double, int)> visit = [&](const Flag& x, double acc,
                                                             int depth) {
    if (depth == max_len) return;
    for (const GroupElement& g : letters) {
      const ActionStep step = act_with_cocycle(g.matrix(), x);
      const double total = acc + alpha(step.a);
      best[depth] = std::min(best[depth], total);
      visit(step.image, total, depth + 1);
    }
  };
  visit(base, 0.0, 0);
  for (int l = 1; l < max_len; ++l) best[l] = std::min(best[l], best[l - 1]);
  return best;
}

}  // namespace

TEST_CASE("classify") {
  const Thresholds t;
  CHECK(classify(synthetic([](int l) { return -2.0 * l; }, 1.0), t).decision ==
        Decision::Decaying);
  const RootClassification flat =
      classify(synthetic([](int) { return std::log(0.5); }, 1.0), t);
  CHECK(flat.decision == Decision::BoundedBelow);
  CHECK(flat.slope == doctest::Approx(0.0));
  CHECK(flat.final_min == doctest::Approx(std::log(0.5)));

  // slope -0.005 against slope_min 0.003: too steep for a plateau, too
  // shallow to reach the floor.
  const RootClassification shallow =
      classify(synthetic([](int l) { return -0.005 * l; }, 0.3), t);
  CHECK(shallow.slope == doctest::Approx(-0.005));
  CHECK(shallow.slope_min == doctest::Approx(0.003));
  CHECK(shallow.decision == Decision::Inconclusive);

  // Plateau below the floor.
  CHECK(classify(synthetic([](int) { return -20.0; }, 1.0), t).decision ==
        Decision::Inconclusive);

  RootDecayCurve short_curve = synthetic([](int) { return 0.0; }, 1.0);
  short_curve.lengths.resize(3);
  short_curve.min_log_rho.resize(3);
  CHECK_THROWS_AS(classify(short_curve, t), PreconditionError);
  CHECK(std::string(to_string(Decision::BoundedBelow)) == "BoundedBelow");
}

TEST_CASE("decay curve of a single expanding fixer") {
  // alpha(log diag(1/e, e)) = -2, and the standard flag is fixed.
  const SemigroupSpec s =
      SemigroupSpec::finitely_generated({diagonal({std::exp(-1.0), std::exp(1.0)})}, 0.0);
  const RootDecayCurve c = decay_curve(s, Flag::standard(2), 1, quick(), SeedStream(1));
  REQUIRE(c.lengths.size() == c.min_log_rho.size());
  for (std::size_t l = 0; l < c.lengths.size(); ++l) {
    CHECK(std::abs(c.min_log_rho[l] + 2.0 * c.lengths[l]) <= 1e-9);
  }
  CHECK(c.letter_gain == doctest::Approx(2.0));
  CHECK(classify(c).decision == Decision::Decaying);
}

TEST_CASE("rank one cone plateaus above the quarter bound") {
  const SemigroupSpec s = sl2_cone();
  const RootDecayCurve c = decay_curve(s, Flag::standard(2), 1, quick(), SeedStream(2));
  CHECK(non_increasing(c.min_log_rho));
  // rho_alpha = |g e_1|^2 >= 1/4 at [e_1].
  CHECK(c.min_log_rho.back() >= 2.0 * std::log(0.5) - 1e-12);
  CHECK(classify(c).decision == Decision::BoundedBelow);
}

TEST_CASE("octant cone: alpha_2 decays, alpha_1 does not") {
  const SemigroupSpec s = sl3_octant();
  const SamplingParams p = quick();
  const FlagTypeReport r = estimate_flag_type(s, p, {}, 3);
  CHECK(r.theta_hat == ThetaSet(3, {2}));
  REQUIRE(r.curves.size() == 2);
  for (const auto& c : r.curves) CHECK(non_increasing(c.min_log_rho));
  CHECK(r.decisions[1].slope <= -0.1);
  CHECK(r.decisions[0].final_min >= Thresholds{}.floor_min);
  CHECK(r.errors[0].empty());
  CHECK_FALSE(r.any_inconclusive());
}

TEST_CASE("decisions are stable across seeds") {
  const SamplingParams p = quick();
  for (const SemigroupSpec& s : {sl2_cone(), sl3_octant(), sl3_totally_positive()}) {
    std::vector<std::vector<Decision>> runs;
    for (std::uint64_t seed = 10; seed < 15; ++seed) {
      const FlagTypeReport r = estimate_flag_type(s, p, {}, seed);
      std::vector<Decision> d;
      for (const auto& c : r.decisions) d.push_back(c.decision);
      runs.push_back(d);
    }
    for (std::size_t i = 0; i < runs[0].size(); ++i) {
      bool decaying = false, bounded = false;
      for (const auto& d : runs) {
        decaying |= d[i] == Decision::Decaying;
        bounded |= d[i] == Decision::BoundedBelow;
      }
      CHECK_FALSE((decaying && bounded));
    }
  }
}

TEST_CASE("estimate is deterministic and independent of worker count") {
  SamplingParams p = quick();
  p.cross_check = true;
  const FlagTypeReport a = estimate_flag_type(sl3_octant(), p, {}, 42);
  p.workers = 3;
  const FlagTypeReport b = estimate_flag_type(sl3_octant(), p, {}, 42);
  REQUIRE(a.curves.size() == b.curves.size());
  for (std::size_t i = 0; i < a.curves.size(); ++i) {
    CHECK(a.curves[i].min_log_rho == b.curves[i].min_log_rho);
    CHECK(a.curves[i].letter_gain == b.curves[i].letter_gain);
  }
  CHECK(a.core_point.flag.frame() == b.core_point.flag.frame());
  REQUIRE(a.cross_check);
  CHECK(a.cross_check->agrees);
}

TEST_CASE("per-root failures are reported, not thrown") {
  SamplingParams p = quick();
  p.candidates = 0;
  const FlagTypeReport r = estimate_flag_type(sl2_cone(), p, {}, 1);
  REQUIRE(r.errors.size() == 1);
  CHECK_FALSE(r.errors[0].empty());
  CHECK(r.decisions[0].decision == Decision::Inconclusive);
  CHECK(r.any_inconclusive());
}

TEST_CASE("fixer bound at the core point") {
  // Words fixing x0 have rho_lambda >= 1 for lambda in the partial chamber.
  const SemigroupSpec s = sl3_octant();
  const CorePointEstimate core = estimate_core_point(s, {}, SeedStream(9));
  const Functional mu1 = RootDatum(3).fundamental_weight(1);
  for (int power = 1; power <= 5; ++power) {
    std::vector<GroupElement> word;
    for (int p = 0; p < power; ++p)
      word.insert(word.end(), core.witness.letters.begin(), core.witness.letters.end());
    const WordTrace t = word_cocycle(mu1, word, core.flag);
    REQUIRE(flag_distance(t.end, core.flag) <= 1e-6);
    CHECK(t.total() >= -1e-6);
  }
}

TEST_CASE("coset uniform check") {
  const SemigroupSpec s = sl2_cone();
  const Functional mu1 = RootDatum(2).fundamental_weight(1);
  const ThetaSet empty = ThetaSet::none(2);
  SamplingParams p = quick();

  // power 0 at x0 is the plain plateau.
  const CorePointEstimate core = estimate_core_point(s, p, SeedStream(5).child(0));
  const CosetUniformReport zero = coset_uniform_check(s, mu1, empty, 0, {core.flag}, p, 5);
  CHECK(zero.coset_min_log == zero.plain_min_log);

  // Grid approaching the boundary line [(1, -1)] of the control set.
  std::vector<Flag> grid;
  for (double d : {0.3, 0.1, 0.03, 0.01}) {
    Matrix b(2, 2);
    b << 1.0, 1.0 - d, -(1.0 - d), 1.0;
    grid.push_back(Flag::from_basis(b));
  }
  const CosetUniformReport r = coset_uniform_check(s, mu1, empty, 4, grid, p, 5);
  CHECK(r.coset_min_log > std::log(0.1));
  CHECK(r.plain_min_log < r.coset_min_log - 0.5);
  // The uniform bound survives more sampling.
  p.samples_per_length *= 2;
  const CosetUniformReport doubled = coset_uniform_check(s, mu1, empty, 4, grid, p, 5);
  CHECK(doubled.coset_min_log == doctest::Approx(r.coset_min_log).epsilon(0.05));

  CHECK_THROWS_AS(coset_uniform_check(sl3_octant(), RootDatum(3).fundamental_weight(1),
                                      ThetaSet(3, {1}), 1, {Flag::standard(3)}, p, 1),
                  PreconditionError);
}

TEST_CASE("library reproduces the independent small-length oracle") {
  std::ifstream in(data_path("small_length_oracle.json"));
  REQUIRE(in.good());
  const nlohmann::json doc = nlohmann::json::parse(in);
  const int max_len = doc["max_length"].get<int>();
  for (const auto& [name, c] : doc["cases"].items()) {
    CAPTURE(name);
    const Flag base = Flag::from_orthonormal(to_matrix(c["base_frame"]));
    std::vector<GroupElement> letters;
    for (const auto& m : c["letters"]) letters.push_back(GroupElement::from_matrix(to_matrix(m)));
    for (const auto& [root, expected] : c["min_log_rho_alpha"].items()) {
      const std::vector<double> got = exhaustive_minima(letters, base, std::stoi(root), max_len);
      for (int l = 0; l < max_len; ++l) CHECK(std::abs(got[l] - expected[l].get<double>()) <= 1e-9);
    }
  }
  // The oracle itself shows the dichotomy.
  const auto& oct = doc["cases"]["sl3_octant"]["min_log_rho_alpha"];
  CHECK(oct["2"][max_len - 1].get<double>() - oct["2"][max_len - 3].get<double>() <= -0.6);
  CHECK(oct["1"][max_len - 1].get<double>() - oct["1"][max_len - 3].get<double>() >= -0.01);
  const auto& tp = doc["cases"]["sl3_totally_positive"]["min_log_rho_alpha"];
  for (const char* root : {"1", "2"})
    CHECK(tp[root][max_len - 1].get<double>() == tp[root][0].get<double>());
}
