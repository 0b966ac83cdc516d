#include "doctest.h"

#include <cmath>

#include "flagtype/errors.hpp"
#include "flagtype/semigroup.hpp"
#include "specs.hpp"
#include "test_util.hpp"

using namespace flagtype;
using namespace flagtype::testing;

namespace {

bool line_in_cone(const ConeGeometry& cone, const Vector& v) {
  return cone.contains(v, 1e-9) || cone.contains(-v, 1e-9);
}

}  // namespace

TEST_CASE("cone membership") {
  const SemigroupSpec s = sl2_cone();
  CHECK(membership(s, GroupElement::identity(2)));
  CHECK(membership(s, diagonal({2.0, 0.5})));
  CHECK(membership(s, hyperbolic(1.0)));
  CHECK_FALSE(membership(s, GroupElement::from_matrix(rotation2(std::numbers::pi / 4))));
  CHECK_FALSE(membership(s, diagonal({-1.0, -1.0})));

  const SemigroupSpec o = sl3_octant();
  CHECK(o.cone().simplicial());
  CHECK(membership(o, GroupElement::from_matrix(pascal3())));
  Matrix m = pascal3();
  m(0, 2) = -0.5;
  m /= std::cbrt(m.determinant());
  CHECK_FALSE(membership(o, GroupElement::from_matrix(m)));
  CHECK_THROWS_AS(membership(o, GroupElement::identity(2)), DimensionMismatch);

  CHECK_THROWS_AS(membership(sl3_totally_positive(), GroupElement::identity(3)),
                  MembershipUndecidable);
}

TEST_CASE("non-simplicial cone") {
  // Square-based pyramid in R^3: four rays, decided through the LP.
  std::vector<Vector> rays;
  for (auto [x, y] : {std::pair{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}}) {
    Vector r(3);
    r << x, y, 2.0;
    rays.push_back(r);
  }
  const SemigroupSpec s = SemigroupSpec::cone_compression(rays);
  CHECK_FALSE(s.cone().simplicial());
  Vector inside(3), outside(3);
  inside << 0.5, -0.5, 2.0;
  outside << 1.5, 0.0, 2.0;
  CHECK(s.cone().contains(inside));
  CHECK_FALSE(s.cone().contains(outside));
  CHECK(membership(s, diagonal({0.5, 0.5, 4.0})));
  CHECK_FALSE(membership(s, diagonal({2.0, 2.0, 0.25})));
  CHECK(s.cone().interior_margin(diagonal({0.5, 0.5, 4.0}).matrix()) > 0.0);
  CHECK(s.cone().interior_margin(Matrix::Identity(3, 3)) <= 1e-9);
}

TEST_CASE("invalid specs") {
  CHECK_THROWS_AS(SemigroupSpec::cone_compression({Vector::Unit(3, 0), Vector::Unit(3, 1)}),
                  InvalidSpec);
  CHECK_THROWS_AS(SemigroupSpec::cone_compression(
                      {Vector::Unit(2, 0), -Vector::Unit(2, 0), Vector::Unit(2, 1)}),
                  InvalidSpec);
  CHECK_THROWS_AS(SemigroupSpec::cone_compression({Vector::Unit(2, 0), Vector::Zero(2)}),
                  InvalidSpec);
  CHECK_THROWS_AS(SemigroupSpec::cone_compression({Vector::Unit(2, 0), Vector::Unit(2, 1)}, 0.0),
                  InvalidSpec);
  CHECK_THROWS_AS(SemigroupSpec::finitely_generated({}), InvalidSpec);
  CHECK_THROWS_AS(
      SemigroupSpec::finitely_generated({GroupElement::identity(2), GroupElement::identity(3)}),
      InvalidSpec);
  CHECK_THROWS_AS(SemigroupSpec::finitely_generated({GroupElement::identity(2)}, -1.0),
                  InvalidSpec);
  CHECK_THROWS_AS(sl3_totally_positive().cone(), PreconditionError);
}

TEST_CASE("length ladder") {
  CHECK(length_ladder(8, 1024) == std::vector<int>{8, 16, 32, 64, 128, 256, 512, 1024});
  CHECK(length_ladder(3, 20) == std::vector<int>{3, 6, 12});
  CHECK_THROWS_AS(length_ladder(0, 4), PreconditionError);
}

TEST_CASE("sampled words are reproducible") {
  for (const SemigroupSpec& s : {sl2_cone(), sl3_octant(), sl3_totally_positive()}) {
    const SampledWord a = sample_word(s, 20, SeedStream(7));
    const SampledWord b = sample_word(s, 20, SeedStream(7));
    const SampledWord c = sample_word(s, 20, SeedStream(8));
    CHECK(a.length() == 20);
    CHECK(a.product.matrix() == b.product.matrix());
    CHECK(a.generators == b.generators);
    CHECK(a.product.matrix() != c.product.matrix());
  }
}

TEST_CASE("cone words keep every prefix inside the semigroup") {
  for (const SemigroupSpec& s : {sl2_cone(), sl3_octant()}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SampledWord w = sample_word(s, 30, SeedStream(seed));
      Matrix prefix = Matrix::Identity(s.dim(), s.dim());
      for (const GroupElement& letter : w.letters) {
        prefix = letter.matrix() * prefix;
        CHECK(s.cone().maps_into(prefix / prefix.norm(), 1e-9));
      }
      CHECK(membership(s, w.product));
    }
  }
}

TEST_CASE("semigroup closure") {
  const SemigroupSpec s = sl3_octant();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SampledWord a = sample_word(s, 5, SeedStream(seed).child(0));
    const SampledWord b = sample_word(s, 7, SeedStream(seed).child(1));
    CHECK(membership(s, a.product * b.product));
  }
}

TEST_CASE("generated letters stay near their generators") {
  const double eps = 1e-3;
  const SemigroupSpec s = sl3_totally_positive(eps);
  const auto& gens = std::get<FinitelyGenerated>(s.kind()).generators;
  const SampledWord w = sample_word(s, 200, SeedStream(3));
  for (int j = 0; j < w.length(); ++j) {
    REQUIRE(w.generators[j] >= 0);
    const Matrix delta = gens[w.generators[j]].inverse().matrix() * w.letters[j].matrix() -
                         Matrix::Identity(3, 3);
    CHECK(delta.norm() <= eps * 1.01);
  }
  const SemigroupSpec exact = sl3_totally_positive(0.0);
  const SampledWord e = sample_word(exact, 10, SeedStream(3));
  for (int j = 0; j < e.length(); ++j) {
    CHECK(e.letters[j].matrix() == gens[e.generators[j]].matrix());
  }
}

TEST_CASE("core point") {
  SUBCASE("octant") {
    const SemigroupSpec s = sl3_octant();
    const CorePointEstimate core = estimate_core_point(s, {}, SeedStream(11));
    CHECK(core.margin > 0.0);
    CHECK(membership(s, core.witness.product));
    CHECK(core.contraction_rate < 0.0);
    CHECK(line_in_cone(s.cone(), core.flag.frame().col(0)));
    CHECK(flag_distance(act(core.witness.product, core.flag), core.flag) <= 1e-6);
  }
  SUBCASE("rank one cone") {
    const SemigroupSpec s = sl2_cone();
    const CorePointEstimate core = estimate_core_point(s, {}, SeedStream(12));
    const Vector v = core.flag.frame().col(0);
    CHECK(std::abs(v[0]) > std::abs(v[1]));
  }
  SUBCASE("totally positive") {
    const SemigroupSpec s = sl3_totally_positive();
    const CorePointEstimate core = estimate_core_point(s, {}, SeedStream(13));
    CHECK(std::isnan(core.margin));
    // Totally positive elements have a positive top eigenvector.
    CHECK(line_in_cone(sl3_octant().cone(), core.flag.frame().col(0)));
  }
  SUBCASE("reproducible") {
    const CorePointEstimate a = estimate_core_point(sl3_octant(), {}, SeedStream(5));
    const CorePointEstimate b = estimate_core_point(sl3_octant(), {}, SeedStream(5));
    CHECK(a.flag.frame() == b.flag.frame());
  }
  SUBCASE("no regular word") {
    const SemigroupSpec s = SemigroupSpec::finitely_generated(
        {GroupElement::from_matrix(rotation2(0.3))}, 0.0);
    SamplingParams p;
    p.core_max_length = 64;
    p.core_max_words = 8;
    CHECK_THROWS_AS(estimate_core_point(s, p, SeedStream(1)), NoRegularWordFound);
  }
}

TEST_CASE("sampled control set images stay in the cone") {
  const SemigroupSpec s = sl3_octant();
  const CorePointEstimate core = estimate_core_point(s, {}, SeedStream(21));
  const std::vector<Flag> images = ics_sample(s, core.flag, 100, 40, SeedStream(22));
  CHECK(images.size() == 100);
  for (const Flag& y : images) CHECK(line_in_cone(s.cone(), y.frame().col(0)));
}
