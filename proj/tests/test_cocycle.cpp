#include "doctest.h"

#include <cmath>
#include <numbers>

#include "flagtype/cocycle.hpp"
#include "flagtype/errors.hpp"
#include "test_util.hpp"

using namespace flagtype;
using namespace flagtype::testing;

namespace {

Functional random_functional(int n, Rng& rng) {
  std::normal_distribution<double> normal;
  Vector c(n);
  for (int i = 0; i < n; ++i) c[i] = normal(rng);
  return Functional(c);
}

// Rotation by angle in the (e_1, e_2) plane of R^3.
Matrix plane_rotation(double angle) {
  Matrix u = Matrix::Identity(3, 3);
  u.topLeftCorner(2, 2) = rotation2(angle);
  return u;
}

}  // namespace

TEST_CASE("cocycle vanishes on K") {
  Rng rng(21);
  for (int n = 2; n <= 5; ++n) {
    const GroupElement k = GroupElement::from_matrix(random_rotation(n, rng));
    const Flag x = Flag::random(n, rng);
    CHECK(std::abs(rho_log(random_functional(n, rng), k, x)) <= 1e-13);
    for (int i = 1; i < n; ++i) CHECK(std::abs(rho_mu_oracle(i, k, x)) <= 1e-13);
  }
}

TEST_CASE("rank one: rho_mu is the norm ratio") {
  Rng rng(22);
  const Functional mu = RootDatum(2).fundamental_weight(1);
  for (int trial = 0; trial < 100; ++trial) {
    const GroupElement g = random_element(2, rng);
    const Vector z = gaussian_matrix(2, 1, rng).col(0);
    Matrix basis(2, 2);
    basis << z[0], -z[1], z[1], z[0];
    const Flag x = Flag::from_basis(basis);
    const double expected = (g.matrix() * z).norm() / z.norm();
    CHECK(std::exp(rho_log(mu, g, x)) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(rho(mu, g, x).value() == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("rank one: hyperbolic family") {
  const Functional mu = RootDatum(2).fundamental_weight(1);
  for (double t : {0.5, 1.0, 2.0}) {
    for (auto [a, b] : {std::pair{1.0, 0.0}, {0.8, 0.3}, {1.0, -0.9}, {0.2, 0.7}}) {
      Matrix basis(2, 2);
      basis << a, -b, b, a;
      const double expected =
          ((a * a + b * b) * std::cosh(2 * t) + 2 * a * b * std::sinh(2 * t)) / (a * a + b * b);
      const double got = std::exp(2.0 * rho_log(mu, hyperbolic(t), Flag::from_basis(basis)));
      CHECK(got == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("Gram-determinant oracle agrees with the QR route") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;
    const GroupElement g = random_element(n, rng);
    const Flag x = Flag::random(n, rng);
    const RootDatum roots(n);
    for (int i = 1; i < n; ++i) {
      CHECK(std::abs(rho_log(roots.fundamental_weight(i), g, x) - rho_mu_oracle(i, g, x)) <=
            1e-9);
    }
    CHECK(std::abs(rho_mu_oracle(n, g, x)) <= 1e-8);
  }
  CHECK_THROWS_AS(rho_mu_oracle(0, GroupElement::identity(3), Flag::standard(3)),
                  PreconditionError);
}

TEST_CASE("root cocycles") {
  Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupElement g = random_element(2, rng);
    const Flag x = Flag::random(2, rng);
    CHECK(std::abs(rho_alpha_log(1, g, x) -
                   2.0 * rho_log(RootDatum(2).fundamental_weight(1), g, x)) <= 1e-12);
  }
  const double s = 0.4;
  CHECK(rho_alpha_log(1, diagonal({std::exp(s), std::exp(-s)}), Flag::standard(2)) ==
        doctest::Approx(2 * s));

  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;
    const GroupElement g = random_element(n, rng);
    const Flag x = Flag::random(n, rng);
    for (int i = 1; i < n; ++i) {
      const double prev = i > 1 ? rho_mu_oracle(i - 1, g, x) : 0.0;
      const double next = i + 1 < n ? rho_mu_oracle(i + 1, g, x) : 0.0;
      const double via_weights = 2.0 * rho_mu_oracle(i, g, x) - prev - next;
      CHECK(std::abs(rho_alpha_log(i, g, x) - via_weights) <= 1e-9);
    }
  }
}

TEST_CASE("cocycle identity") {
  Rng rng(25);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 4;
    const Functional lambda = random_functional(n, rng);
    const GroupElement g = random_element(n, rng);
    const GroupElement h = random_element(n, rng);
    const Flag x = Flag::random(n, rng);
    const double defect =
        rho_log(lambda, g * h, x) - rho_log(lambda, g, act(h, x)) - rho_log(lambda, h, x);
    CHECK(std::abs(defect) <= 1e-9);
    CHECK(std::abs(rho_log(lambda, g, x) - rho_log(lambda, g, flipped(x, 0, 1))) <= 1e-12);
  }
}

TEST_CASE("word cocycle") {
  Rng rng(26);
  const Functional lambda = random_functional(3, rng);
  const Flag base = Flag::random(3, rng);

  const std::vector<GroupElement> one{random_element(3, rng)};
  const WordTrace single = word_cocycle(lambda, one, base);
  REQUIRE(single.partial_logs.size() == 1);
  CHECK(single.total() == doctest::Approx(rho_log(lambda, one[0], base)));

  std::vector<GroupElement> letters;
  GroupElement product = GroupElement::identity(3);
  for (int j = 0; j < 50; ++j) {
    letters.push_back(near_identity(3, 0.5, rng));
    product = letters.back() * product;
  }
  const WordTrace trace = word_cocycle(lambda, letters, base);
  CHECK(std::abs(trace.total() - rho_log(lambda, product, base)) <= 1e-7);
  CHECK(flag_distance(trace.end, act(product, base)) <= 1e-7);

  // A fixer of the base flag: powers give an arithmetic progression.
  const GroupElement d = diagonal({2.0, 1.0, 0.5});
  const std::vector<GroupElement> powers(10, d);
  const WordTrace progression = word_cocycle(lambda, powers, Flag::standard(3));
  const double step = rho_log(lambda, d, Flag::standard(3));
  for (std::size_t m = 0; m < powers.size(); ++m) {
    CHECK(progression.partial_logs[m] == doctest::Approx(step * (m + 1)));
  }
  CHECK_THROWS_AS(word_cocycle(lambda, std::vector<GroupElement>{}, base), PreconditionError);
}

TEST_CASE("long words stay finite in the log domain") {
  Rng rng(27);
  std::vector<GroupElement> letters;
  for (int j = 0; j < 1000; ++j) {
    Matrix m = 10.0 * random_unimodular(3, rng);
    m /= std::cbrt(m.determinant());
    letters.push_back(GroupElement::from_matrix(m));
  }
  const WordTrace trace = word_cocycle(RootDatum(3).simple_root(1), letters, Flag::standard(3));
  CHECK(std::isfinite(trace.total()));
}

TEST_CASE("restriction invariance") {
  Rng rng(28);
  const ThetaSet theta(3, {1});
  const RootDatum roots(3);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  CHECK(restriction_invariance_check(roots.fundamental_weight(2), theta, random_element(3, rng),
                                     Flag::random(3, rng), Matrix::Identity(3, 3)) <= 1e-12);
  int large = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const GroupElement g = random_element(3, rng);
    const Flag x = Flag::random(3, rng);
    const Matrix u = plane_rotation(angle(rng));
    CHECK(restriction_invariance_check(roots.fundamental_weight(2), theta, g, x, u) <= 1e-9);
    if (restriction_invariance_check(roots.fundamental_weight(1), theta, g, x, u) > 1e-3) ++large;
  }
  CHECK(large >= 95);
  // At the standard flag the check is literally rho(g u, x0) vs rho(g, x0).
  const GroupElement g = random_element(3, rng);
  const Matrix u = plane_rotation(0.7);
  const double literal =
      std::abs(rho_log(roots.fundamental_weight(2), g * GroupElement::from_matrix(u), Flag::standard(3)) -
               rho_log(roots.fundamental_weight(2), g, Flag::standard(3)));
  CHECK(literal <= 1e-12);

  Matrix bad = Matrix::Identity(3, 3);
  bad.bottomRightCorner(2, 2) = rotation2(0.3);
  CHECK_THROWS_AS(restriction_invariance_check(roots.fundamental_weight(2), theta, g,
                                               Flag::standard(3), bad),
                  PreconditionError);
}
