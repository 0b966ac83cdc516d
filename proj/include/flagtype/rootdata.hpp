#pragma once

// Combinatorial data of the A_{n-1} root system of SL(n,R).
//
// Elements of a* are stored as raw coefficient vectors c with
// lambda(H) = sum_i c_i h_i on trace-zero diagonal H. Adding a constant
// vector to c does not change the functional, so inner products are taken
// between mean-centered representatives.
//
// Root and weight indices are 1-based throughout (alpha_1 .. alpha_{n-1}),
// matching the way they are reported.

#include <compare>
#include <initializer_list>
#include <set>
#include <utility>
#include <vector>

#include "flagtype/linalg.hpp"

namespace flagtype {

class Functional {
 public:
  Functional() = default;
  explicit Functional(Vector coeffs);

  const Vector& coeffs() const { return coeffs_; }
  int dim() const { return static_cast<int>(coeffs_.size()); }

  // lambda(H) = sum c_i h_i.
  double operator()(const Vector& h) const;

  Functional operator+(const Functional& other) const;
  Functional operator-(const Functional& other) const;
  Functional operator*(double s) const;

 private:
  Vector coeffs_;
};

inline Functional operator*(double s, const Functional& f) { return f * s; }

// Euclidean inner product of the mean-centered coefficient vectors.
double pairing(const Functional& lhs, const Functional& rhs);

// Subset of simple roots {alpha_i : i in indices} of SL(n,R).
class ThetaSet {
 public:
  ThetaSet() = default;
  ThetaSet(int n, std::vector<int> indices);
  ThetaSet(int n, std::initializer_list<int> indices)
      : ThetaSet(n, std::vector<int>(indices)) {}

  static ThetaSet none(int n) { return ThetaSet(n, std::vector<int>{}); }
  static ThetaSet all(int n);

  int n() const { return n_; }
  const std::vector<int>& indices() const { return indices_; }
  bool contains(int i) const;
  bool empty() const { return indices_.empty(); }
  std::size_t size() const { return indices_.size(); }

  // Coordinate blocks [begin, end) (0-based) obtained by merging i and i+1
  // whenever alpha_i is in the set.
  std::vector<std::pair<int, int>> blocks() const;

  // Dimensions d in 1..n-1 whose subspace V_d survives projection to the
  // partial flag manifold of this type (exactly those with alpha_d not in
  // the set).
  std::vector<int> retained_dims() const;

  ThetaSet complement() const;

  friend bool operator==(const ThetaSet&, const ThetaSet&) = default;

 private:
  int n_ = 0;
  std::vector<int> indices_;
};

// Permutation of the coordinates of a; perm[i] is the image of i (0-based).
class WeylElement {
 public:
  WeylElement() = default;
  explicit WeylElement(std::vector<int> perm);

  static WeylElement identity(int n);
  // Reflection in the wall of alpha_i: the transposition (i, i+1).
  static WeylElement reflection(int n, int i);

  const std::vector<int>& perm() const { return perm_; }
  int n() const { return static_cast<int>(perm_.size()); }

  // (w H)_{perm[i]} = H_i.
  Vector apply(const Vector& h) const;
  WeylElement operator*(const WeylElement& other) const;
  WeylElement inverse() const;

  friend auto operator<=>(const WeylElement&, const WeylElement&) = default;

 private:
  std::vector<int> perm_;
};

class RootDatum {
 public:
  explicit RootDatum(int n);

  int n() const { return n_; }
  int num_simple_roots() const { return n_ - 1; }

  // alpha_i = e_i - e_{i+1}, 1 <= i <= n-1.
  Functional simple_root(int i) const;
  // mu_i = e_1 + ... + e_i, 0 <= i <= n (mu_0 = 0, mu_n acts as zero on a).
  Functional fundamental_weight(int i) const;

  std::vector<Functional> simple_roots() const;
  std::vector<Functional> fundamental_weights() const;

 private:
  int n_;
};

inline constexpr double kChamberTolerance = 1e-12;

// True iff <alpha_i, lambda> vanishes for alpha_i in theta and is positive
// for every other simple root.
bool in_partial_chamber(const Functional& lambda, const ThetaSet& theta,
                        double tol = kChamberTolerance);

inline constexpr int kMaxWeylEnumerationRank = 8;

// Subgroup of permutations generated by the reflections of theta. Exhaustive;
// throws PreconditionError for n > kMaxWeylEnumerationRank.
std::set<WeylElement> weyl_theta_members(const ThetaSet& theta);

}  // namespace flagtype
