#include "flagtype/rootdata.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "flagtype/errors.hpp"

namespace flagtype {

namespace {

void require_same_dim(const Functional& a, const Functional& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("functional dimensions differ: " +
                            std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
}

}  // namespace

Functional::Functional(Vector coeffs) : coeffs_(std::move(coeffs)) {}

double Functional::operator()(const Vector& h) const {
  if (h.size() != coeffs_.size()) {
    throw DimensionMismatch("functional applied to vector of wrong size");
  }
  return coeffs_.dot(h);
}

Functional Functional::operator+(const Functional& other) const {
  require_same_dim(*this, other);
  return Functional(coeffs_ + other.coeffs_);
}

Functional Functional::operator-(const Functional& other) const {
  require_same_dim(*this, other);
  return Functional(coeffs_ - other.coeffs_);
}

Functional Functional::operator*(double s) const {
  return Functional(coeffs_ * s);
}

double pairing(const Functional& lhs, const Functional& rhs) {
  require_same_dim(lhs, rhs);
  const Vector a = lhs.coeffs().array() - lhs.coeffs().mean();
  const Vector b = rhs.coeffs().array() - rhs.coeffs().mean();
  return a.dot(b);
}

ThetaSet::ThetaSet(int n, std::vector<int> indices)
    : n_(n), indices_(std::move(indices)) {
  if (n < 2) throw PreconditionError("theta set needs n >= 2");
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()),
                 indices_.end());
  for (int i : indices_) {
    if (i < 1 || i > n - 1) {
      throw PreconditionError("simple root index " + std::to_string(i) +
                              " out of range 1.." + std::to_string(n - 1));
    }
  }
}

ThetaSet ThetaSet::all(int n) {
  std::vector<int> idx;
  for (int i = 1; i < n; ++i) idx.push_back(i);
  return ThetaSet(n, std::move(idx));
}

bool ThetaSet::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::vector<std::pair<int, int>> ThetaSet::blocks() const {
  std::vector<std::pair<int, int>> out;
  int begin = 0;
  for (int d = 1; d < n_; ++d) {
    if (!contains(d)) {
      out.emplace_back(begin, d);
      begin = d;
    }
  }
  out.emplace_back(begin, n_);
  return out;
}

std::vector<int> ThetaSet::retained_dims() const {
  std::vector<int> out;
  for (int d = 1; d < n_; ++d) {
    if (!contains(d)) out.push_back(d);
  }
  return out;
}

ThetaSet ThetaSet::complement() const { return ThetaSet(n_, retained_dims()); }

WeylElement::WeylElement(std::vector<int> perm) : perm_(std::move(perm)) {
  std::vector<int> sorted = perm_;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
    if (sorted[i] != i) throw PreconditionError("not a permutation");
  }
}

WeylElement WeylElement::identity(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return WeylElement(std::move(p));
}

WeylElement WeylElement::reflection(int n, int i) {
  if (i < 1 || i > n - 1) throw PreconditionError("reflection index out of range");
  WeylElement w = identity(n);
  std::swap(w.perm_[i - 1], w.perm_[i]);
  return w;
}

Vector WeylElement::apply(const Vector& h) const {
  if (h.size() != n()) throw DimensionMismatch("Weyl element applied to wrong size");
  Vector out(h.size());
  for (int i = 0; i < n(); ++i) out[perm_[i]] = h[i];
  return out;
}

WeylElement WeylElement::operator*(const WeylElement& other) const {
  if (n() != other.n()) throw DimensionMismatch("Weyl elements of different rank");
  std::vector<int> p(perm_.size());
  for (int i = 0; i < n(); ++i) p[i] = perm_[other.perm_[i]];
  return WeylElement(std::move(p));
}

WeylElement WeylElement::inverse() const {
  std::vector<int> p(perm_.size());
  for (int i = 0; i < n(); ++i) p[perm_[i]] = i;
  return WeylElement(std::move(p));
}

RootDatum::RootDatum(int n) : n_(n) {
  if (n < 2) throw PreconditionError("root datum needs n >= 2");
}

Functional RootDatum::simple_root(int i) const {
  if (i < 1 || i > n_ - 1) throw PreconditionError("simple root index out of range");
  Vector c = Vector::Zero(n_);
  c[i - 1] = 1.0;
  c[i] = -1.0;
  return Functional(std::move(c));
}

Functional RootDatum::fundamental_weight(int i) const {
  if (i < 0 || i > n_) throw PreconditionError("fundamental weight index out of range");
  Vector c = Vector::Zero(n_);
  c.head(i).setOnes();
  return Functional(std::move(c));
}

std::vector<Functional> RootDatum::simple_roots() const {
  std::vector<Functional> out;
  for (int i = 1; i < n_; ++i) out.push_back(simple_root(i));
  return out;
}

std::vector<Functional> RootDatum::fundamental_weights() const {
  std::vector<Functional> out;
  for (int i = 1; i < n_; ++i) out.push_back(fundamental_weight(i));
  return out;
}

bool in_partial_chamber(const Functional& lambda, const ThetaSet& theta,
                        double tol) {
  if (lambda.dim() != theta.n()) {
    throw DimensionMismatch("functional and theta set over different ranks");
  }
  const RootDatum roots(theta.n());
  for (int i = 1; i < theta.n(); ++i) {
    const double p = pairing(roots.simple_root(i), lambda);
    if (theta.contains(i)) {
      if (std::abs(p) > tol) return false;
    } else if (p <= tol) {
      return false;
    }
  }
  return true;
}

std::set<WeylElement> weyl_theta_members(const ThetaSet& theta) {
  const int n = theta.n();
  if (n > kMaxWeylEnumerationRank) {
    throw PreconditionError("Weyl group enumeration limited to n <= " +
                            std::to_string(kMaxWeylEnumerationRank));
  }
  std::vector<WeylElement> gens;
  for (int i : theta.indices()) gens.push_back(WeylElement::reflection(n, i));

  std::set<WeylElement> seen{WeylElement::identity(n)};
  std::deque<WeylElement> frontier{WeylElement::identity(n)};
  while (!frontier.empty()) {
    const WeylElement w = frontier.front();
    frontier.pop_front();
    for (const auto& s : gens) {
      WeylElement next = s * w;
      if (seen.insert(next).second) frontier.push_back(std::move(next));
    }
  }
  return seen;
}

}  // namespace flagtype
