#pragma once

// SL(n,R) elements, the Iwasawa decomposition g = k exp(H) n_u, points of
// flag manifolds and the action of the group on them.
//
// Convention: the KAN factors come from the orthogonal-triangular
// factorization with a positive diagonal in the triangular factor, which
// makes the decomposition unique. A full flag V_1 < ... < V_{n-1} is stored
// as an orthonormal frame whose first d columns span V_d; the frame is a
// representative modulo sign flips of its columns.

#include <optional>

#include "flagtype/linalg.hpp"
#include "flagtype/random.hpp"
#include "flagtype/rootdata.hpp"

namespace flagtype {

inline constexpr double kDeterminantTolerance = 1e-9;
inline constexpr double kDeterminantRenormalizeLimit = 1e-3;
inline constexpr double kOrthogonalityTolerance = 1e-12;

class GroupElement {
 public:
  // Checks squareness and finiteness. A determinant within
  // kDeterminantTolerance of 1 is kept as is; drift up to
  // kDeterminantRenormalizeLimit is removed by g / det(g)^(1/n); anything
  // else throws DeterminantError.
  static GroupElement from_matrix(const Matrix& m);
  static GroupElement identity(int n);

  const Matrix& matrix() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  GroupElement operator*(const GroupElement& other) const;
  GroupElement inverse() const;
  GroupElement pow(int exponent) const;

 private:
  explicit GroupElement(Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

struct IwasawaFactors {
  Matrix k;    // orthogonal (special-orthogonal when det > 0)
  Vector h;    // log of the diagonal of the A-part
  Matrix n_u;  // unit upper-triangular

  Matrix reconstruct() const;
};

// m = k diag(exp(h)) n_u for any invertible square matrix m. For m in
// SL(n,R), k is in SO(n) and h has zero sum.
IwasawaFactors iwasawa_decompose(const Matrix& m);
IwasawaFactors iwasawa_decompose(const GroupElement& g);

class Flag {
 public:
  static Flag standard(int n);
  // Flag spanned by the leading columns of an invertible matrix.
  static Flag from_basis(const Matrix& basis);
  // Uses the given orthonormal frame verbatim as the representative (a frame
  // with determinant -1 has its last column negated).
  static Flag from_orthonormal(const Matrix& frame);
  static Flag random(int n, Rng& rng);

  const Matrix& frame() const { return frame_; }
  int dim() const { return static_cast<int>(frame_.rows()); }
  // Leading d columns, spanning V_d.
  Matrix subspace(int d) const { return frame_.leftCols(d); }

 private:
  friend struct ActionStep act_with_cocycle(const Matrix& g, const Flag& x);
  explicit Flag(Matrix frame) : frame_(std::move(frame)) {}
  Matrix frame_;
};

// Flag of type theta: a full frame of which only V_d, d in
// theta.retained_dims(), carries meaning.
struct PartialFlag {
  Matrix frame;
  ThetaSet theta;
};

// Result of applying g to x: the image flag together with the a-cocycle.
struct ActionStep {
  Flag image;
  Vector a;
};

ActionStep act_with_cocycle(const Matrix& g, const Flag& x);

// a(g, x): Iwasawa a-part of g * frame(x).
Vector a_cocycle(const GroupElement& g, const Flag& x);
Flag act(const GroupElement& g, const Flag& x);
Flag act(const Matrix& g, const Flag& x);

// Largest principal angle between two equal-dimensional subspaces given by
// orthonormal bases.
double principal_angle(const Matrix& u, const Matrix& v);

// max over d = 1..n-1 of the largest principal angle between V_d(x), V_d(y).
double flag_distance(const Flag& x, const Flag& y);

PartialFlag project(const Flag& x, const ThetaSet& theta);
PartialFlag act(const GroupElement& g, const PartialFlag& x);
// Same as flag_distance but only over the retained subspaces.
double partial_flag_distance(const PartialFlag& x, const PartialFlag& y);

struct AttractorOptions {
  int max_iterations = 20000;
  double step_tolerance = 1e-13;
  double fixed_point_tolerance = 1e-8;
  // Minimum separation of consecutive log-moduli for regularity.
  double gap_tolerance = 1e-9;
  int restarts = 4;
};

struct Attractor {
  Flag flag;
  // a(g, flag): log-moduli of the eigenvalues in decreasing order.
  Vector log_moduli;
  // max_i (log_moduli[i+1] - log_moduli[i]) < 0.
  double contraction_rate = 0.0;
};

// Attracting fixed flag of a regular element by orthogonal iteration from
// the standard flag, restarting from random flags drawn from rng when the
// iteration lands on a non-attracting fixed point. Throws NotRegular.
Attractor find_attractor(const GroupElement& g, Rng& rng,
                         const AttractorOptions& options = {});
Flag attractor_flag(const GroupElement& g, Rng& rng,
                    const AttractorOptions& options = {});
// Uses a local generator with a fixed seed.
Flag attractor_flag(const GroupElement& g);

}  // namespace flagtype
