#include "flagtype/matgroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "flagtype/errors.hpp"

namespace flagtype {

namespace {

void require_square_finite(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DecompositionError(std::string(what) + ": matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw DecompositionError(std::string(what) + ": non-finite entries");
  }
}

Matrix fix_orientation(Matrix k) {
  if (k.determinant() < 0) k.col(k.cols() - 1) *= -1.0;
  return k;
}

}  // namespace

GroupElement GroupElement::from_matrix(const Matrix& m) {
  require_square_finite(m, "group element");
  const int n = static_cast<int>(m.rows());
  const double det = m.determinant();
  if (!std::isfinite(det) || det <= 0.0) {
    throw DeterminantError("determinant " + std::to_string(det) +
                           " is not positive");
  }
  const double drift = std::abs(det - 1.0);
  if (drift <= kDeterminantTolerance) return GroupElement(m);
  if (drift <= kDeterminantRenormalizeLimit) {
    return GroupElement(m / std::pow(det, 1.0 / n));
  }
  throw DeterminantError("determinant " + std::to_string(det) +
                         " too far from 1");
}

GroupElement GroupElement::identity(int n) {
  return GroupElement(Matrix::Identity(n, n));
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("group elements of different size");
  return GroupElement(mat_ * other.mat_);
}

GroupElement GroupElement::inverse() const { return GroupElement(mat_.inverse()); }

GroupElement GroupElement::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  GroupElement out = identity(dim());
  for (int i = 0; i < exponent; ++i) out = out * *this;
  return out;
}

Matrix IwasawaFactors::reconstruct() const {
  return k * h.array().exp().matrix().asDiagonal() * n_u;
}

IwasawaFactors iwasawa_decompose(const Matrix& m) {
  require_square_finite(m, "iwasawa_decompose");
  const int n = static_cast<int>(m.rows());
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();

  IwasawaFactors out{Matrix(n, n), Vector(n), Matrix(n, n)};
  for (int i = 0; i < n; ++i) {
    const double d = r(i, i);
    if (d == 0.0 || !std::isfinite(d)) {
      throw DecompositionError("iwasawa_decompose: singular matrix");
    }
    if (d < 0) {
      q.col(i) *= -1.0;
      r.row(i) *= -1.0;
    }
    out.h[i] = std::log(std::abs(d));
    out.n_u.row(i) = r.row(i) / std::abs(d);
    out.n_u(i, i) = 1.0;
  }
  out.k = std::move(q);
  return out;
}

IwasawaFactors iwasawa_decompose(const GroupElement& g) {
  return iwasawa_decompose(g.matrix());
}

Flag Flag::standard(int n) { return Flag(Matrix::Identity(n, n)); }

Flag Flag::from_basis(const Matrix& basis) {
  return Flag(fix_orientation(iwasawa_decompose(basis).k));
}

Flag Flag::from_orthonormal(const Matrix& frame) {
  require_square_finite(frame, "flag frame");
  const int n = static_cast<int>(frame.rows());
  const double defect =
      (frame.transpose() * frame - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    throw PreconditionError("flag frame is not orthonormal (defect " +
                            std::to_string(defect) + ")");
  }
  return Flag(fix_orientation(frame));
}

Flag Flag::random(int n, Rng& rng) { return Flag(random_rotation(n, rng)); }

ActionStep act_with_cocycle(const Matrix& g, const Flag& x) {
  if (g.rows() != x.dim()) throw DimensionMismatch("group element and flag differ in size");
  IwasawaFactors f = iwasawa_decompose(g * x.frame());
  return ActionStep{Flag(fix_orientation(std::move(f.k))), std::move(f.h)};
}

Vector a_cocycle(const GroupElement& g, const Flag& x) {
  return act_with_cocycle(g.matrix(), x).a;
}

Flag act(const GroupElement& g, const Flag& x) { return act(g.matrix(), x); }

Flag act(const Matrix& g, const Flag& x) { return act_with_cocycle(g, x).image; }

double principal_angle(const Matrix& u, const Matrix& v) {
  if (u.cols() != v.cols() || u.rows() != v.rows()) {
    throw DimensionMismatch("principal_angle: subspaces of different shape");
  }
  if (u.cols() == 0) return 0.0;
  const Matrix overlap = u.transpose() * v;
  const Matrix residual = v - u * overlap;
  // sin and cos of the largest angle, combined for accuracy at both ends.
  const double s = Eigen::JacobiSVD<Matrix>(residual).singularValues()(0);
  const double c =
      Eigen::JacobiSVD<Matrix>(overlap).singularValues().minCoeff();
  return std::atan2(s, c);
}

double flag_distance(const Flag& x, const Flag& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("flags of different size");
  double out = 0.0;
  for (int d = 1; d < x.dim(); ++d) {
    out = std::max(out, principal_angle(x.subspace(d), y.subspace(d)));
  }
  return out;
}

PartialFlag project(const Flag& x, const ThetaSet& theta) {
  if (theta.n() != x.dim()) throw DimensionMismatch("theta set and flag differ in rank");
  return PartialFlag{x.frame(), theta};
}

PartialFlag act(const GroupElement& g, const PartialFlag& x) {
  return PartialFlag{act(g, Flag::from_orthonormal(x.frame)).frame(), x.theta};
}

double partial_flag_distance(const PartialFlag& x, const PartialFlag& y) {
  if (!(x.theta == y.theta)) throw DimensionMismatch("partial flags of different type");
  double out = 0.0;
  for (int d : x.theta.retained_dims()) {
    out = std::max(out, principal_angle(x.frame.leftCols(d), y.frame.leftCols(d)));
  }
  return out;
}

Attractor find_attractor(const GroupElement& g, Rng& rng,
                         const AttractorOptions& options) {
  const int n = g.dim();
  for (int attempt = 0; attempt <= options.restarts; ++attempt) {
    Flag x = attempt == 0 ? Flag::standard(n) : Flag::random(n, rng);
    bool converged = false;
    for (int it = 0; it < options.max_iterations; ++it) {
      ActionStep step = act_with_cocycle(g.matrix(), x);
      const double moved = flag_distance(step.image, x);
      x = std::move(step.image);
      if (moved <= options.step_tolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NotRegular("orthogonal iteration did not contract within " +
                       std::to_string(options.max_iterations) + " steps");
    }
    const ActionStep check = act_with_cocycle(g.matrix(), x);
    if (flag_distance(check.image, x) > options.fixed_point_tolerance) {
      throw NotRegular("iteration stalled away from a fixed flag");
    }
    double worst_gap = -std::numeric_limits<double>::infinity();
    bool tie = false;
    for (int i = 0; i + 1 < n; ++i) {
      const double gap = check.a[i + 1] - check.a[i];
      if (std::abs(gap) <= options.gap_tolerance) tie = true;
      worst_gap = std::max(worst_gap, gap);
    }
    if (tie) throw NotRegular("eigenvalue moduli are not pairwise distinct");
    if (worst_gap < 0) return Attractor{x, check.a, worst_gap};
    // Landed on a fixed flag that is not attracting; restart.
  }
  throw NotRegular("no attracting fixed flag found after restarts");
}

Flag attractor_flag(const GroupElement& g, Rng& rng,
                    const AttractorOptions& options) {
  return find_attractor(g, rng, options).flag;
}

Flag attractor_flag(const GroupElement& g) {
  Rng rng(0x5eedULL);
  return attractor_flag(g, rng);
}

}  // namespace flagtype
