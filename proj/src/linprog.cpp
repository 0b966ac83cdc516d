#include "linprog.hpp"

#include <cmath>
#include <vector>

namespace flagtype::detail {

std::optional<Vector> feasible_nonnegative(const Matrix& a, const Vector& b,
                                           double tol) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  // Tableau columns: n structural, m artificial, 1 rhs.
  Matrix t = Matrix::Zero(m + 1, n + m + 1);
  for (int i = 0; i < m; ++i) {
    const double s = b[i] < 0 ? -1.0 : 1.0;
    t.row(i).head(n) = s * a.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = s * b[i];
  }
  // Objective row: minimize the sum of artificials, expressed in the
  // non-basic variables.
  for (int i = 0; i < m; ++i) t.row(m) -= t.row(i);
  for (int i = 0; i < m; ++i) t(m, n + i) = 0.0;

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  const double eps = tol * scale;
  for (int iter = 0; iter < 50 * (n + m + 1); ++iter) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (t(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      if (t(i, enter) > eps) {
        const double ratio = t(i, n + m) / t(i, enter);
        if (leave < 0 || ratio < best - eps ||
            (std::abs(ratio - best) <= eps && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot happen in phase one
    t.row(leave) /= t(leave, enter);
    for (int i = 0; i <= m; ++i) {
      if (i != leave && t(i, enter) != 0.0) {
        t.row(i) -= t(i, enter) * t.row(leave);
      }
    }
    basis[leave] = enter;
  }

  if (-t(m, n + m) > eps * std::max(1.0, b.cwiseAbs().sum())) return std::nullopt;
  Vector x = Vector::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = std::max(0.0, t(i, n + m));
  }
  if ((a * x - b).cwiseAbs().maxCoeff() > 1e3 * eps * std::max(1.0, b.cwiseAbs().maxCoeff())) {
    return std::nullopt;
  }
  return x;
}

}  // namespace flagtype::detail
