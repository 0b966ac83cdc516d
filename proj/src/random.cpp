#include "flagtype/random.hpp"

#include <cmath>

#include "flagtype/matgroup.hpp"

namespace flagtype {

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

Matrix random_unimodular(int n, Rng& rng) {
  Matrix m = gaussian_matrix(n, n, rng);
  double det = m.determinant();
  if (det < 0) {
    m.row(0) *= -1.0;
    det = -det;
  }
  return m / std::pow(det, 1.0 / n);
}

Matrix random_rotation(int n, Rng& rng) {
  Matrix k = iwasawa_decompose(gaussian_matrix(n, n, rng)).k;
  if (k.determinant() < 0) k.col(n - 1) *= -1.0;
  return k;
}

Matrix random_traceless_direction(int n, Rng& rng) {
  Matrix z = gaussian_matrix(n, n, rng);
  z.diagonal().array() -= z.trace() / n;
  const double norm = z.norm();
  return norm > 0 ? Matrix(z / norm) : z;
}

}  // namespace flagtype
