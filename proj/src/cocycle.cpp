#include "flagtype/cocycle.hpp"

#include <cmath>
#include <string>

#include "flagtype/errors.hpp"

namespace flagtype {

double CocycleValue::value() const { return std::exp(log_value); }

double rho_log(const Functional& lambda, const GroupElement& g, const Flag& x) {
  return lambda(a_cocycle(g, x));
}

CocycleValue rho(const Functional& lambda, const GroupElement& g, const Flag& x) {
  return CocycleValue{rho_log(lambda, g, x)};
}

double rho_mu_oracle(int i, const GroupElement& g, const Flag& x) {
  const int n = g.dim();
  if (i < 1 || i > n) throw PreconditionError("rho_mu_oracle: index out of range");
  if (x.dim() != n) throw DimensionMismatch("rho_mu_oracle: flag size");
  const Matrix image = g.matrix() * x.subspace(i);
  const Matrix gram = image.transpose() * image;
  Eigen::LLT<Matrix> chol(gram);
  if (chol.info() != Eigen::Success) {
    throw DecompositionError("rho_mu_oracle: Gram matrix not positive definite");
  }
  // log sqrt(det gram) = sum log diag(L).
  return chol.matrixLLT().diagonal().array().log().sum();
}

double rho_alpha_log(int i, const GroupElement& g, const Flag& x) {
  const RootDatum roots(g.dim());
  return rho_log(roots.simple_root(i), g, x);
}

WordTrace word_cocycle(const Functional& lambda,
                       std::span<const GroupElement> letters, const Flag& base) {
  if (letters.empty()) throw PreconditionError("word_cocycle: empty word");
  WordTrace trace{{letters.begin(), letters.end()}, base, {}, base};
  trace.partial_logs.reserve(letters.size());
  double total = 0.0;
  for (const GroupElement& g : letters) {
    ActionStep step = act_with_cocycle(g.matrix(), trace.end);
    total += lambda(step.a);
    trace.partial_logs.push_back(total);
    trace.end = std::move(step.image);
  }
  return trace;
}

bool is_k_theta_member(const Matrix& u, const ThetaSet& theta, double tol) {
  const int n = theta.n();
  if (u.rows() != n || u.cols() != n) return false;
  if ((u.transpose() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol) {
    return false;
  }
  if (std::abs(u.determinant() - 1.0) > tol) return false;
  std::vector<int> block_of(n);
  int b = 0;
  for (auto [begin, end] : theta.blocks()) {
    for (int i = begin; i < end; ++i) block_of[i] = b;
    ++b;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (block_of[i] != block_of[j] && std::abs(u(i, j)) > tol) return false;
    }
  }
  return true;
}

double restriction_invariance_check(const Functional& lambda,
                                    const ThetaSet& theta,
                                    const GroupElement& g, const Flag& x,
                                    const Matrix& u) {
  if (!is_k_theta_member(u, theta)) {
    throw PreconditionError("restriction check: u is not block-orthogonal for theta");
  }
  const Matrix& k = x.frame();
  const Matrix moved = g.matrix() * k * u * k.transpose();
  const double lhs = lambda(act_with_cocycle(moved, x).a);
  return std::abs(lhs - rho_log(lambda, g, x));
}

}  // namespace flagtype
