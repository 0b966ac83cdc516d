#pragma once

// Cocycles rho_lambda(g, x) = exp(lambda(a(g, x))) on the full flag
// manifold, evaluated in the log domain.

#include <span>
#include <vector>

#include "flagtype/matgroup.hpp"
#include "flagtype/rootdata.hpp"

namespace flagtype {

struct CocycleValue {
  double log_value = 0.0;
  double value() const;
};

// lambda(a(g, x)).
double rho_log(const Functional& lambda, const GroupElement& g, const Flag& x);
CocycleValue rho(const Functional& lambda, const GroupElement& g, const Flag& x);

// log of the i-volume distortion of g on V_i(x), computed from the Gram
// determinant of g applied to the leading i frame columns. Independent of
// the QR route; equals rho_log(mu_i, g, x). i = n gives log|det g|.
double rho_mu_oracle(int i, const GroupElement& g, const Flag& x);

// rho_log(alpha_i, g, x), 1 <= i <= n-1.
double rho_alpha_log(int i, const GroupElement& g, const Flag& x);

struct WordTrace {
  std::vector<GroupElement> letters;
  Flag base;
  // partial_logs[m] = sum_{j <= m} lambda(a(g_j, g_{j-1} ... g_1 base)).
  std::vector<double> partial_logs;
  // g_L ... g_1 base.
  Flag end;

  double total() const { return partial_logs.back(); }
};

// Letters act in order: letters[0] first. Throws PreconditionError on an
// empty word.
WordTrace word_cocycle(const Functional& lambda,
                       std::span<const GroupElement> letters, const Flag& base);

// Block-orthogonal with blocks from theta.blocks() and unit determinant.
bool is_k_theta_member(const Matrix& u, const ThetaSet& theta,
                       double tol = 1e-10);

// |rho_log(lambda, g k u k^T, x) - rho_log(lambda, g, x)| with k = frame(x):
// u acts through the copy of K_theta fixing the projection of x, which at
// the standard flag is u itself. Small whenever lambda vanishes on the
// roots of theta. Throws PreconditionError if u is not in K_theta.
double restriction_invariance_check(const Functional& lambda,
                                    const ThetaSet& theta,
                                    const GroupElement& g, const Flag& x,
                                    const Matrix& u);

}  // namespace flagtype
