#pragma once

// Dense phase-one simplex for small feasibility problems
//   find x >= 0 with A x = b.
// Bland's rule; meant for cones with a handful of rays, not for scale.

#include <optional>

#include "flagtype/linalg.hpp"

namespace flagtype::detail {

std::optional<Vector> feasible_nonnegative(const Matrix& a, const Vector& b,
                                           double tol = 1e-10);

}  // namespace flagtype::detail
