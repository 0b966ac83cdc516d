#pragma once

#include <Eigen/Dense>

namespace flagtype {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

}  // namespace flagtype
