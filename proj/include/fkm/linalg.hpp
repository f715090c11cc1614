#pragma once

#include <Eigen/Dense>

namespace fkm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

}  // namespace fkm
