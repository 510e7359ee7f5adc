#pragma once

#include <Eigen/Dense>

namespace mechent {

using Mat4 = Eigen::Matrix4d;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using MatX = Eigen::MatrixXd;
using CMatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXd;

}  // namespace mechent
