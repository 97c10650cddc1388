#pragma once

#include <Eigen/Dense>

#include "permwalk/rational.hpp"

namespace permwalk {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = DenseMatrix<Rational>;
using RationalVector = DenseVector<Rational>;

// Exact Gaussian elimination. Pivots on the entry of largest magnitude
// (largest |numerator/denominator|), which limits coefficient blowup.
// Throws std::logic_error on a singular system.
RationalVector solve_exact(RationalMatrix a, RationalVector b);

// Floating-point side of the dual-route check: partial-pivot LU via Eigen.
Eigen::VectorXd solve_float(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace permwalk
