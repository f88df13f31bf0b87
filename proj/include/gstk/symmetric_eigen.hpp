#pragma once

#include <Eigen/Dense>

namespace gstk::linalg {

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending.  Only the upper triangle is read.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& A, int max_sweeps = 100);

} // namespace gstk::linalg
