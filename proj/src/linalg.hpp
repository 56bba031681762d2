#pragma once

#include <Eigen/Core>

namespace oog::detail {

/// All eigenvalues of a real square matrix (LAPACK dgeev, balanced).
/// Throws EigenFailure when the QR iteration does not converge.
Eigen::VectorXcd general_eigenvalues(const Eigen::MatrixXd& M);

}  // namespace oog::detail
