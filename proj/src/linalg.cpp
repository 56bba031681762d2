#include "linalg.hpp"

#include <lapacke.h>

#include <string>

#include "oog/error.hpp"

namespace oog::detail {

Eigen::VectorXcd general_eigenvalues(const Eigen::MatrixXd& M) {
  const auto n = static_cast<lapack_int>(M.rows());
  if (M.rows() != M.cols()) {
    throw Error(ErrorCode::InvalidArgument, "eigenvalues of a non-square matrix");
  }
  Eigen::VectorXcd out(n);
  if (n == 0) return out;
  if (!M.allFinite()) {
    throw Error(ErrorCode::EigenFailure, "eigenvalues of a matrix with non-finite entries");
  }

  // dgeev overwrites its input.
  Eigen::MatrixXd work = M;
  Eigen::VectorXd wr(n), wi(n);
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, wr.data(), wi.data(),
                    nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw Error(ErrorCode::EigenFailure,
                "dgeev failed to converge (info=" + std::to_string(info) + ")");
  }
  for (lapack_int i = 0; i < n; ++i) out[i] = {wr[i], wi[i]};
  return out;
}

}  // namespace oog::detail
