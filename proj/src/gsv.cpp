#include "oog/gsv.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "oog/error.hpp"

namespace oog {
namespace {

// Values from M and the Gram matrix N^H N.
GsvResult gsv_from_gram(const CMatrix& M, const CMatrix& gram) {
  const Eigen::Index c = gram.rows();
  GsvResult out;
  if (c == 0) return out;

  Eigen::LLT<CMatrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "N^H N is not positive definite (regularization too small?)");
  }

  // X = L^{-1} M^H, so L^{-1} M^H M L^{-H} = X X^H. Its nonzero spectrum is
  // shared with X^H X, which is smaller when M has fewer rows than columns.
  const CMatrix X = llt.matrixL().solve(M.adjoint());
  const bool wide = M.rows() < c;
  const CMatrix reduced = wide ? CMatrix(X.adjoint() * X) : CMatrix(X * X.adjoint());

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(reduced, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "Hermitian eigensolver did not converge");
  }
  out.values.reserve(static_cast<std::size_t>(c));
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    out.values.push_back(std::sqrt(std::max(eig.eigenvalues()[i], 0.0)));
  }
  out.values.resize(static_cast<std::size_t>(c), 0.0);
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

// Largest value for N = [G_r; sqrt(eps) I] when G_r is wide (p_r < m).
// With the thin SVD G_r = U S V^H, N^H N = V (S^2 + eps) V^H + eps (I - V V^H),
// so sigma^2 are the eigenvalues of
//   X (S^2 + eps)^{-1} X^H + Y Y^H / eps,  X = G_p V,  Y = G_p - X V^H,
// a p_p x p_p problem instead of an m x m factorization.
double max_gsv_wide(const CMatrix& Gp, const CMatrix& Gr, double epsilon) {
  Eigen::JacobiSVD<CMatrix> svd(Gr, Eigen::ComputeThinV);
  const CMatrix& V = svd.matrixV();
  const CMatrix X = Gp * V;
  const CMatrix Y = Gp - X * V.adjoint();
  const Eigen::VectorXd weight =
      (svd.singularValues().array().square() + epsilon).inverse().matrix();
  const CMatrix pencil = X * weight.asDiagonal() * X.adjoint() + (Y * Y.adjoint()) / epsilon;

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(pencil, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "Hermitian eigensolver did not converge");
  }
  return std::sqrt(std::max(eig.eigenvalues().maxCoeff(), 0.0));
}

}  // namespace

GsvResult generalized_singular_values(const CMatrix& M, const CMatrix& N) {
  if (M.cols() != N.cols()) {
    throw Error(ErrorCode::InvalidArgument,
                "M and N must have the same number of columns (" + std::to_string(M.cols()) +
                    " vs " + std::to_string(N.cols()) + ")");
  }
  return gsv_from_gram(M, N.adjoint() * N);
}

double max_gsv(const CMatrix& Gp, const CMatrix& Gr, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "regularization must be finite and nonnegative");
  }
  if (Gp.cols() != Gr.cols()) {
    throw Error(ErrorCode::InvalidArgument, "G_p and G_r must share the input dimension");
  }
  if (Gp.size() == 0 || Gp.isZero(0.0)) return 0.0;
  if (epsilon > 0.0 && Gr.rows() < Gr.cols()) return max_gsv_wide(Gp, Gr, epsilon);

  // [G_r; sqrt(eps) I]^H [G_r; sqrt(eps) I] = G_r^H G_r + eps I
  CMatrix gram = Gr.adjoint() * Gr;
  gram.diagonal().array() += epsilon;
  return gsv_from_gram(Gp, gram).max();
}

double max_gsv_at_frequency(const PlantResponse& response, double epsilon, double omega) {
  const auto G = response(omega);
  return max_gsv(G.Gp, G.Gr, epsilon);
}

double max_gsv_at_frequency(const TwoOutputPlant& plant, double epsilon, double omega) {
  return max_gsv_at_frequency(PlantResponse(plant), epsilon, omega);
}

}  // namespace oog
