#include "oog/state_space.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "linalg.hpp"
#include "oog/error.hpp"

namespace oog {
namespace {

std::string dims(const Matrix& M) {
  return std::to_string(M.rows()) + "x" + std::to_string(M.cols());
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

void require_finite(const Matrix& M, const char* name) {
  require(M.allFinite(), std::string(name) + " has non-finite entries");
}

// LU factorization with partial pivoting of (s I - H) for upper Hessenberg H.
// Pivoting only ever swaps rows k and k+1, so the factorization is O(n^2).
class HessenbergLU {
 public:
  HessenbergLU(const Matrix& H, Complex s, double scale) : U_(H.cast<Complex>()) {
    const Eigen::Index n = H.rows();
    U_ = -U_;
    U_.diagonal().array() += s;
    multipliers_.resize(std::max<Eigen::Index>(n - 1, 0));
    swapped_.assign(static_cast<std::size_t>(std::max<Eigen::Index>(n - 1, 0)), false);

    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      if (std::abs(U_(k + 1, k)) > std::abs(U_(k, k))) {
        U_.row(k).tail(n - k).swap(U_.row(k + 1).tail(n - k));
        swapped_[static_cast<std::size_t>(k)] = true;
      }
      const Complex pivot = U_(k, k);
      const Complex l = pivot == Complex{} ? Complex{} : U_(k + 1, k) / pivot;
      multipliers_[k] = l;
      U_.row(k + 1).tail(n - k) -= l * U_.row(k).tail(n - k);
    }

    const double tiny =
        4.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
        (scale + std::abs(s));
    for (Eigen::Index k = 0; k < n; ++k) {
      if (!(std::abs(U_(k, k)) > tiny)) {
        throw Error(ErrorCode::SingularResolvent,
                    "resolvent is singular at s = " + std::to_string(s.imag()) +
                        "i (A has an eigenvalue on the imaginary axis)");
      }
    }
  }

  // X = (sI - H)^{-1} R
  CMatrix solve(CMatrix R) const {
    const Eigen::Index n = U_.rows();
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      if (swapped_[static_cast<std::size_t>(k)]) R.row(k).swap(R.row(k + 1));
      R.row(k + 1) -= multipliers_[k] * R.row(k);
    }
    U_.triangularView<Eigen::Upper>().solveInPlace(R);
    return R;
  }

  // Y = (sI - H)^{-T} R  (plain transpose)
  CMatrix solve_transposed(CMatrix R) const {
    const Eigen::Index n = U_.rows();
    U_.transpose().triangularView<Eigen::Lower>().solveInPlace(R);
    for (Eigen::Index k = n - 2; k >= 0; --k) {
      R.row(k) -= multipliers_[k] * R.row(k + 1);
      if (swapped_[static_cast<std::size_t>(k)]) R.row(k).swap(R.row(k + 1));
    }
    return R;
  }

 private:
  CMatrix U_;
  Eigen::VectorXcd multipliers_;
  std::vector<bool> swapped_;
};

}  // namespace

StateSpace::StateSpace(Matrix A, Matrix B, Matrix C, Matrix D)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)) {
  require(A_.rows() == A_.cols(), "A must be square, got " + dims(A_));
  require(B_.rows() == A_.rows(), "B must have " + std::to_string(A_.rows()) + " rows, got " + dims(B_));
  require(C_.cols() == A_.rows(), "C must have " + std::to_string(A_.rows()) + " columns, got " + dims(C_));
  require(D_.rows() == C_.rows() && D_.cols() == B_.cols(),
          "D must be " + std::to_string(C_.rows()) + "x" + std::to_string(B_.cols()) + ", got " + dims(D_));
  require_finite(A_, "A");
  require_finite(B_, "B");
  require_finite(C_, "C");
  require_finite(D_, "D");
}

TwoOutputPlant::TwoOutputPlant(Matrix A, Matrix B, Matrix Cp, Matrix Dp, Matrix Cr, Matrix Dr)
    : A_(std::move(A)),
      B_(std::move(B)),
      Cp_(std::move(Cp)),
      Dp_(std::move(Dp)),
      Cr_(std::move(Cr)),
      Dr_(std::move(Dr)) {
  const auto n = A_.rows();
  const auto m = B_.cols();
  require(A_.rows() == A_.cols(), "A must be square, got " + dims(A_));
  require(B_.rows() == n, "B must have " + std::to_string(n) + " rows, got " + dims(B_));
  require(Cp_.cols() == n, "Cp must have " + std::to_string(n) + " columns, got " + dims(Cp_));
  require(Cr_.cols() == n, "Cr must have " + std::to_string(n) + " columns, got " + dims(Cr_));
  require(Dp_.rows() == Cp_.rows() && Dp_.cols() == m,
          "Dp must be " + std::to_string(Cp_.rows()) + "x" + std::to_string(m) + ", got " + dims(Dp_));
  require(Dr_.rows() == Cr_.rows() && Dr_.cols() == m,
          "Dr must be " + std::to_string(Cr_.rows()) + "x" + std::to_string(m) + ", got " + dims(Dr_));
  require(m > 0, "plant must have at least one input");
  require_finite(A_, "A");
  require_finite(B_, "B");
  require_finite(Cp_, "Cp");
  require_finite(Dp_, "Dp");
  require_finite(Cr_, "Cr");
  require_finite(Dr_, "Dr");
}

double default_stability_margin(const Matrix& A) { return 1e-8 * (1.0 + A.norm()); }

double spectral_abscissa(const Matrix& A) {
  if (A.rows() == 0) return -std::numeric_limits<double>::infinity();
  return detail::general_eigenvalues(A).real().maxCoeff();
}

void require_stable(const Matrix& A, double relative_margin) {
  const double margin =
      relative_margin < 0.0 ? default_stability_margin(A) : relative_margin * (1.0 + A.norm());
  const double abscissa = spectral_abscissa(A);
  if (!(abscissa <= -margin)) {
    throw Error(ErrorCode::NotStable,
                "system is not stable within margin (spectral abscissa " +
                    std::to_string(abscissa) + ", required <= " + std::to_string(-margin) + ")");
  }
}

FrequencyEvaluator::FrequencyEvaluator(const Matrix& A, const Matrix& B, const Matrix& C,
                                       const Matrix& D) {
  StateSpace checked(A, B, C, D);
  if (A.rows() > 0) {
    Eigen::HessenbergDecomposition<Matrix> hess(A);
    const Matrix Q = hess.matrixQ();
    H_ = hess.matrixH();
    Bh_ = Q.transpose() * B;
    Ch_ = C * Q;
  } else {
    H_ = A;
    Bh_ = B;
    Ch_ = C;
  }
  D_ = D;
  scale_ = H_.size() == 0 ? 0.0 : H_.cwiseAbs().colwise().sum().maxCoeff();
}

CMatrix FrequencyEvaluator::operator()(double omega) const {
  if (!std::isfinite(omega)) {
    throw Error(ErrorCode::InvalidArgument, "frequency must be finite");
  }
  CMatrix G = D_.cast<Complex>();
  if (H_.rows() == 0) return G;

  HessenbergLU lu(H_, Complex(0.0, omega), scale_);
  if (Bh_.cols() <= Ch_.rows()) {
    G.noalias() += Ch_.cast<Complex>() * lu.solve(Bh_.cast<Complex>());
  } else {
    const CMatrix Y = lu.solve_transposed(Ch_.transpose().cast<Complex>());
    G.noalias() += Y.transpose() * Bh_.cast<Complex>();
  }
  return G;
}

namespace {

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

}  // namespace

PlantResponse::PlantResponse(const TwoOutputPlant& plant)
    : stacked_(plant.A(), plant.B(), vstack(plant.Cp(), plant.Cr()),
               vstack(plant.Dp(), plant.Dr())),
      pp_(plant.performance_outputs()) {}

PlantResponse::Value PlantResponse::operator()(double omega) const {
  const CMatrix G = stacked_(omega);
  return {G.topRows(pp_), G.bottomRows(G.rows() - pp_)};
}

CMatrix freq_response(const StateSpace& sys, double omega) {
  return FrequencyEvaluator(sys)(omega);
}

}  // namespace oog
