#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

namespace oog {

using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Continuous-time LTI system (A, B, C, D). Dimensions and finiteness are
/// checked on construction; the object is immutable afterwards.
class StateSpace {
 public:
  StateSpace(Matrix A, Matrix B, Matrix C, Matrix D);

  [[nodiscard]] const Matrix& A() const noexcept { return A_; }
  [[nodiscard]] const Matrix& B() const noexcept { return B_; }
  [[nodiscard]] const Matrix& C() const noexcept { return C_; }
  [[nodiscard]] const Matrix& D() const noexcept { return D_; }

  [[nodiscard]] Eigen::Index states() const noexcept { return A_.rows(); }
  [[nodiscard]] Eigen::Index inputs() const noexcept { return B_.cols(); }
  [[nodiscard]] Eigen::Index outputs() const noexcept { return C_.rows(); }

 private:
  Matrix A_, B_, C_, D_;
};

/// System with a performance output y_p = Cp x + Dp u and a residual output
/// y_r = Cr x + Dr u driven by the same input u.
class TwoOutputPlant {
 public:
  TwoOutputPlant(Matrix A, Matrix B, Matrix Cp, Matrix Dp, Matrix Cr, Matrix Dr);

  [[nodiscard]] const Matrix& A() const noexcept { return A_; }
  [[nodiscard]] const Matrix& B() const noexcept { return B_; }
  [[nodiscard]] const Matrix& Cp() const noexcept { return Cp_; }
  [[nodiscard]] const Matrix& Dp() const noexcept { return Dp_; }
  [[nodiscard]] const Matrix& Cr() const noexcept { return Cr_; }
  [[nodiscard]] const Matrix& Dr() const noexcept { return Dr_; }

  [[nodiscard]] Eigen::Index states() const noexcept { return A_.rows(); }
  [[nodiscard]] Eigen::Index inputs() const noexcept { return B_.cols(); }
  [[nodiscard]] Eigen::Index performance_outputs() const noexcept { return Cp_.rows(); }
  [[nodiscard]] Eigen::Index residual_outputs() const noexcept { return Cr_.rows(); }

  [[nodiscard]] StateSpace performance() const { return {A_, B_, Cp_, Dp_}; }
  [[nodiscard]] StateSpace residual() const { return {A_, B_, Cr_, Dr_}; }

 private:
  Matrix A_, B_, Cp_, Dp_, Cr_, Dr_;
};

/// Stability margin used when no explicit one is given: 1e-8 * (1 + ||A||_F).
[[nodiscard]] double default_stability_margin(const Matrix& A);

/// Largest real part over the eigenvalues of A. Throws EigenFailure.
[[nodiscard]] double spectral_abscissa(const Matrix& A);

/// Throws NotStable unless spectral_abscissa(A) <= -margin. A negative
/// relative_margin selects default_stability_margin(A); otherwise the margin
/// is relative_margin * (1 + ||A||_F).
void require_stable(const Matrix& A, double relative_margin = -1.0);

/// Repeated evaluation of C (iwI - A)^{-1} B + D. A is reduced to upper
/// Hessenberg form once, so each frequency costs O(n^2 * min(p, m)).
class FrequencyEvaluator {
 public:
  FrequencyEvaluator(const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& D);
  explicit FrequencyEvaluator(const StateSpace& sys)
      : FrequencyEvaluator(sys.A(), sys.B(), sys.C(), sys.D()) {}

  /// Throws SingularResolvent when iw is (numerically) an eigenvalue of A.
  [[nodiscard]] CMatrix operator()(double omega) const;

 private:
  Matrix H_;      // Q^T A Q, upper Hessenberg
  Matrix Bh_;     // Q^T B
  Matrix Ch_;     // C Q
  Matrix D_;
  double scale_;  // ||H||_1, reference for the pivot test
};

/// Evaluates G_p(iw) and G_r(iw) together from one factorization.
class PlantResponse {
 public:
  explicit PlantResponse(const TwoOutputPlant& plant);

  struct Value {
    CMatrix Gp;
    CMatrix Gr;
  };

  [[nodiscard]] Value operator()(double omega) const;

 private:
  FrequencyEvaluator stacked_;
  Eigen::Index pp_;
};

/// C (iwI - A)^{-1} B + D via a pivoted linear solve, never an explicit inverse.
[[nodiscard]] CMatrix freq_response(const StateSpace& sys, double omega);

}  // namespace oog
