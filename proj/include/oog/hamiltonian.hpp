#pragma once

#include <vector>

#include "oog/state_space.hpp"

namespace oog {

/// Pieces of the level-gamma Hamiltonian
///
///   M = [ A + B K                      -B Dcal^{-1} B^T ]
///       [ -g Cr^T (Cr + Dr K)
///           + Cp^T (Cp + Dp K)         -(A + B K)^T     ]
///
/// with Dcal = g Dr^T Dr + g eps I - Dp^T Dp and K = Dcal^{-1}(Dp^T Cp - g Dr^T Cr).
/// M has the imaginary eigenvalue iw exactly when g is a generalized singular
/// value *squared* of (G_p(iw), [G_r(iw); sqrt(eps) I]), i.e. `gamma` here is a
/// level on sigma^2, not on sigma.
struct HamiltonianParts {
  Matrix Dcal;
  Matrix K;
  Matrix Mgamma;
  double gamma = 0.0;
  double epsilon = 0.0;
};

/// Frequencies w >= 0 for which +-iw is (numerically) an eigenvalue.
struct ImagEigs {
  std::vector<double> frequencies;  // strictly ascending
  std::vector<double> residuals;    // |Re lambda| of the accepted eigenvalue(s)

  [[nodiscard]] bool empty() const noexcept { return frequencies.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return frequencies.size(); }
};

inline constexpr double kDefaultTauSing = 1e-12;
inline constexpr double kDefaultTauIm = 1e-8;
inline constexpr double kDefaultTauMerge = 1e-7;
inline constexpr double kRegularizationStep = 0.01;

/// Throws SingularDcal when sigma_min(Dcal) <= tau_sing * s, where s is the
/// sum of the norms of the terms making up Dcal (so cancellation is caught).
/// Assumes A has no imaginary-axis eigenvalues; the caller checks this.
[[nodiscard]] HamiltonianParts build_hamiltonian(const TwoOutputPlant& plant, double epsilon,
                                                 double gamma,
                                                 double tau_sing = kDefaultTauSing);

/// Tries eps0 * (1 + 0.01)^k for k = 0..max_tries and returns the first
/// Hamiltonian that builds. Throws RegularizationFailed with the sigma_min
/// history otherwise.
[[nodiscard]] HamiltonianParts build_regularized_hamiltonian(const TwoOutputPlant& plant,
                                                             double epsilon0, double gamma,
                                                             int max_tries,
                                                             double tau_sing = kDefaultTauSing);

/// The regularization chosen by build_regularized_hamiltonian.
[[nodiscard]] double retry_regularization(const TwoOutputPlant& plant, double epsilon0,
                                          double gamma, int max_tries,
                                          double tau_sing = kDefaultTauSing);

/// Eigenvalues with |Re l| <= tau_im * (1 + |l|) count as imaginary. Their
/// |Im l| values are sorted and values closer than tau_merge * (1 + w) merged.
[[nodiscard]] ImagEigs imaginary_eigenvalues(const Matrix& M, double tau_im = kDefaultTauIm,
                                             double tau_merge = kDefaultTauMerge);

[[nodiscard]] inline ImagEigs imaginary_eigenvalues(const HamiltonianParts& H,
                                                    double tau_im = kDefaultTauIm,
                                                    double tau_merge = kDefaultTauMerge) {
  return imaginary_eigenvalues(H.Mgamma, tau_im, tau_merge);
}

}  // namespace oog
