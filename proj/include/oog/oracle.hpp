#pragma once

#include <vector>

#include "oog/state_space.hpp"

namespace oog {

/// Log-spaced frequency grid, optionally with w = 0 appended.
struct GridSpec {
  double omega_min = 1e-4;
  double omega_max = 1e4;
  int n_points = 10000;
  bool include_zero = true;
  // Opt-in: resample finely around the grid argmax (three nested passes).
  bool refine = false;

  void validate() const;
  /// The log-spaced points, ascending, without the optional zero.
  [[nodiscard]] std::vector<double> frequencies() const;
};

struct GridResult {
  double value = 0.0;
  double omega = 0.0;  // attaining frequency
};

/// max of sigma_bar_eps(iw) over the grid. Always a lower bound on the
/// regularized gain. Frequencies that fail to evaluate are skipped; the error
/// propagates only if every frequency fails.
[[nodiscard]] GridResult grid_rcoog(const TwoOutputPlant& plant, double epsilon,
                                    const GridSpec& grid = {});

struct CurvePoint {
  double omega = 0.0;
  double sigma = 0.0;  // NaN where the evaluation failed
};

/// sigma_bar_eps(iw) at every grid frequency (zero first when included).
[[nodiscard]] std::vector<CurvePoint> sigma_curve(const TwoOutputPlant& plant, double epsilon,
                                                  const GridSpec& grid = {});

/// det(gamma G_r^H G_r - G_p^H G_p + gamma eps I) at iw. Zero exactly when
/// sqrt(gamma) is a generalized singular value of (G_p, [G_r; sqrt(eps) I]).
[[nodiscard]] Complex gamma_determinant(const TwoOutputPlant& plant, double epsilon, double gamma,
                                        double omega);

/// Grid H-infinity norm of sys, computed as the regularized gain of the plant
/// with performance output sys and residual output y_r = u.
[[nodiscard]] double hinf_reference(const StateSpace& sys, double epsilon,
                                    const GridSpec& grid = {});

}  // namespace oog
