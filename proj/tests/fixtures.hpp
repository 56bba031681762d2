#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "oog/state_space.hpp"

namespace oogtest {

using oog::Matrix;

inline Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

// 1/(s+1) on both outputs.
inline oog::TwoOutputPlant scalar_plant() {
  return {scalar(-1), scalar(1), scalar(1), scalar(0), scalar(1), scalar(0)};
}

// Closed form of the regularized objective for scalar_plant().
inline double scalar_sigma(double omega, double eps) {
  const double g2 = 1.0 / (1.0 + omega * omega);
  return std::sqrt(g2 / (g2 + eps));
}

// Plain bisection on a bracketed sign change.
template <typename F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline oog::TwoOutputPlant with_identity_residual(const oog::TwoOutputPlant& p) {
  const auto m = p.inputs();
  return {p.A(), p.B(), p.Cp(), p.Dp(), Matrix::Zero(m, p.states()), Matrix::Identity(m, m)};
}

}  // namespace oogtest
