#pragma once

#include <limits>
#include <vector>

#include "oog/error.hpp"
#include "oog/hamiltonian.hpp"
#include "oog/state_space.hpp"

namespace oog {

struct SolverConfig {
  double epsilon = 1e-8;    // regularization
  double tol_gamma = 1e-4;  // relative tolerance of the returned value
  double tau_im = kDefaultTauIm;
  double tau_merge = kDefaultTauMerge;
  double tau_sing = kDefaultTauSing;
  double tau_stab = 1e-8;  // stability margin is tau_stab * (1 + ||A||_F)
  int max_iters = 100;
  int max_reg_tries = 20;

  /// Throws InvalidArgument on non-positive tolerances or max_iters < 1.
  void validate() const;
};

/// One Hamiltonian query of the level-set iteration.
struct TraceEntry {
  double lower = 0.0;    // lower bound entering the iteration
  double level = 0.0;    // (1 + 2 tol) * lower
  double epsilon = 0.0;  // regularization the Hamiltonian was built with
  std::vector<double> crossings;
  int skipped = 0;  // candidate frequencies whose evaluation failed
};

inline constexpr double kInfiniteFrequency = std::numeric_limits<double>::infinity();

struct RcoogResult {
  double value = 0.0;  // midpoint of [lower, upper]
  double lower = 0.0;
  double upper = 0.0;  // (1 + 2 tol) * lower
  double peak_frequency = 0.0;  // kInfiniteFrequency when attained as w -> inf
  int iterations = 0;
  std::vector<TraceEntry> trace;
};

/// Thrown for MaxIterationsExceeded and StagnationDetected; carries the best
/// interval found so far (not certified).
class SolverError : public Error {
 public:
  SolverError(ErrorCode code, const std::string& what, RcoogResult best)
      : Error(code, what), best_(std::move(best)) {}

  [[nodiscard]] const RcoogResult& best() const noexcept { return best_; }

 private:
  RcoogResult best_;
};

struct LowerBound {
  double gamma = 0.0;
  double omega = 0.0;  // kInfiniteFrequency for the feedthrough candidate
};

/// max of sigma_bar at w = 0 and as w -> inf (the feedthrough pair
/// (Dp, [Dr; sqrt(eps) I])). Ties go to the feedthrough candidate.
[[nodiscard]] LowerBound initial_lower_bound(const TwoOutputPlant& plant, double epsilon);

/// Level-set iteration on the Hamiltonian. On return the true gain lies in
/// [lower, upper) and value has relative error at most tol_gamma.
[[nodiscard]] RcoogResult compute_rcoog(const TwoOutputPlant& plant, const SolverConfig& cfg = {});

/// True iff the gain is certified strictly below `gain` (no imaginary
/// eigenvalues of the Hamiltonian at level gain^2).
[[nodiscard]] bool bounded_below_gamma(const TwoOutputPlant& plant, const SolverConfig& cfg,
                                       double gain);

}  // namespace oog
