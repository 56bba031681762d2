#pragma once

#include <vector>

#include "oog/state_space.hpp"

namespace oog {

/// Generalized singular values of a pair (M, N): all sigma >= 0 with
/// M^H M v = sigma^2 N^H N v. Sorted descending; zeros are kept.
struct GsvResult {
  std::vector<double> values;

  [[nodiscard]] std::size_t count() const noexcept { return values.size(); }
  [[nodiscard]] double max() const noexcept { return values.empty() ? 0.0 : values.front(); }
};

/// Cholesky reduction N^H N = L L^H followed by a Hermitian eigensolve of
/// L^{-1} M^H M L^{-H}. Requires N^H N positive definite; throws
/// NotPositiveDefinite otherwise.
[[nodiscard]] GsvResult generalized_singular_values(const CMatrix& M, const CMatrix& N);

/// sigma_bar(G_p, [G_r; sqrt(eps) I]) for already evaluated responses.
[[nodiscard]] double max_gsv(const CMatrix& Gp, const CMatrix& Gr, double epsilon);

/// The frequency-wise objective sigma_bar_eps(iw) whose supremum over w is the
/// regularized cyclic output-to-output gain.
[[nodiscard]] double max_gsv_at_frequency(const TwoOutputPlant& plant, double epsilon, double omega);

/// Same objective with a reusable frequency evaluator.
[[nodiscard]] double max_gsv_at_frequency(const PlantResponse& response, double epsilon,
                                          double omega);

}  // namespace oog
