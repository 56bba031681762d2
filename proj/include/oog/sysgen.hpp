#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "oog/state_space.hpp"

namespace oog {

/// Reproducible variates on top of std::mt19937_64, whose output sequence is
/// fixed by the C++ standard. The transforms below are fixed here too
/// (std:: distributions are implementation-defined):
///   uniform01: top 53 bits of one draw, in [0, 1)
///   normal:    Box-Muller on two uniform01 draws, both outputs used
///   below(n):  rejection sampling, unbiased
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double normal();
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct RandomSystemSpec {
  int n_x = 5;  // divisible by 5; inputs and both output widths are n_x / 5
  std::uint64_t seed = 0;
  std::pair<double, double> pole_range{-1.5, -0.5};

  void validate() const;
};

/// A = T^{-1} diag(poles) T with T standard normal (redrawn while cond(T) > 1e6),
/// poles uniform on pole_range; B, Cp, Dp, Cr, Dr i.i.d. standard normal.
[[nodiscard]] TwoOutputPlant random_stable_plant(const RandomSystemSpec& spec);

struct NetworkSpec {
  int nodes = 50;
  int n_edges = 50;
  std::uint64_t seed = 0;
  std::pair<double, double> weight_range{0.8, 1.2};
  double residual_fraction = 0.02;

  void validate() const;
};

/// Positive networked system on a random strongly connected digraph:
/// A = -(L + I) with L the in-degree Laplacian, B = I, Cp = ones, Dp = 0,
/// Cr = unit rows for max(1, round(fraction * N)) distinct random nodes, Dr = 0.
[[nodiscard]] TwoOutputPlant networked_plant(const NetworkSpec& spec);

/// Directed edges (source, target) of the graph behind networked_plant, after
/// strong-connectivity stitching, sorted. Exposed for testing.
[[nodiscard]] std::vector<std::pair<int, int>> network_topology(const NetworkSpec& spec, Rng& rng);

}  // namespace oog
