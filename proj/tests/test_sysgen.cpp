#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "linalg.hpp"
#include "oog/error.hpp"
#include "oog/sysgen.hpp"

using namespace oog;

namespace {

bool same(const TwoOutputPlant& a, const TwoOutputPlant& b) {
  return a.A() == b.A() && a.B() == b.B() && a.Cp() == b.Cp() && a.Dp() == b.Dp() &&
         a.Cr() == b.Cr() && a.Dr() == b.Dr();
}

// Every node reaches every other node along the sparsity pattern of A.
bool strongly_connected(const Matrix& A) {
  const auto n = A.rows();
  auto reach = [&](bool forward) {
    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::vector<Eigen::Index> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      for (Eigen::Index j = 0; j < n; ++j) {
        const double w = forward ? A(j, i) : A(i, j);
        if (j != i && w != 0.0 && !seen[static_cast<size_t>(j)]) {
          seen[static_cast<size_t>(j)] = true;
          stack.push_back(j);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  return reach(true) && reach(false);
}

}  // namespace

TEST(Rng, KnownFirstDraws) {
  // mt19937_64 default-seeded output is fixed by the standard.
  std::mt19937_64 ref(5489u);
  Rng rng(5489u);
  const double u = rng.uniform01();
  EXPECT_EQ(u, static_cast<double>(ref() >> 11) * 0x1.0p-53);
}

TEST(Rng, BoundedDrawsStayInRange) {
  Rng rng(3);
  for (int k = 0; k < 1000; ++k) EXPECT_LT(rng.below(7), 7u);
  for (int k = 0; k < 1000; ++k) {
    const double v = rng.uniform(0.8, 1.2);
    EXPECT_GE(v, 0.8);
    EXPECT_LT(v, 1.2);
  }
}

TEST(Rng, NormalMoments) {
  Rng rng(17);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.01);
}

TEST(RandomStablePlant, SmallestSize) {
  const auto p = random_stable_plant({5, 42});
  EXPECT_EQ(p.states(), 5);
  EXPECT_EQ(p.inputs(), 1);
  EXPECT_EQ(p.performance_outputs(), 1);
  EXPECT_EQ(p.residual_outputs(), 1);
  const double a = spectral_abscissa(p.A());
  EXPECT_GE(a, -1.5 - 1e-9);
  EXPECT_LE(a, -0.5 + 1e-9);
}

TEST(RandomStablePlant, ChannelWidthsScaleWithStates) {
  const auto p = random_stable_plant({50, 1});
  EXPECT_EQ(p.inputs(), 10);
  EXPECT_EQ(p.performance_outputs(), 10);
  EXPECT_EQ(p.residual_outputs(), 10);
  EXPECT_EQ(p.Dp().rows(), 10);
  EXPECT_EQ(p.Dr().cols(), 10);
}

TEST(RandomStablePlant, Deterministic) {
  EXPECT_TRUE(same(random_stable_plant({25, 99}), random_stable_plant({25, 99})));
  EXPECT_FALSE(same(random_stable_plant({25, 99}), random_stable_plant({25, 100})));
}

TEST(RandomStablePlant, SpectrumInsidePoleRange) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomSystemSpec spec{10, seed, {-3.0, -2.0}};
    const auto p = random_stable_plant(spec);
    const Eigen::VectorXcd lambda = detail::general_eigenvalues(p.A());
    for (const auto& l : lambda) {
      EXPECT_NEAR(l.imag(), 0.0, 1e-6);
      EXPECT_GE(l.real(), -3.0 - 1e-6);
      EXPECT_LE(l.real(), -2.0 + 1e-6);
    }
  }
}

TEST(RandomStablePlant, RejectsBadSpecs) {
  EXPECT_THROW((void)random_stable_plant({7, 1}), Error);
  EXPECT_THROW((void)random_stable_plant({0, 1}), Error);
  EXPECT_THROW((void)random_stable_plant({5, 1, {-1.0, 0.5}}), Error);
}

TEST(NetworkedPlant, Shape) {
  const auto p = networked_plant({50, 50, 7});
  EXPECT_EQ(p.states(), 50);
  EXPECT_EQ(p.inputs(), 50);
  EXPECT_EQ(p.residual_outputs(), 1);
  EXPECT_EQ(p.Cp(), Matrix::Ones(1, 50));
  EXPECT_EQ(p.Dp().norm(), 0.0);
  EXPECT_EQ(p.Dr().norm(), 0.0);
  EXPECT_EQ(p.Cr().sum(), 1.0);
  EXPECT_EQ(p.Cr().maxCoeff(), 1.0);
}

TEST(NetworkedPlant, ResidualCountFollowsFraction) {
  EXPECT_EQ(networked_plant({200, 200, 1}).residual_outputs(), 4);
  EXPECT_EQ(networked_plant({500, 500, 1}).residual_outputs(), 10);
  const auto p = networked_plant({200, 200, 2});
  std::set<Eigen::Index> nodes;
  for (Eigen::Index i = 0; i < p.Cr().rows(); ++i) {
    Eigen::Index j;
    p.Cr().row(i).maxCoeff(&j);
    EXPECT_EQ(p.Cr().row(i).sum(), 1.0);
    nodes.insert(j);
  }
  EXPECT_EQ(nodes.size(), 4u);
}

TEST(NetworkedPlant, MetzlerHurwitzAndLaplacianRows) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto p = networked_plant({50, 50, seed});
    const Matrix& A = p.A();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      double off = 0;
      for (Eigen::Index j = 0; j < A.cols(); ++j) {
        if (i == j) continue;
        EXPECT_GE(A(i, j), 0.0);
        if (A(i, j) != 0.0) {
          EXPECT_GE(A(i, j), 0.8);
          EXPECT_LE(A(i, j), 1.2);
        }
        off += A(i, j);
      }
      // A = -(L + I): each row sums to -1.
      EXPECT_NEAR(A(i, i) + off, -1.0, 1e-12);
    }
    EXPECT_LE(spectral_abscissa(A), -1.0 + 1e-9);
    EXPECT_TRUE(strongly_connected(A)) << "seed " << seed;
  }
}

TEST(NetworkedPlant, Deterministic) {
  EXPECT_TRUE(same(networked_plant({100, 100, 5}), networked_plant({100, 100, 5})));
  EXPECT_FALSE(same(networked_plant({100, 100, 5}), networked_plant({100, 100, 6})));
}

TEST(NetworkTopology, DistinctEdgesWithoutSelfLoops) {
  NetworkSpec spec{60, 300, 11};
  Rng rng(spec.seed);
  const auto edges = network_topology(spec, rng);
  EXPECT_GE(edges.size(), 300u);
  std::set<std::pair<int, int>> unique(edges.begin(), edges.end());
  EXPECT_EQ(unique.size(), edges.size());
  for (const auto& [u, v] : edges) {
    EXPECT_NE(u, v);
    EXPECT_GE(u, 0);
    EXPECT_LT(v, 60);
  }
}

TEST(NetworkTopology, SparseGraphsGetStitched) {
  // 50 random edges on 50 nodes is almost never strongly connected by itself.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    NetworkSpec spec{50, 50, seed};
    Rng rng(seed);
    EXPECT_GT(network_topology(spec, rng).size(), 50u) << "seed " << seed;
  }
}
