#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oog/error.hpp"
#include "oog/gsv.hpp"
#include "oog/oracle.hpp"
#include "oog/solver.hpp"
#include "oog/sysgen.hpp"

using namespace oog;
using oogtest::scalar;

TEST(GridRcoog, ScalarPlantPeaksAtDc) {
  const auto r = grid_rcoog(oogtest::scalar_plant(), 0.01);
  EXPECT_NEAR(r.value, 0.995037190209989135, 1e-14);
  EXPECT_EQ(r.omega, 0.0);
}

TEST(GridRcoog, ZeroPerformanceOutput) {
  const TwoOutputPlant plant(scalar(-1), scalar(1), scalar(0), scalar(0), scalar(1), scalar(0));
  const auto r = grid_rcoog(plant, 1e-8);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.omega, 1e-4);
}

TEST(GridRcoog, FirstOrderHinf) {
  const StateSpace sys(scalar(-1), scalar(1), scalar(1), scalar(0));
  EXPECT_NEAR(hinf_reference(sys, 1e-8), 1.0, 1e-7);
  const StateSpace five(scalar(-1), scalar(1), scalar(5), scalar(0));
  EXPECT_NEAR(hinf_reference(five, 1e-8), 5.0, 5e-7);
}

TEST(GridRcoog, HinfMatchesPlainSvdSweep) {
  GridSpec grid;
  grid.n_points = 2000;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto sys = random_stable_plant({5, seed}).performance();
    double ref = 0.0;
    std::vector<double> omegas = grid.frequencies();
    omegas.push_back(0.0);
    for (double w : omegas) {
      const CMatrix R = Complex(0, w) * CMatrix::Identity(5, 5) - sys.A().cast<Complex>();
      const CMatrix G = sys.C().cast<Complex>() * R.partialPivLu().solve(sys.B().cast<Complex>()) +
                        sys.D().cast<Complex>();
      ref = std::max(ref, Eigen::JacobiSVD<CMatrix>(G).singularValues()(0));
    }
    EXPECT_NEAR(hinf_reference(sys, 1e-12, grid), ref, 1e-6 * ref) << "seed " << seed;
  }
}

TEST(GridRcoog, RefinementMonotone) {
  // Log grids with n and 2n - 1 points are nested, so the max cannot drop.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto plant = random_stable_plant({10, seed});
    double prev = 0.0;
    for (int n : {101, 201, 401, 801}) {
      GridSpec grid;
      grid.n_points = n;
      const double v = grid_rcoog(plant, 1e-8, grid).value;
      EXPECT_GE(v, prev) << "seed " << seed << " n " << n;
      prev = v;
    }
  }
}

TEST(GridRcoog, LocalRefinementNeverLowersTheValue) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto plant = random_stable_plant({10, seed});
    GridSpec grid;
    grid.n_points = 200;
    const double coarse = grid_rcoog(plant, 1e-8, grid).value;
    grid.refine = true;
    const auto fine = grid_rcoog(plant, 1e-8, grid);
    EXPECT_GE(fine.value, coarse);
    EXPECT_LE(fine.value, compute_rcoog(plant).upper);
  }
}

TEST(GridRcoog, NeverExceedsComputedUpperBound) {
  for (std::uint64_t seed = 30; seed <= 45; ++seed) {
    const auto plant = random_stable_plant({5, seed});
    EXPECT_LE(grid_rcoog(plant, 1e-8).value, compute_rcoog(plant).upper) << "seed " << seed;
  }
}

TEST(GridSpecValidation, RejectsBadRanges) {
  GridSpec g;
  g.omega_min = 0;
  EXPECT_THROW(g.validate(), Error);
  g = {};
  g.omega_max = g.omega_min;
  EXPECT_THROW(g.validate(), Error);
  g = {};
  g.n_points = 1;
  EXPECT_THROW(g.validate(), Error);
}

TEST(SigmaCurve, ZeroFirstThenGrid) {
  GridSpec g;
  g.n_points = 5;
  const auto curve = sigma_curve(oogtest::scalar_plant(), 0.01, g);
  ASSERT_EQ(curve.size(), 6u);
  EXPECT_EQ(curve[0].omega, 0.0);
  EXPECT_EQ(curve[1].omega, 1e-4);
  EXPECT_EQ(curve[5].omega, 1e4);
  for (const auto& p : curve) EXPECT_NEAR(p.sigma, oogtest::scalar_sigma(p.omega, 0.01), 1e-13);
}

TEST(SigmaCurve, LargerEpsilonDampensHighFrequencies) {
  GridSpec g;
  g.n_points = 50;
  const auto small = sigma_curve(oogtest::scalar_plant(), 1e-6, g);
  const auto large = sigma_curve(oogtest::scalar_plant(), 1e-3, g);
  for (size_t k = 0; k < small.size(); ++k) EXPECT_LE(large[k].sigma, small[k].sigma);
  EXPECT_LT(large.back().sigma, 0.5 * small.back().sigma);
}

TEST(GammaDeterminant, VanishesAtScalarCrossing) {
  const double eps = 0.01;
  for (double w : {0.0, 0.5, 2.0}) {
    const double g2 = 1.0 / (1.0 + w * w);
    const double gamma = g2 / (g2 + eps);
    EXPECT_LT(std::abs(gamma_determinant(oogtest::scalar_plant(), eps, gamma, w)), 1e-15);
  }
}

TEST(GammaDeterminant, ScalarClosedForm) {
  const double eps = 0.01, gamma = 0.5, w = 1.5;
  const double g2 = 1.0 / (1.0 + w * w);
  const Complex d = gamma_determinant(oogtest::scalar_plant(), eps, gamma, w);
  EXPECT_NEAR(d.real(), gamma * (g2 + eps) - g2, 1e-15);
  EXPECT_NEAR(d.imag(), 0.0, 1e-15);
}

TEST(GammaDeterminant, DominatedByGammaTermForLargeGamma) {
  const auto plant = random_stable_plant({10, 3});
  const double gamma = 1e12, eps = 1e-2, w = 0.7;
  const auto v = PlantResponse(plant)(w);
  const CMatrix dom = gamma * (v.Gr.adjoint() * v.Gr + eps * CMatrix::Identity(2, 2));
  const Complex ref = dom.determinant();
  const Complex d = gamma_determinant(plant, eps, gamma, w);
  EXPECT_NE(std::abs(d), 0.0);
  EXPECT_LT(std::abs(d - ref), 1e-6 * std::abs(ref));
}

TEST(GammaDeterminant, ConjugateSymmetry) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto plant = random_stable_plant({10, seed});
    for (double w : {0.2, 1.0, 6.0}) {
      const Complex pos = gamma_determinant(plant, 1e-4, 2.0, w);
      const Complex neg = gamma_determinant(plant, 1e-4, 2.0, -w);
      EXPECT_LT(std::abs(neg - std::conj(pos)), 1e-12 * (1 + std::abs(pos)));
    }
  }
}
