#include "oog/oracle.hpp"

#include <Eigen/LU>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>

#include "oog/error.hpp"
#include "oog/gsv.hpp"

namespace oog {
namespace {

constexpr int kRefinePasses = 3;
constexpr int kRefinePoints = 101;

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / (n - 1);
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = std::exp(a + step * k);
  out.front() = lo;
  out.back() = hi;
  return out;
}

class Sweep {
 public:
  Sweep(const TwoOutputPlant& plant, double epsilon) : response_(plant), epsilon_(epsilon) {}

  std::optional<double> at(double omega) {
    try {
      return max_gsv_at_frequency(response_, epsilon_, omega);
    } catch (const Error&) {
      last_ = std::current_exception();
      return std::nullopt;
    }
  }

  // Keeps the first maximum (strict comparison).
  void offer(double omega, GridResult& best, bool& any) {
    if (const auto s = at(omega)) {
      if (!any || *s > best.value) best = {*s, omega};
      any = true;
    }
  }

  [[noreturn]] void rethrow() const { std::rethrow_exception(last_); }

 private:
  PlantResponse response_;
  double epsilon_;
  std::exception_ptr last_;
};

}  // namespace

void GridSpec::validate() const {
  if (!(omega_min > 0.0) || !(omega_min < omega_max) || !std::isfinite(omega_max)) {
    throw Error(ErrorCode::InvalidArgument, "grid needs 0 < omega_min < omega_max < inf");
  }
  if (n_points < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 points");
}

std::vector<double> GridSpec::frequencies() const {
  validate();
  return log_space(omega_min, omega_max, n_points);
}

GridResult grid_rcoog(const TwoOutputPlant& plant, double epsilon, const GridSpec& grid) {
  const std::vector<double> omegas = grid.frequencies();
  Sweep sweep(plant, epsilon);
  GridResult best;
  bool any = false;
  std::size_t best_index = omegas.size();

  for (std::size_t k = 0; k < omegas.size(); ++k) {
    const double before = best.value;
    const bool had = any;
    sweep.offer(omegas[k], best, any);
    if (any && (!had || best.value > before)) best_index = k;
  }
  if (grid.include_zero) {
    const double before = best.value;
    sweep.offer(0.0, best, any);
    if (best.value > before) best_index = omegas.size();
  }
  if (!any) sweep.rethrow();

  if (grid.refine && best_index < omegas.size()) {
    double lo = omegas[best_index == 0 ? 0 : best_index - 1];
    double hi = omegas[std::min(best_index + 1, omegas.size() - 1)];
    for (int pass = 0; pass < kRefinePasses && lo < hi; ++pass) {
      const std::vector<double> fine = log_space(lo, hi, kRefinePoints);
      std::size_t arg = 0;
      double top = -1.0;
      for (std::size_t k = 0; k < fine.size(); ++k) {
        if (const auto s = sweep.at(fine[k]); s && *s > top) {
          top = *s;
          arg = k;
        }
      }
      if (top > best.value) best = {top, fine[arg]};
      lo = fine[arg == 0 ? 0 : arg - 1];
      hi = fine[std::min(arg + 1, fine.size() - 1)];
    }
  }
  return best;
}

std::vector<CurvePoint> sigma_curve(const TwoOutputPlant& plant, double epsilon,
                                    const GridSpec& grid) {
  std::vector<double> omegas = grid.frequencies();
  if (grid.include_zero) omegas.insert(omegas.begin(), 0.0);
  Sweep sweep(plant, epsilon);
  std::vector<CurvePoint> out;
  out.reserve(omegas.size());
  for (const double omega : omegas) {
    out.push_back({omega, sweep.at(omega).value_or(std::numeric_limits<double>::quiet_NaN())});
  }
  return out;
}

Complex gamma_determinant(const TwoOutputPlant& plant, double epsilon, double gamma,
                          double omega) {
  const auto G = PlantResponse(plant)(omega);
  CMatrix Gamma = gamma * (G.Gr.adjoint() * G.Gr) - G.Gp.adjoint() * G.Gp;
  Gamma.diagonal().array() += gamma * epsilon;
  return Gamma.partialPivLu().determinant();
}

double hinf_reference(const StateSpace& sys, double epsilon, const GridSpec& grid) {
  const Eigen::Index m = sys.inputs();
  const TwoOutputPlant plant(sys.A(), sys.B(), sys.C(), sys.D(), Matrix::Zero(m, sys.states()),
                             Matrix::Identity(m, m));
  return grid_rcoog(plant, epsilon, grid).value;
}

}  // namespace oog
