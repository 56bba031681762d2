#include "oog/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "linalg.hpp"
#include "oog/gsv.hpp"

namespace oog {
namespace {

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be positive and finite");
  }
}

// Relative slack for "the probe raised the lower bound" when only a single
// crossing frequency is reported.
constexpr double kSingletonRaise = 1e-12;

struct Candidate {
  double sigma = 0.0;
  double omega = 0.0;
  bool found = false;
};

Candidate best_of(const PlantResponse& response, double epsilon,
                  const std::vector<double>& omegas, int& skipped) {
  Candidate best;
  for (const double omega : omegas) {
    try {
      const double sigma = max_gsv_at_frequency(response, epsilon, omega);
      if (!best.found || sigma > best.sigma) best = {sigma, omega, true};
    } catch (const Error&) {
      ++skipped;
    }
  }
  return best;
}

RcoogResult finish(RcoogResult r, double lower, double level) {
  r.lower = lower;
  r.upper = level;
  r.value = 0.5 * (lower + level);
  return r;
}

}  // namespace

void SolverConfig::validate() const {
  check_positive(epsilon, "epsilon");
  check_positive(tol_gamma, "tol_gamma");
  check_positive(tau_im, "tau_im");
  check_positive(tau_merge, "tau_merge");
  check_positive(tau_sing, "tau_sing");
  check_positive(tau_stab, "tau_stab");
  if (max_iters < 1) throw Error(ErrorCode::InvalidArgument, "max_iters must be >= 1");
  if (max_reg_tries < 0) throw Error(ErrorCode::InvalidArgument, "max_reg_tries must be >= 0");
}

LowerBound initial_lower_bound(const TwoOutputPlant& plant, double epsilon) {
  check_positive(epsilon, "epsilon");
  const double at_zero = max_gsv_at_frequency(plant, epsilon, 0.0);
  const double at_infinity =
      max_gsv(plant.Dp().cast<Complex>(), plant.Dr().cast<Complex>(), epsilon);
  if (at_infinity > 0.0 && at_infinity >= at_zero) return {at_infinity, kInfiniteFrequency};
  return {at_zero, 0.0};
}

RcoogResult compute_rcoog(const TwoOutputPlant& plant, const SolverConfig& cfg) {
  cfg.validate();
  require_stable(plant.A(), cfg.tau_stab);

  const PlantResponse response(plant);
  RcoogResult result;
  LowerBound start = initial_lower_bound(plant, cfg.epsilon);

  if (start.gamma == 0.0) {
    // Both end points vanish; a band-pass G_p can still be nonzero in
    // between, so probe the natural frequencies of A before giving up.
    std::vector<double> probes{1.0};
    for (const auto& l : detail::general_eigenvalues(plant.A())) probes.push_back(std::abs(l));
    int skipped = 0;
    const Candidate c = best_of(response, cfg.epsilon, probes, skipped);
    if (!c.found || c.sigma == 0.0) {
      result.peak_frequency = 0.0;
      return result;
    }
    start = {c.sigma, c.omega};
  }

  double lower = start.gamma;
  result.peak_frequency = start.omega;

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const double level = (1.0 + 2.0 * cfg.tol_gamma) * lower;
    const HamiltonianParts H = build_regularized_hamiltonian(plant, cfg.epsilon, level * level,
                                                             cfg.max_reg_tries, cfg.tau_sing);
    const ImagEigs crossings = imaginary_eigenvalues(H, cfg.tau_im, cfg.tau_merge);

    TraceEntry entry;
    entry.lower = lower;
    entry.level = level;
    entry.epsilon = H.epsilon;
    entry.crossings = crossings.frequencies;
    result.iterations = iter + 1;

    if (crossings.empty()) {
      result.trace.push_back(std::move(entry));
      return finish(std::move(result), lower, level);
    }

    const auto& w = crossings.frequencies;
    std::vector<double> candidates;
    if (w.size() >= 2) {
      for (std::size_t i = 0; i + 1 < w.size(); ++i) candidates.push_back(0.5 * (w[i] + w[i + 1]));
    } else {
      candidates = {w[0], 0.5 * w[0], 2.0 * w[0]};
    }
    const Candidate best = best_of(response, cfg.epsilon, candidates, entry.skipped);
    result.trace.push_back(std::move(entry));

    const double threshold = w.size() >= 2 ? lower : lower * (1.0 + kSingletonRaise);
    if (best.found && best.sigma > threshold) {
      lower = best.sigma;
      result.peak_frequency = best.omega;
      continue;
    }

    if (w.size() < 2) {
      // A single (tangential) crossing: the peak is already within tolerance.
      return finish(std::move(result), lower, level);
    }
    std::ostringstream msg;
    msg << "level-set iteration stagnated at lower bound " << lower << ": " << w.size()
        << " crossing frequencies but no midpoint exceeds it";
    throw SolverError(ErrorCode::StagnationDetected, msg.str(),
                      finish(std::move(result), lower, level));
  }

  const double level = (1.0 + 2.0 * cfg.tol_gamma) * lower;
  throw SolverError(ErrorCode::MaxIterationsExceeded,
                    "no certificate after " + std::to_string(cfg.max_iters) + " iterations",
                    finish(std::move(result), lower, level));
}

bool bounded_below_gamma(const TwoOutputPlant& plant, const SolverConfig& cfg, double gain) {
  cfg.validate();
  check_positive(gain, "gamma");
  require_stable(plant.A(), cfg.tau_stab);
  const HamiltonianParts H = build_regularized_hamiltonian(plant, cfg.epsilon, gain * gain,
                                                           cfg.max_reg_tries, cfg.tau_sing);
  return imaginary_eigenvalues(H, cfg.tau_im, cfg.tau_merge).empty();
}

}  // namespace oog
