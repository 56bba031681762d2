#include "oog/oog.h"

#include <Eigen/Core>
#include <algorithm>
#include <exception>
#include <new>
#include <string>

#include "oog/error.hpp"
#include "oog/gsv.hpp"
#include "oog/oracle.hpp"
#include "oog/plant_io.hpp"
#include "oog/solver.hpp"
#include "oog/sysgen.hpp"

struct oog_plant {
  oog::TwoOutputPlant plant;
};

namespace {

thread_local std::string last_error;

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

oog_status to_status(oog::ErrorCode code) {
  using oog::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return OOG_ERR_INVALID_ARGUMENT;
    case ErrorCode::ParseError: return OOG_ERR_PARSE;
    case ErrorCode::IoError: return OOG_ERR_IO;
    case ErrorCode::NotStable: return OOG_ERR_NOT_STABLE;
    case ErrorCode::SingularResolvent: return OOG_ERR_SINGULAR_RESOLVENT;
    case ErrorCode::EigenFailure: return OOG_ERR_EIGEN_FAILURE;
    case ErrorCode::NotPositiveDefinite: return OOG_ERR_NOT_POSITIVE_DEFINITE;
    case ErrorCode::SingularDcal: return OOG_ERR_SINGULAR_DCAL;
    case ErrorCode::RegularizationFailed: return OOG_ERR_REGULARIZATION_FAILED;
    case ErrorCode::MaxIterationsExceeded: return OOG_ERR_MAX_ITERATIONS;
    case ErrorCode::StagnationDetected: return OOG_ERR_STAGNATION;
    case ErrorCode::GenerationFailed: return OOG_ERR_GENERATION_FAILED;
  }
  return OOG_ERR_INTERNAL;
}

oog_status fail(oog_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body and converts any exception into a status code.
template <typename F>
oog_status guarded(F&& body) {
  try {
    body();
    return OOG_OK;
  } catch (const oog::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(OOG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(OOG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(OOG_ERR_INTERNAL, "unknown exception");
  }
}

void require_arg(bool ok, const char* what) {
  if (!ok) throw oog::Error(oog::ErrorCode::InvalidArgument, what);
}

oog::Matrix read_block(const double* data, size_t rows, size_t cols) {
  const auto r = static_cast<Eigen::Index>(rows);
  const auto c = static_cast<Eigen::Index>(cols);
  if (data == nullptr) return oog::Matrix::Zero(r, c);
  return Eigen::Map<const RowMajor>(data, r, c);
}

oog::SolverConfig to_config(const oog_config* c) {
  oog::SolverConfig cfg;
  if (c == nullptr) return cfg;
  cfg.epsilon = c->epsilon;
  cfg.tol_gamma = c->tol_gamma;
  cfg.tau_im = c->tau_im;
  cfg.tau_merge = c->tau_merge;
  cfg.tau_sing = c->tau_sing;
  cfg.tau_stab = c->tau_stab;
  cfg.max_iters = c->max_iters;
  cfg.max_reg_tries = c->max_reg_tries;
  return cfg;
}

oog::GridSpec to_grid(const oog_grid* g) {
  oog::GridSpec grid;
  if (g == nullptr) return grid;
  grid.omega_min = g->omega_min;
  grid.omega_max = g->omega_max;
  grid.n_points = g->n_points;
  grid.include_zero = g->include_zero != 0;
  grid.refine = g->refine != 0;
  return grid;
}

void fill(const oog::RcoogResult& r, double epsilon, oog_result* out) {
  out->value = r.value;
  out->lower = r.lower;
  out->upper = r.upper;
  out->peak_frequency = r.peak_frequency;
  out->iterations = r.iterations;
  out->epsilon_used = epsilon;
  for (const auto& t : r.trace) out->epsilon_used = std::max(out->epsilon_used, t.epsilon);
}

const oog::TwoOutputPlant& get(const oog_plant* plant) {
  require_arg(plant != nullptr, "plant handle is NULL");
  return plant->plant;
}

}  // namespace

extern "C" {

const char* oog_version(void) { return "1.0.0"; }

const char* oog_status_name(oog_status status) {
  switch (status) {
    case OOG_OK: return "Ok";
    case OOG_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case OOG_ERR_PARSE: return "ParseError";
    case OOG_ERR_IO: return "IoError";
    case OOG_ERR_NOT_STABLE: return "NotStable";
    case OOG_ERR_SINGULAR_RESOLVENT: return "SingularResolvent";
    case OOG_ERR_EIGEN_FAILURE: return "EigenFailure";
    case OOG_ERR_NOT_POSITIVE_DEFINITE: return "NotPositiveDefinite";
    case OOG_ERR_SINGULAR_DCAL: return "SingularDcal";
    case OOG_ERR_REGULARIZATION_FAILED: return "RegularizationFailed";
    case OOG_ERR_MAX_ITERATIONS: return "MaxIterationsExceeded";
    case OOG_ERR_STAGNATION: return "StagnationDetected";
    case OOG_ERR_GENERATION_FAILED: return "GenerationFailed";
    case OOG_ERR_BUFFER_TOO_SMALL: return "BufferTooSmall";
    case OOG_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

const char* oog_last_error(void) { return last_error.c_str(); }

oog_config oog_config_default(void) {
  const oog::SolverConfig d;
  return {d.epsilon, d.tol_gamma, d.tau_im, d.tau_merge, d.tau_sing, d.tau_stab,
          d.max_iters, d.max_reg_tries};
}

oog_grid oog_grid_default(void) {
  const oog::GridSpec d;
  return {d.omega_min, d.omega_max, d.n_points, d.include_zero ? 1 : 0, d.refine ? 1 : 0};
}

oog_status oog_plant_create(size_t n, size_t m, size_t p_perf, size_t p_res, const double* A,
                            const double* B, const double* Cp, const double* Dp,
                            const double* Cr, const double* Dr, oog_plant** out) {
  return guarded([&] {
    require_arg(out != nullptr, "output pointer is NULL");
    require_arg((A || n == 0) && (B || n * m == 0) && (Cp || p_perf * n == 0) &&
                    (Cr || p_res * n == 0),
                "A, B, Cp and Cr must not be NULL");
    *out = new oog_plant{oog::TwoOutputPlant(
        read_block(A, n, n), read_block(B, n, m), read_block(Cp, p_perf, n),
        read_block(Dp, p_perf, m), read_block(Cr, p_res, n), read_block(Dr, p_res, m))};
  });
}

oog_status oog_plant_load(const char* path, oog_plant** out) {
  return guarded([&] {
    require_arg(path != nullptr && out != nullptr, "path and output pointer must not be NULL");
    *out = new oog_plant{oog::read_plant_file(path)};
  });
}

oog_status oog_plant_save(const oog_plant* plant, const char* path) {
  return guarded([&] {
    require_arg(path != nullptr, "path is NULL");
    oog::write_plant_file(path, get(plant));
  });
}

void oog_plant_free(oog_plant* plant) { delete plant; }

oog_status oog_plant_dims(const oog_plant* plant, size_t* n, size_t* m, size_t* p_perf,
                          size_t* p_res) {
  return guarded([&] {
    const auto& p = get(plant);
    if (n) *n = static_cast<size_t>(p.states());
    if (m) *m = static_cast<size_t>(p.inputs());
    if (p_perf) *p_perf = static_cast<size_t>(p.performance_outputs());
    if (p_res) *p_res = static_cast<size_t>(p.residual_outputs());
  });
}

oog_status oog_generate_random(int n_x, uint64_t seed, double pole_min, double pole_max,
                               oog_plant** out) {
  return guarded([&] {
    require_arg(out != nullptr, "output pointer is NULL");
    oog::RandomSystemSpec spec;
    spec.n_x = n_x;
    spec.seed = seed;
    spec.pole_range = {pole_min, pole_max};
    *out = new oog_plant{oog::random_stable_plant(spec)};
  });
}

oog_status oog_generate_network(int nodes, int n_edges, uint64_t seed, double weight_min,
                                double weight_max, double residual_fraction, oog_plant** out) {
  return guarded([&] {
    require_arg(out != nullptr, "output pointer is NULL");
    oog::NetworkSpec spec;
    spec.nodes = nodes;
    spec.n_edges = n_edges;
    spec.seed = seed;
    spec.weight_range = {weight_min, weight_max};
    spec.residual_fraction = residual_fraction;
    *out = new oog_plant{oog::networked_plant(spec)};
  });
}

oog_status oog_spectral_abscissa(const oog_plant* plant, double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "output pointer is NULL");
    *out = oog::spectral_abscissa(get(plant).A());
  });
}

oog_status oog_compute_rcoog(const oog_plant* plant, const oog_config* config, oog_result* out) {
  if (out == nullptr) return fail(OOG_ERR_INVALID_ARGUMENT, "output pointer is NULL");
  const oog::SolverConfig cfg = to_config(config);
  try {
    fill(oog::compute_rcoog(get(plant), cfg), cfg.epsilon, out);
    return OOG_OK;
  } catch (const oog::SolverError& e) {
    fill(e.best(), cfg.epsilon, out);
    return fail(to_status(e.code()), e.what());
  } catch (...) {
    // Re-enter the common translation with the exception still in flight.
    return guarded([] { throw; });
  }
}

oog_status oog_bounded_below(const oog_plant* plant, const oog_config* config, double gamma,
                             int* out) {
  return guarded([&] {
    require_arg(out != nullptr, "output pointer is NULL");
    *out = oog::bounded_below_gamma(get(plant), to_config(config), gamma) ? 1 : 0;
  });
}

oog_status oog_initial_lower_bound(const oog_plant* plant, double epsilon, double* gamma,
                                   double* omega) {
  return guarded([&] {
    const auto lb = oog::initial_lower_bound(get(plant), epsilon);
    if (gamma) *gamma = lb.gamma;
    if (omega) *omega = lb.omega;
  });
}

oog_status oog_max_gsv(const oog_plant* plant, double epsilon, double omega, double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "output pointer is NULL");
    *out = oog::max_gsv_at_frequency(get(plant), epsilon, omega);
  });
}

oog_status oog_grid_rcoog(const oog_plant* plant, double epsilon, const oog_grid* grid,
                          double* value, double* omega) {
  return guarded([&] {
    const auto r = oog::grid_rcoog(get(plant), epsilon, to_grid(grid));
    if (value) *value = r.value;
    if (omega) *omega = r.omega;
  });
}

oog_status oog_sigma_curve(const oog_plant* plant, double epsilon, const oog_grid* grid,
                           double* omegas, double* sigmas, size_t capacity, size_t* count) {
  bool too_small = false;
  const oog_status status = guarded([&] {
    require_arg(count != nullptr, "count pointer is NULL");
    const oog::GridSpec spec = to_grid(grid);
    spec.validate();
    const size_t needed = static_cast<size_t>(spec.n_points) + (spec.include_zero ? 1U : 0U);
    *count = needed;
    if (capacity < needed || omegas == nullptr || sigmas == nullptr) {
      too_small = true;
      return;
    }
    const auto curve = oog::sigma_curve(get(plant), epsilon, spec);
    for (size_t k = 0; k < curve.size(); ++k) {
      omegas[k] = curve[k].omega;
      sigmas[k] = curve[k].sigma;
    }
  });
  if (status == OOG_OK && too_small) {
    return fail(OOG_ERR_BUFFER_TOO_SMALL, "curve buffer smaller than the grid");
  }
  return status;
}

oog_status oog_gamma_determinant(const oog_plant* plant, double epsilon, double gamma,
                                 double omega, double* re, double* im) {
  return guarded([&] {
    const auto det = oog::gamma_determinant(get(plant), epsilon, gamma, omega);
    if (re) *re = det.real();
    if (im) *im = det.imag();
  });
}

oog_status oog_hinf_reference(const oog_plant* plant, double epsilon, const oog_grid* grid,
                              double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "output pointer is NULL");
    *out = oog::hinf_reference(get(plant).performance(), epsilon, to_grid(grid));
  });
}

}  // extern "C"
