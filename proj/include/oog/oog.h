/*
 * C interface to the output-to-output gain library.
 *
 * Plants are opaque handles created by oog_plant_create / oog_plant_load /
 * the generators and released with oog_plant_free. Every fallible call
 * returns an oog_status; on failure oog_last_error() describes the problem
 * (the message is per thread and valid until the next failing call on that
 * thread). Matrices cross the boundary row-major.
 */
#ifndef OOG_OOG_H
#define OOG_OOG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(OOG_BUILDING_LIBRARY)
#    define OOG_API __declspec(dllexport)
#  else
#    define OOG_API __declspec(dllimport)
#  endif
#else
#  define OOG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum oog_status {
  OOG_OK = 0,
  OOG_ERR_INVALID_ARGUMENT = 1,
  OOG_ERR_PARSE = 2,
  OOG_ERR_IO = 3,
  OOG_ERR_NOT_STABLE = 4,
  OOG_ERR_SINGULAR_RESOLVENT = 5,
  OOG_ERR_EIGEN_FAILURE = 6,
  OOG_ERR_NOT_POSITIVE_DEFINITE = 7,
  OOG_ERR_SINGULAR_DCAL = 8,
  OOG_ERR_REGULARIZATION_FAILED = 9,
  OOG_ERR_MAX_ITERATIONS = 10,
  OOG_ERR_STAGNATION = 11,
  OOG_ERR_GENERATION_FAILED = 12,
  OOG_ERR_BUFFER_TOO_SMALL = 13,
  OOG_ERR_INTERNAL = 14
} oog_status;

typedef struct oog_plant oog_plant;

typedef struct oog_config {
  double epsilon;   /* regularization, > 0 */
  double tol_gamma; /* relative tolerance of the returned gain */
  double tau_im;    /* imaginary-eigenvalue threshold (relative) */
  double tau_merge; /* frequency merge threshold (relative) */
  double tau_sing;  /* singularity threshold for Dcal */
  double tau_stab;  /* stability margin factor on (1 + ||A||_F) */
  int max_iters;
  int max_reg_tries;
} oog_config;

typedef struct oog_result {
  double value;          /* midpoint of [lower, upper] */
  double lower;
  double upper;
  double peak_frequency; /* +inf when the peak is the feedthrough term */
  double epsilon_used;   /* largest regularization any Hamiltonian used */
  int iterations;
} oog_result;

typedef struct oog_grid {
  double omega_min;
  double omega_max;
  int n_points;
  int include_zero; /* nonzero: also evaluate w = 0 */
  int refine;       /* nonzero: resample around the argmax */
} oog_grid;

OOG_API const char* oog_version(void);
OOG_API const char* oog_status_name(oog_status status);
OOG_API const char* oog_last_error(void);

OOG_API oog_config oog_config_default(void);
OOG_API oog_grid oog_grid_default(void);

/* Dp and Dr may be NULL (zero feedthrough). */
OOG_API oog_status oog_plant_create(size_t n, size_t m, size_t p_perf, size_t p_res,
                                    const double* A, const double* B, const double* Cp,
                                    const double* Dp, const double* Cr, const double* Dr,
                                    oog_plant** out);
OOG_API oog_status oog_plant_load(const char* path, oog_plant** out);
OOG_API oog_status oog_plant_save(const oog_plant* plant, const char* path);
OOG_API void oog_plant_free(oog_plant* plant);
OOG_API oog_status oog_plant_dims(const oog_plant* plant, size_t* n, size_t* m,
                                  size_t* p_perf, size_t* p_res);

OOG_API oog_status oog_generate_random(int n_x, uint64_t seed, double pole_min,
                                       double pole_max, oog_plant** out);
OOG_API oog_status oog_generate_network(int nodes, int n_edges, uint64_t seed,
                                        double weight_min, double weight_max,
                                        double residual_fraction, oog_plant** out);

OOG_API oog_status oog_spectral_abscissa(const oog_plant* plant, double* out);

/* On OOG_ERR_MAX_ITERATIONS and OOG_ERR_STAGNATION, *out still receives the
 * best (uncertified) interval. */
OOG_API oog_status oog_compute_rcoog(const oog_plant* plant, const oog_config* config,
                                     oog_result* out);
OOG_API oog_status oog_bounded_below(const oog_plant* plant, const oog_config* config,
                                     double gamma, int* out);
OOG_API oog_status oog_initial_lower_bound(const oog_plant* plant, double epsilon,
                                           double* gamma, double* omega);

OOG_API oog_status oog_max_gsv(const oog_plant* plant, double epsilon, double omega,
                               double* out);
OOG_API oog_status oog_grid_rcoog(const oog_plant* plant, double epsilon,
                                  const oog_grid* grid, double* value, double* omega);
/* Two-call idiom: *count receives the number of points; returns
 * OOG_ERR_BUFFER_TOO_SMALL when capacity < *count. Failed points are NaN. */
OOG_API oog_status oog_sigma_curve(const oog_plant* plant, double epsilon,
                                   const oog_grid* grid, double* omegas, double* sigmas,
                                   size_t capacity, size_t* count);
OOG_API oog_status oog_gamma_determinant(const oog_plant* plant, double epsilon, double gamma,
                                         double omega, double* re, double* im);
/* Grid H-infinity norm of the performance channel (A, B, Cp, Dp). */
OOG_API oog_status oog_hinf_reference(const oog_plant* plant, double epsilon,
                                      const oog_grid* grid, double* out);

#ifdef __cplusplus
}
#endif

#endif /* OOG_OOG_H */
