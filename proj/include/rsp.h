#ifndef RSP_H
#define RSP_H

/* Real-eigenvalue counts of the real spherical ensemble A B^-1.
 *
 * Every call returns an rsp_status. On failure a message is kept per thread
 * and can be read with rsp_last_error_message() until the next failing call.
 * Handles are opaque and owned by the caller; destroy functions accept NULL.
 * String outputs use a caller buffer: *needed receives the length including
 * the terminating NUL, and RSP_ERR_BUFFER_TOO_SMALL is returned (buffer left
 * untouched) when capacity is short. buf may be NULL when capacity is 0. */

#include <stddef.h>
#include <stdint.h>

#if defined(RSP_BUILDING_LIBRARY)
#define RSP_API __attribute__((visibility("default")))
#else
#define RSP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rsp_status {
  RSP_OK = 0,
  RSP_ERR_ODD_N = 1,
  RSP_ERR_OUT_OF_RANGE = 2,
  RSP_ERR_PARITY = 3,
  RSP_ERR_NON_CONVERGENCE = 4,
  RSP_ERR_BAD_BRACKET = 5,
  RSP_ERR_NO_SIGN_CHANGE = 6,
  RSP_ERR_BRACKET_EXPANSION_FAILED = 7,
  RSP_ERR_DECOMPOSITION_FAILURE = 8,
  RSP_ERR_INVALID_ARGUMENT = 9,
  RSP_ERR_INTERNAL = 10,
  RSP_ERR_BUFFER_TOO_SMALL = 11
} rsp_status;

RSP_API const char* rsp_version(void);
RSP_API const char* rsp_status_string(rsp_status status);
RSP_API const char* rsp_last_error_message(void);

/* 256, or RSP_PRECISION_BITS from the environment when it is an integer >= 53 */
RSP_API unsigned rsp_default_precision_bits(void);

/* ---- exact distribution ------------------------------------------------ */

typedef struct rsp_table rsp_table;

/* All p_{N,M} for even N, M = 0, 2, ..., N; numbers at precision_bits. */
RSP_API rsp_status rsp_table_create(int n, unsigned precision_bits, rsp_table** out);
RSP_API void rsp_table_destroy(rsp_table* table);
RSP_API rsp_status rsp_table_size(const rsp_table* table, size_t* size);
/* index of M in the table; RSP_ERR_PARITY or RSP_ERR_OUT_OF_RANGE */
RSP_API rsp_status rsp_table_find(const rsp_table* table, int m, size_t* index);
RSP_API rsp_status rsp_table_entry(const rsp_table* table, size_t index, int* m, double* p,
                                   double* log_p);
/* decimal strings with `digits` significant digits, rounded to nearest */
RSP_API rsp_status rsp_table_format_p(const rsp_table* table, size_t index, int digits,
                                      char* buf, size_t capacity, size_t* needed);
RSP_API rsp_status rsp_table_format_log_p(const rsp_table* table, size_t index, int digits,
                                          char* buf, size_t capacity, size_t* needed);
/* the exact value as a polynomial in pi, e.g. "27/1024*pi^2" */
RSP_API rsp_status rsp_table_format_symbolic(const rsp_table* table, size_t index, char* buf,
                                             size_t capacity, size_t* needed);
/* exact sum of the symbolic entries equals 1; no entry of the wrong parity */
RSP_API rsp_status rsp_table_check(const rsp_table* table, int* sums_to_one, int* parity_ok);

typedef enum rsp_moment { RSP_MEAN = 0, RSP_VARIANCE = 1 } rsp_moment;

typedef struct rsp_moments rsp_moments;

/* verify != 0 also expands the table and compares exactly */
RSP_API rsp_status rsp_moments_create(int n, unsigned precision_bits, int verify,
                                      rsp_moments** out);
RSP_API void rsp_moments_destroy(rsp_moments* moments);
RSP_API rsp_status rsp_moments_values(const rsp_moments* moments, double* mean, double* variance,
                                      int* verified);
RSP_API rsp_status rsp_moments_format(const rsp_moments* moments, rsp_moment which, int digits,
                                      char* buf, size_t capacity, size_t* needed);
RSP_API rsp_status rsp_moments_format_symbolic(const rsp_moments* moments, rsp_moment which,
                                               char* buf, size_t capacity, size_t* needed);

RSP_API rsp_status rsp_crosscheck_gamma_form(int n, unsigned precision_bits,
                                             double* max_abs_difference, int* symbolic_match,
                                             int* normalization_holds);

/* log Z_N(xi), log p_{N,0} and log p_{N,N} from the product form */
RSP_API rsp_status rsp_log_generating_function(int n, double xi, unsigned precision_bits,
                                               double* out);
RSP_API rsp_status rsp_log_probability_no_real(int n, unsigned precision_bits, double* out);
RSP_API rsp_status rsp_log_probability_all_real(int n, unsigned precision_bits, double* out);

/* ---- asymptotic regimes ------------------------------------------------- */

RSP_API rsp_status rsp_ld_rate(double alpha, double* out);
RSP_API rsp_status rsp_small_alpha_rate(double alpha, double* out);

typedef struct rsp_energy_breakdown {
  double alpha;
  double theta0;
  double e_annulus;
  double e_equator;
  double e_cross;
  double total;
  double v_a_equator;
  double v_e;
} rsp_energy_breakdown;

RSP_API rsp_status rsp_energy_breakdown_eval(double alpha, rsp_energy_breakdown* out);

typedef struct rsp_clt_parameters {
  int n;
  double mu_n;
  double sigma2;
  double c;
  double window;
} rsp_clt_parameters;

RSP_API rsp_status rsp_clt_parameters_eval(int n, int use_exact_mean, rsp_clt_parameters* out);
RSP_API rsp_status rsp_clt_log_density(int n, int m, int use_exact_mean, double* out);
RSP_API rsp_status rsp_all_real_log_asymptotic(int n, double* out);
RSP_API rsp_status rsp_no_real_log_asymptotic(int n, double* out);

/* ---- intermediate deviations -------------------------------------------- */

/* mu may be +INFINITY */
RSP_API rsp_status rsp_chi(double mu, double tol, double* out);
RSP_API rsp_status rsp_chi_derivative(double mu, double tol, double* out);

typedef struct rsp_rate_evaluation {
  double x;
  double mu_star;
  double exponent;
  double tol;
  double bracket_lo;
  double bracket_hi;
  uint64_t quadrature_evals;
} rsp_rate_evaluation;

RSP_API rsp_status rsp_intermediate_rate(double x, double tol, rsp_rate_evaluation* out);
RSP_API rsp_status rsp_tail_exponents(double x, double* left, double* right);
RSP_API rsp_status rsp_scaled_log_z(int n, double xi, unsigned precision_bits, double tol,
                                    double* finite_n, double* limit);

/* ---- Monte Carlo -------------------------------------------------------- */

typedef struct rsp_empirical rsp_empirical;

typedef struct rsp_empirical_summary {
  int n;
  uint64_t trials;
  uint64_t seed;
  uint64_t discarded;
  double mean_hat;
  double var_hat;
  size_t rows; /* one per M of the parity of N, 0 <= M <= N */
} rsp_empirical_summary;

typedef struct rsp_empirical_row {
  int m;
  uint64_t count;
  double phat;
  double std_error;
} rsp_empirical_row;

/* threads = 0 uses the hardware concurrency; the result does not depend on it */
RSP_API rsp_status rsp_mc_estimate(int n, uint64_t trials, uint64_t seed, unsigned threads,
                                   rsp_empirical** out);
RSP_API void rsp_empirical_destroy(rsp_empirical* e);
RSP_API rsp_status rsp_empirical_get_summary(const rsp_empirical* e, rsp_empirical_summary* out);
RSP_API rsp_status rsp_empirical_get_row(const rsp_empirical* e, size_t index,
                                         rsp_empirical_row* out);

typedef struct rsp_comparison rsp_comparison;

typedef struct rsp_comparison_summary {
  int n;
  uint64_t trials;
  uint64_t seed;
  uint64_t discarded;
  double tv_distance;
  double max_abs_z;
  double exact_mean;
  double exact_variance;
  double mean_hat;
  double var_hat;
  double mean_z;
  double ratio_exact;     /* variance / mean */
  double ratio_empirical;
  size_t rows;
} rsp_comparison_summary;

typedef struct rsp_comparison_row {
  int m;
  double p_exact;
  double phat;
  double std_error;
  double z;
} rsp_comparison_row;

RSP_API rsp_status rsp_compare(int n, uint64_t trials, uint64_t seed, unsigned precision_bits,
                               unsigned threads, rsp_comparison** out);
RSP_API void rsp_comparison_destroy(rsp_comparison* c);
RSP_API rsp_status rsp_comparison_get_summary(const rsp_comparison* c,
                                              rsp_comparison_summary* out);
RSP_API rsp_status rsp_comparison_get_row(const rsp_comparison* c, size_t index,
                                          rsp_comparison_row* out);

#ifdef __cplusplus
}
#endif

#endif
