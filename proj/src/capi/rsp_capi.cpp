#define RSP_BUILDING_LIBRARY
#include "rsp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "core/asymptotics.hpp"
#include "core/errors.hpp"
#include "core/exact_dist.hpp"
#include "core/intermediate.hpp"
#include "core/montecarlo.hpp"

struct rsp_table {
  rsp::ProbabilityTable table;
};

struct rsp_moments {
  rsp::ExactMoments moments;
};

struct rsp_empirical {
  rsp::EmpiricalDistribution dist;
};

struct rsp_comparison {
  rsp::ExactEmpiricalReport report;
};

namespace {

thread_local std::string g_last_error;

rsp_status fail(rsp_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class F>
rsp_status guard(F&& body) {
  try {
    body();
    return RSP_OK;
  } catch (const rsp::Error& e) {
    return fail(static_cast<rsp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RSP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RSP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RSP_ERR_INTERNAL, "unknown failure");
  }
}

#define RSP_REQUIRE(cond)                                          \
  do {                                                             \
    if (!(cond)) return fail(RSP_ERR_INVALID_ARGUMENT, #cond " is required"); \
  } while (0)

rsp_status copy_out(const std::string& s, char* buf, size_t capacity, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (capacity < s.size() + 1) {
    return fail(RSP_ERR_BUFFER_TOO_SMALL, "output buffer too small");
  }
  RSP_REQUIRE(buf != nullptr);
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return RSP_OK;
}

rsp_status check_digits(int digits) {
  if (digits < 1 || digits > 100000) return fail(RSP_ERR_OUT_OF_RANGE, "digits must be in [1, 100000]");
  return RSP_OK;
}

rsp_status check_index(size_t index, size_t size) {
  if (index >= size) return fail(RSP_ERR_OUT_OF_RANGE, "row index out of range");
  return RSP_OK;
}

}  // namespace

extern "C" {

const char* rsp_version(void) { return RSP_VERSION_STRING; }

const char* rsp_status_string(rsp_status status) {
  switch (status) {
    case RSP_OK: return "OK";
    case RSP_ERR_BUFFER_TOO_SMALL: return "BufferTooSmall";
    default: break;
  }
  if (status >= RSP_ERR_ODD_N && status <= RSP_ERR_INTERNAL) {
    return rsp::to_string(static_cast<rsp::Errc>(status));
  }
  return "Unknown";
}

const char* rsp_last_error_message(void) { return g_last_error.c_str(); }

unsigned rsp_default_precision_bits(void) {
  if (const char* env = std::getenv("RSP_PRECISION_BITS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 53 && v <= 1u << 24) return static_cast<unsigned>(v);
  }
  return rsp::kDefaultPrecisionBits;
}

rsp_status rsp_table_create(int n, unsigned precision_bits, rsp_table** out) {
  RSP_REQUIRE(out != nullptr);
  *out = nullptr;
  return guard([&] { *out = new rsp_table{rsp::probability_table(n, precision_bits)}; });
}

void rsp_table_destroy(rsp_table* table) { delete table; }

rsp_status rsp_table_size(const rsp_table* table, size_t* size) {
  RSP_REQUIRE(table && size);
  *size = table->table.entries.size();
  return RSP_OK;
}

rsp_status rsp_table_find(const rsp_table* table, int m, size_t* index) {
  RSP_REQUIRE(table && index);
  return guard([&] {
    table->table.at(m);
    *index = static_cast<size_t>(m / 2);
  });
}

rsp_status rsp_table_entry(const rsp_table* table, size_t index, int* m, double* p,
                           double* log_p) {
  RSP_REQUIRE(table);
  if (rsp_status s = check_index(index, table->table.entries.size())) return s;
  return guard([&] {
    const rsp::ProbabilityEntry& e = table->table.entries[index];
    if (m) *m = e.m;
    if (p) *p = e.p_numeric.to_double();
    if (log_p) *log_p = e.p_numeric.log().to_double();
  });
}

rsp_status rsp_table_format_p(const rsp_table* table, size_t index, int digits, char* buf,
                              size_t capacity, size_t* needed) {
  RSP_REQUIRE(table);
  if (rsp_status s = check_index(index, table->table.entries.size())) return s;
  if (rsp_status s = check_digits(digits)) return s;
  std::string text;
  if (rsp_status s = guard([&] { text = table->table.entries[index].p_numeric.to_string(digits); }))
    return s;
  return copy_out(text, buf, capacity, needed);
}

rsp_status rsp_table_format_log_p(const rsp_table* table, size_t index, int digits, char* buf,
                                  size_t capacity, size_t* needed) {
  RSP_REQUIRE(table);
  if (rsp_status s = check_index(index, table->table.entries.size())) return s;
  if (rsp_status s = check_digits(digits)) return s;
  std::string text;
  if (rsp_status s = guard(
          [&] { text = table->table.entries[index].p_numeric.log().to_string(digits); }))
    return s;
  return copy_out(text, buf, capacity, needed);
}

rsp_status rsp_table_format_symbolic(const rsp_table* table, size_t index, char* buf,
                                     size_t capacity, size_t* needed) {
  RSP_REQUIRE(table);
  if (rsp_status s = check_index(index, table->table.entries.size())) return s;
  std::string text;
  if (rsp_status s = guard([&] { text = table->table.entries[index].p_symbolic.to_string(); }))
    return s;
  return copy_out(text, buf, capacity, needed);
}

rsp_status rsp_table_check(const rsp_table* table, int* sums_to_one, int* parity_ok) {
  RSP_REQUIRE(table);
  return guard([&] {
    const int n = table->table.n;
    rsp::PiPolynomial total;
    bool parity = true;
    for (const rsp::ProbabilityEntry& e : table->table.entries) {
      total += e.p_symbolic;
      parity = parity && e.m >= 0 && e.m <= n && (n - e.m) % 2 == 0;
    }
    parity = parity && table->table.entries.size() == static_cast<size_t>(n / 2 + 1);
    if (sums_to_one) *sums_to_one = total == rsp::PiPolynomial(1);
    if (parity_ok) *parity_ok = parity;
  });
}

rsp_status rsp_moments_create(int n, unsigned precision_bits, int verify, rsp_moments** out) {
  RSP_REQUIRE(out != nullptr);
  *out = nullptr;
  return guard(
      [&] { *out = new rsp_moments{rsp::exact_moments(n, precision_bits, verify != 0)}; });
}

void rsp_moments_destroy(rsp_moments* moments) { delete moments; }

rsp_status rsp_moments_values(const rsp_moments* moments, double* mean, double* variance,
                              int* verified) {
  RSP_REQUIRE(moments);
  if (mean) *mean = moments->moments.mean.to_double();
  if (variance) *variance = moments->moments.variance.to_double();
  if (verified) *verified = moments->moments.verified_against_table;
  return RSP_OK;
}

rsp_status rsp_moments_format(const rsp_moments* moments, rsp_moment which, int digits,
                              char* buf, size_t capacity, size_t* needed) {
  RSP_REQUIRE(moments);
  RSP_REQUIRE(which == RSP_MEAN || which == RSP_VARIANCE);
  if (rsp_status s = check_digits(digits)) return s;
  const auto& m = moments->moments;
  std::string text;
  if (rsp_status s = guard([&] {
        text = (which == RSP_MEAN ? m.mean : m.variance).to_string(digits);
      }))
    return s;
  return copy_out(text, buf, capacity, needed);
}

rsp_status rsp_moments_format_symbolic(const rsp_moments* moments, rsp_moment which, char* buf,
                                       size_t capacity, size_t* needed) {
  RSP_REQUIRE(moments);
  RSP_REQUIRE(which == RSP_MEAN || which == RSP_VARIANCE);
  const auto& m = moments->moments;
  std::string text;
  if (rsp_status s = guard([&] {
        text = (which == RSP_MEAN ? m.mean_symbolic : m.variance_symbolic).to_string();
      }))
    return s;
  return copy_out(text, buf, capacity, needed);
}

rsp_status rsp_crosscheck_gamma_form(int n, unsigned precision_bits, double* max_abs_difference,
                                     int* symbolic_match, int* normalization_holds) {
  return guard([&] {
    const rsp::GammaCrosscheck c = rsp::crosscheck_gamma_form(n, precision_bits);
    if (max_abs_difference) *max_abs_difference = c.max_abs_difference;
    if (symbolic_match) *symbolic_match = c.symbolic_match;
    if (normalization_holds) *normalization_holds = c.normalization_holds;
  });
}

rsp_status rsp_log_generating_function(int n, double xi, unsigned precision_bits, double* out) {
  RSP_REQUIRE(out);
  return guard([&] {
    rsp::require_even_n(n);
    *out = rsp::log_generating_function(n, xi, precision_bits).to_double();
  });
}

rsp_status rsp_log_probability_no_real(int n, unsigned precision_bits, double* out) {
  RSP_REQUIRE(out);
  return guard([&] { *out = rsp::log_probability_no_real(n, precision_bits).to_double(); });
}

rsp_status rsp_log_probability_all_real(int n, unsigned precision_bits, double* out) {
  RSP_REQUIRE(out);
  return guard([&] { *out = rsp::log_probability_all_real(n, precision_bits).to_double(); });
}

rsp_status rsp_ld_rate(double alpha, double* out) {
  RSP_REQUIRE(out);
  return guard([&] { *out = rsp::ld_rate(alpha); });
}

rsp_status rsp_small_alpha_rate(double alpha, double* out) {
  RSP_REQUIRE(out);
  return guard([&] { *out = rsp::small_alpha_rate(alpha); });
}

rsp_status rsp_energy_breakdown_eval(double alpha, rsp_energy_breakdown* out) {
  RSP_REQUIRE(out);
  return guard([&] {
    const rsp::EnergyBreakdown e = rsp::energy_breakdown(alpha);
    *out = rsp_energy_breakdown{e.alpha,   e.theta0, e.e_annulus,   e.e_equator,
                                e.e_cross, e.total,  e.v_a_equator, e.v_e};
  });
}

rsp_status rsp_clt_parameters_eval(int n, int use_exact_mean, rsp_clt_parameters* out) {
  RSP_REQUIRE(out);
  return guard([&] {
    const rsp::CltParameters p = rsp::clt_parameters(n, use_exact_mean != 0);
    *out = rsp_clt_parameters{p.n, p.mu_n, p.sigma2, p.c, p.window};
  });
}

rsp_status rsp_clt_log_density(int n, int m, int use_exact_mean, double* out) {
  RSP_REQUIRE(out);
  return guard([&] { *out = rsp::clt_log_density(n, m, use_exact_mean != 0); });
}

rsp_status rsp_all_real_log_asymptotic(int n, double* out) {
  RSP_REQUIRE(out);
  return guard([&] { *out = rsp::all_real_log_asymptotic(n); });
}

rsp_status rsp_no_real_log_asymptotic(int n, double* out) {
  RSP_REQUIRE(out);
  return guard([&] { *out = rsp::no_real_log_asymptotic(n); });
}

rsp_status rsp_chi(double mu, double tol, double* out) {
  RSP_REQUIRE(out);
  return guard([&] { *out = rsp::chi(mu, tol); });
}

rsp_status rsp_chi_derivative(double mu, double tol, double* out) {
  RSP_REQUIRE(out);
  return guard([&] { *out = rsp::chi_derivative(mu, tol); });
}

rsp_status rsp_intermediate_rate(double x, double tol, rsp_rate_evaluation* out) {
  RSP_REQUIRE(out);
  return guard([&] {
    const rsp::RateEvaluation r = rsp::intermediate_rate(x, tol);
    *out = rsp_rate_evaluation{r.x,          r.mu_star,    r.exponent, r.tol,
                               r.bracket_lo, r.bracket_hi, r.quadrature_evals};
  });
}

rsp_status rsp_tail_exponents(double x, double* left, double* right) {
  return guard([&] {
    const rsp::TailExponents t = rsp::tail_exponents(x);
    if (left) *left = t.left;
    if (right) *right = t.right;
  });
}

rsp_status rsp_scaled_log_z(int n, double xi, unsigned precision_bits, double tol,
                            double* finite_n, double* limit) {
  return guard([&] {
    const rsp::ScaledLogZ z = rsp::scaled_log_Z(n, xi, precision_bits, tol);
    if (finite_n) *finite_n = z.finite_n;
    if (limit) *limit = z.limit;
  });
}

rsp_status rsp_mc_estimate(int n, uint64_t trials, uint64_t seed, unsigned threads,
                           rsp_empirical** out) {
  RSP_REQUIRE(out != nullptr);
  *out = nullptr;
  return guard(
      [&] { *out = new rsp_empirical{rsp::estimate_distribution(n, trials, seed, threads)}; });
}

void rsp_empirical_destroy(rsp_empirical* e) { delete e; }

rsp_status rsp_empirical_get_summary(const rsp_empirical* e, rsp_empirical_summary* out) {
  RSP_REQUIRE(e && out);
  const auto& d = e->dist;
  *out = rsp_empirical_summary{d.n,        d.trials,  d.seed,
                               d.discarded, d.mean_hat, d.var_hat,
                               static_cast<size_t>(d.n / 2 + 1)};
  return RSP_OK;
}

rsp_status rsp_empirical_get_row(const rsp_empirical* e, size_t index, rsp_empirical_row* out) {
  RSP_REQUIRE(e && out);
  const auto& d = e->dist;
  if (rsp_status s = check_index(index, static_cast<size_t>(d.n / 2 + 1))) return s;
  const int m = d.n % 2 + 2 * static_cast<int>(index);
  rsp_empirical_row row{m, 0, 0.0, 0.0};
  if (auto it = d.counts.find(m); it != d.counts.end()) {
    row.count = it->second;
    row.phat = d.phat.at(m);
    row.std_error = d.std_error.at(m);
  }
  *out = row;
  return RSP_OK;
}

rsp_status rsp_compare(int n, uint64_t trials, uint64_t seed, unsigned precision_bits,
                       unsigned threads, rsp_comparison** out) {
  RSP_REQUIRE(out != nullptr);
  *out = nullptr;
  return guard([&] {
    *out = new rsp_comparison{
        rsp::compare_exact_empirical(n, trials, seed, precision_bits, threads)};
  });
}

void rsp_comparison_destroy(rsp_comparison* c) { delete c; }

rsp_status rsp_comparison_get_summary(const rsp_comparison* c, rsp_comparison_summary* out) {
  RSP_REQUIRE(c && out);
  const auto& r = c->report;
  const auto& d = r.empirical;
  *out = rsp_comparison_summary{d.n,           d.trials,         d.seed,       d.discarded,
                                r.tv_distance, r.max_abs_z,      r.exact_mean, r.exact_variance,
                                d.mean_hat,    d.var_hat,        r.mean_z,     r.ratio_exact,
                                r.ratio_empirical, r.rows.size()};
  return RSP_OK;
}

rsp_status rsp_comparison_get_row(const rsp_comparison* c, size_t index, rsp_comparison_row* out) {
  RSP_REQUIRE(c && out);
  if (rsp_status s = check_index(index, c->report.rows.size())) return s;
  const rsp::ComparisonRow& r = c->report.rows[index];
  *out = rsp_comparison_row{r.m, r.p_exact, r.phat, r.std_error, r.z};
  return RSP_OK;
}

}  // extern "C"
