#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "payload.hpp"
#include "rsp.h"

namespace rsp_cli {

namespace {

struct Failure : std::runtime_error {
  Failure(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
  int exit_code;
};

int exit_code_for(rsp_status s) {
  switch (s) {
    case RSP_ERR_ODD_N:
    case RSP_ERR_OUT_OF_RANGE:
    case RSP_ERR_PARITY:
    case RSP_ERR_INVALID_ARGUMENT:
      return kExitValidation;
    case RSP_ERR_NON_CONVERGENCE:
    case RSP_ERR_BAD_BRACKET:
    case RSP_ERR_NO_SIGN_CHANGE:
    case RSP_ERR_BRACKET_EXPANSION_FAILED:
    case RSP_ERR_DECOMPOSITION_FAILURE:
      return kExitNonConvergence;
    default:
      return kExitFailure;
  }
}

void check(rsp_status s) {
  if (s != RSP_OK) {
    throw Failure(exit_code_for(s),
                  std::string(rsp_status_string(s)) + ": " + rsp_last_error_message());
  }
}

void invalid(const std::string& what) { throw Failure(kExitValidation, what); }

template <class Fill>
std::string fetch_string(Fill fill) {
  size_t needed = 0;
  const rsp_status probe = fill(nullptr, 0, &needed);
  if (probe != RSP_ERR_BUFFER_TOO_SMALL) check(probe);
  std::string s(needed, '\0');
  check(fill(s.data(), s.size(), &needed));
  s.resize(needed - 1);
  return s;
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using TablePtr = std::unique_ptr<rsp_table, Deleter<rsp_table, rsp_table_destroy>>;
using MomentsPtr = std::unique_ptr<rsp_moments, Deleter<rsp_moments, rsp_moments_destroy>>;
using EmpiricalPtr =
    std::unique_ptr<rsp_empirical, Deleter<rsp_empirical, rsp_empirical_destroy>>;
using ComparisonPtr =
    std::unique_ptr<rsp_comparison, Deleter<rsp_comparison, rsp_comparison_destroy>>;

// shortest string that reads back to the same double
std::string echo(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

struct Config {
  int n = 0;
  std::vector<int> n_list{40, 80, 160, 320};
  int m = 0;
  double alpha = 0;
  double x = 0;
  double x_min = 0.1, x_max = 4.0;
  int x_steps = 40;
  double xi = 0.5;
  double width = 4.0;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  unsigned precision = 256;
  double tol = 1e-10;
  int digits = 20;
  std::string format = "json";
  std::string output;
  bool exact_mean = false;
  bool no_verify = false;

  // double values never carry more than 17 meaningful digits
  std::string num(double v) const {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", std::min(digits, 17), v);
    return buf;
  }
};

struct Subcommands {
  CLI::App* exact;
  CLI::App* moments;
  CLI::App* ldp;
  CLI::App* idp;
  CLI::App* clt;
  CLI::App* asym;
  CLI::App* propcheck;
  CLI::App* mc;
  CLI::App* compare;
};

void require_even(int n) {
  if (n < 2 || n % 2 != 0) invalid("N must be even and at least 2, got " + std::to_string(n));
}

void require_m(int n, int m) {
  if (m < 0 || m > n) invalid("M must lie in [0, N], got " + std::to_string(m));
  if ((n - m) % 2 != 0) invalid("M must have the parity of N (complex eigenvalues pair up)");
}

void base_payload(Payload& p, const Config& c, const std::string& command) {
  p.command = command;
  p.version = rsp_version();
  p.precision_bits = std::to_string(c.precision);
  p.tol = echo(c.tol);
  p.digits = std::to_string(c.digits);
}

void do_exact(const Config& c, bool has_m, Payload& p) {
  require_even(c.n);
  if (has_m) require_m(c.n, c.m);
  p.inputs.emplace_back("n", std::to_string(c.n));
  if (has_m) p.inputs.emplace_back("m", std::to_string(c.m));

  rsp_table* raw = nullptr;
  check(rsp_table_create(c.n, c.precision, &raw));
  TablePtr table(raw);
  size_t size = 0;
  check(rsp_table_size(table.get(), &size));
  size_t first = 0, last = size;
  if (has_m) {
    check(rsp_table_find(table.get(), c.m, &first));
    last = first + 1;
  }
  Table& t = p.table("probability", {"m", "p", "log_p", "symbolic"});
  for (size_t i = first; i < last; ++i) {
    int m = 0;
    check(rsp_table_entry(table.get(), i, &m, nullptr, nullptr));
    const rsp_table* h = table.get();
    t.add({std::to_string(m),
           fetch_string([&](char* b, size_t cap, size_t* need) {
             return rsp_table_format_p(h, i, c.digits, b, cap, need);
           }),
           fetch_string([&](char* b, size_t cap, size_t* need) {
             return rsp_table_format_log_p(h, i, c.digits, b, cap, need);
           }),
           fetch_string([&](char* b, size_t cap, size_t* need) {
             return rsp_table_format_symbolic(h, i, b, cap, need);
           })});
  }
  int sums_to_one = 0, parity_ok = 0;
  check(rsp_table_check(table.get(), &sums_to_one, &parity_ok));
  p.table("checks", {"sums_to_one", "parity_ok"})
      .add({sums_to_one ? "true" : "false", parity_ok ? "true" : "false"});
}

void do_moments(const Config& c, Payload& p) {
  require_even(c.n);
  p.inputs.emplace_back("n", std::to_string(c.n));
  p.inputs.emplace_back("verify", c.no_verify ? "false" : "true");
  rsp_moments* raw = nullptr;
  check(rsp_moments_create(c.n, c.precision, c.no_verify ? 0 : 1, &raw));
  MomentsPtr m(raw);
  int verified = 0;
  check(rsp_moments_values(m.get(), nullptr, nullptr, &verified));
  Table& t = p.table("moments", {"quantity", "symbolic", "value", "verified"});
  for (auto [name, which] : {std::pair{"mean", RSP_MEAN}, std::pair{"variance", RSP_VARIANCE}}) {
    const rsp_moments* h = m.get();
    t.add({name,
           fetch_string([&](char* b, size_t cap, size_t* need) {
             return rsp_moments_format_symbolic(h, which, b, cap, need);
           }),
           fetch_string([&](char* b, size_t cap, size_t* need) {
             return rsp_moments_format(h, which, c.digits, b, cap, need);
           }),
           verified ? "true" : "false"});
  }
}

void do_ldp(const Config& c, bool has_n, Payload& p) {
  if (!(c.alpha > 0 && c.alpha <= 1)) invalid("alpha must lie in (0, 1], got " + echo(c.alpha));
  if (has_n && c.n < 1) invalid("N must be positive");
  p.inputs.emplace_back("alpha", echo(c.alpha));
  if (has_n) p.inputs.emplace_back("n", std::to_string(c.n));
  double rate = 0, small = 0;
  check(rsp_ld_rate(c.alpha, &rate));
  check(rsp_small_alpha_rate(c.alpha, &small));
  if (has_n) {
    const double nn = c.n;
    p.table("rate", {"alpha", "rate", "small_alpha_rate", "n", "log_p"})
        .add({echo(c.alpha), c.num(rate), c.num(small), std::to_string(c.n),
              c.num(-nn * nn * rate)});
  } else {
    p.table("rate", {"alpha", "rate", "small_alpha_rate"})
        .add({echo(c.alpha), c.num(rate), c.num(small)});
  }
  rsp_energy_breakdown e{};
  check(rsp_energy_breakdown_eval(c.alpha, &e));
  Table& t = p.table("energy", {"component", "value"});
  t.add({"theta0", c.num(e.theta0)});
  t.add({"e_annulus", c.num(e.e_annulus)});
  t.add({"e_equator", c.num(e.e_equator)});
  t.add({"e_cross", c.num(e.e_cross)});
  t.add({"total", c.num(e.total)});
  t.add({"v_a_equator", c.num(e.v_a_equator)});
  t.add({"v_e", c.num(e.v_e)});
}

void do_idp(const Config& c, bool has_x, Payload& p) {
  std::vector<double> xs;
  if (has_x) {
    if (!(c.x > 0) || !std::isfinite(c.x)) invalid("x must be positive, got " + echo(c.x));
    xs.push_back(c.x);
    p.inputs.emplace_back("x", echo(c.x));
  } else {
    if (!(c.x_min > 0) || !(c.x_max >= c.x_min) || c.x_steps < 1) {
      invalid("grid needs 0 < x-min <= x-max and x-steps >= 1");
    }
    for (int k = 0; k <= c.x_steps; ++k) {
      xs.push_back(c.x_steps == 0 ? c.x_min
                                  : c.x_min + (c.x_max - c.x_min) * k / c.x_steps);
    }
    p.inputs.emplace_back("x_min", echo(c.x_min));
    p.inputs.emplace_back("x_max", echo(c.x_max));
    p.inputs.emplace_back("x_steps", std::to_string(c.x_steps));
  }
  Table& rate = p.table("rate", {"x", "mu_star", "exponent", "left_tail", "right_tail",
                                 "bracket_lo", "bracket_hi", "quadrature_evals"});
  std::vector<std::vector<std::string>> sweep;
  for (double x : xs) {
    rsp_rate_evaluation r{};
    check(rsp_intermediate_rate(x, c.tol, &r));
    double left = 0, right = 0;
    check(rsp_tail_exponents(x, &left, &right));
    rate.add({echo(x), c.num(r.mu_star), c.num(r.exponent), c.num(left), c.num(right),
              c.num(r.bracket_lo), c.num(r.bracket_hi), std::to_string(r.quadrature_evals)});
    sweep.push_back({echo(x), "exponent", c.num(r.exponent)});
    sweep.push_back({echo(x), "left_tail", c.num(left)});
    sweep.push_back({echo(x), "right_tail", c.num(right)});
  }
  if (!has_x) p.table("sweep", {"x", "regime", "value"}).rows = std::move(sweep);
}

void do_clt(const Config& c, bool has_m, Payload& p) {
  if (c.n < 2) invalid("N must be at least 2");
  if (c.exact_mean) require_even(c.n);
  if (has_m) require_m(c.n, c.m);
  if (!(c.width > 0)) invalid("width must be positive");
  p.inputs.emplace_back("n", std::to_string(c.n));
  if (has_m) p.inputs.emplace_back("m", std::to_string(c.m));
  else p.inputs.emplace_back("width", echo(c.width));
  p.inputs.emplace_back("exact_mean", c.exact_mean ? "true" : "false");

  rsp_clt_parameters prm{};
  check(rsp_clt_parameters_eval(c.n, c.exact_mean, &prm));
  p.table("parameters", {"n", "mu_n", "sigma2", "c", "window"})
      .add({std::to_string(c.n), c.num(prm.mu_n), c.num(prm.sigma2), c.num(prm.c),
            c.num(prm.window)});

  int lo = c.m, hi = c.m;
  if (!has_m) {
    const double half = c.width * std::sqrt(prm.sigma2);
    lo = std::max(0, static_cast<int>(std::floor(prm.mu_n - half)));
    hi = std::min(c.n, static_cast<int>(std::ceil(prm.mu_n + half)));
    if ((c.n - lo) % 2 != 0) ++lo;
  }
  Table& t = p.table("clt", {"m", "alpha", "log_density", "log_lattice_p"});
  for (int m = lo; m <= hi; m += 2) {
    double d = 0;
    check(rsp_clt_log_density(c.n, m, c.exact_mean, &d));
    t.add({std::to_string(m), c.num(static_cast<double>(m) / c.n), c.num(d),
           c.num(d + std::log(2.0))});
  }
}

void do_asym(const Config& c, Payload& p) {
  if (c.n < 2) invalid("N must be at least 2");
  p.inputs.emplace_back("n", std::to_string(c.n));
  double all_real = 0, no_real = 0;
  check(rsp_all_real_log_asymptotic(c.n, &all_real));
  check(rsp_no_real_log_asymptotic(c.n, &no_real));
  Table& t = p.table("asymptotes", {"quantity", "asymptotic", "exact", "difference"});
  if (c.n % 2 == 0) {
    double e_all = 0, e_none = 0;
    check(rsp_log_probability_all_real(c.n, c.precision, &e_all));
    check(rsp_log_probability_no_real(c.n, c.precision, &e_none));
    t.add({"log_p_all_real", c.num(all_real), c.num(e_all), c.num(e_all - all_real)});
    t.add({"log_p_no_real", c.num(no_real), c.num(e_none), c.num(e_none - no_real)});
  } else {
    // exact values exist only for even N here
    t.add({"log_p_all_real", c.num(all_real), "", ""});
    t.add({"log_p_no_real", c.num(no_real), "", ""});
  }
}

void do_propcheck(const Config& c, Payload& p) {
  if (!(c.xi > 0) || !std::isfinite(c.xi)) invalid("xi must be positive, got " + echo(c.xi));
  for (int n : c.n_list) require_even(n);
  std::string ns;
  for (int n : c.n_list) ns += (ns.empty() ? "" : " ") + std::to_string(n);
  p.inputs.emplace_back("n", ns);
  p.inputs.emplace_back("xi", echo(c.xi));
  Table& t = p.table("convergence", {"n", "xi", "finite_n", "limit", "abs_difference"});
  for (int n : c.n_list) {
    double fin = 0, lim = 0;
    check(rsp_scaled_log_z(n, c.xi, c.precision, c.tol, &fin, &lim));
    t.add({std::to_string(n), echo(c.xi), c.num(fin), c.num(lim), c.num(std::abs(fin - lim))});
  }
}

void do_mc(const Config& c, Payload& p) {
  if (c.n < 1) invalid("N must be at least 1");
  if (c.trials < 1) invalid("trials must be at least 1");
  p.inputs.emplace_back("n", std::to_string(c.n));
  p.inputs.emplace_back("trials", std::to_string(c.trials));
  p.inputs.emplace_back("seed", std::to_string(c.seed));
  p.seed = std::to_string(c.seed);
  rsp_empirical* raw = nullptr;
  check(rsp_mc_estimate(c.n, c.trials, c.seed, c.threads, &raw));
  EmpiricalPtr e(raw);
  rsp_empirical_summary s{};
  check(rsp_empirical_get_summary(e.get(), &s));
  p.table("summary", {"n", "trials", "seed", "discarded", "mean_hat", "var_hat"})
      .add({std::to_string(s.n), std::to_string(s.trials), std::to_string(s.seed),
            std::to_string(s.discarded), c.num(s.mean_hat), c.num(s.var_hat)});
  Table& t = p.table("distribution", {"m", "count", "phat", "stderr"});
  for (size_t i = 0; i < s.rows; ++i) {
    rsp_empirical_row r{};
    check(rsp_empirical_get_row(e.get(), i, &r));
    t.add({std::to_string(r.m), std::to_string(r.count), c.num(r.phat), c.num(r.std_error)});
  }
}

void do_compare(const Config& c, Payload& p) {
  require_even(c.n);
  p.inputs.emplace_back("n", std::to_string(c.n));
  p.inputs.emplace_back("trials", std::to_string(c.trials));

  if (c.trials > 0) {
    p.inputs.emplace_back("seed", std::to_string(c.seed));
    p.seed = std::to_string(c.seed);
    rsp_comparison* raw = nullptr;
    check(rsp_compare(c.n, c.trials, c.seed, c.precision, c.threads, &raw));
    ComparisonPtr cmp(raw);
    rsp_comparison_summary s{};
    check(rsp_comparison_get_summary(cmp.get(), &s));
    p.table("summary", {"n", "trials", "seed", "discarded", "tv_distance", "max_abs_z",
                        "exact_mean", "mean_hat", "mean_z", "exact_variance", "var_hat",
                        "ratio_exact", "ratio_empirical"})
        .add({std::to_string(s.n), std::to_string(s.trials), std::to_string(s.seed),
              std::to_string(s.discarded), c.num(s.tv_distance), c.num(s.max_abs_z),
              c.num(s.exact_mean), c.num(s.mean_hat), c.num(s.mean_z), c.num(s.exact_variance),
              c.num(s.var_hat), c.num(s.ratio_exact), c.num(s.ratio_empirical)});
    Table& t = p.table("comparison", {"m", "p_exact", "phat", "stderr", "z"});
    for (size_t i = 0; i < s.rows; ++i) {
      rsp_comparison_row r{};
      check(rsp_comparison_get_row(cmp.get(), i, &r));
      t.add({std::to_string(r.m), c.num(r.p_exact), c.num(r.phat), c.num(r.std_error),
             c.num(r.z)});
    }
  }

  // long-form overlay of every regime's log p on the M lattice
  rsp_table* raw = nullptr;
  check(rsp_table_create(c.n, c.precision, &raw));
  TablePtr table(raw);
  size_t size = 0;
  check(rsp_table_size(table.get(), &size));
  const double nn = c.n, root = std::sqrt(nn);
  Table& o = p.table("overlay", {"m", "regime", "log_p"});
  for (size_t i = 0; i < size; ++i) {
    int m = 0;
    double prob = 0, log_p = 0;
    check(rsp_table_entry(table.get(), i, &m, &prob, &log_p));
    const std::string ms = std::to_string(m);
    o.add({ms, "exact", c.num(log_p)});
    double d = 0;
    check(rsp_clt_log_density(c.n, m, 0, &d));
    o.add({ms, "clt", c.num(d + std::log(2.0))});
    if (m == 0) {
      check(rsp_no_real_log_asymptotic(c.n, &d));
      o.add({ms, "no_real", c.num(d)});
      continue;
    }
    double r = 0;
    check(rsp_ld_rate(m / nn, &r));
    o.add({ms, "ldp", c.num(-nn * nn * r)});
    rsp_rate_evaluation ev{};
    check(rsp_intermediate_rate(m / root, c.tol, &ev));
    o.add({ms, "idp", c.num(root * ev.exponent)});
    if (m == c.n) {
      check(rsp_all_real_log_asymptotic(c.n, &d));
      o.add({ms, "all_real", c.num(d)});
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  c.precision = rsp_default_precision_bits();

  CLI::App app{"Real-eigenvalue statistics of the real spherical ensemble A B^-1", "rsp"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(rsp_version()));
  app.fallthrough();
  app.add_option("--precision", c.precision, "working precision in bits (env RSP_PRECISION_BITS)")
      ->check(CLI::Range(53u, 1u << 20));
  app.add_option("--tol", c.tol, "absolute tolerance for quadrature and root finding")
      ->check(CLI::PositiveNumber);
  app.add_option("--digits", c.digits, "significant digits in the output")
      ->check(CLI::Range(1, 100000));
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", c.output, "write the payload here instead of stdout");
  app.add_option("--threads", c.threads, "Monte Carlo threads, 0 = all cores");

  Subcommands s{};
  s.exact = app.add_subcommand("exact", "exact distribution p_{N,M}");
  CLI::Option* exact_n = s.exact->add_option("--n", c.n, "matrix size (even)")->required();
  CLI::Option* exact_m = s.exact->add_option("--m", c.m, "number of real eigenvalues");
  (void)exact_n;

  s.moments = app.add_subcommand("moments", "exact mean and variance");
  s.moments->add_option("--n", c.n, "matrix size (even)")->required();
  s.moments->add_flag("--no-verify", c.no_verify, "skip the comparison with the full table");

  s.ldp = app.add_subcommand("ldp", "large-deviation rate and its energy pieces");
  s.ldp->add_option("--alpha", c.alpha, "fraction M/N of real eigenvalues")->required();
  CLI::Option* ldp_n = s.ldp->add_option("--n", c.n, "matrix size for log p = -N^2 r");

  s.idp = app.add_subcommand("idp", "intermediate-deviation rate for M = x sqrt(N)");
  CLI::Option* idp_x = s.idp->add_option("--x", c.x, "scaled count M / sqrt(N)");
  s.idp->add_option("--x-min", c.x_min, "grid start when --x is absent");
  s.idp->add_option("--x-max", c.x_max, "grid end");
  s.idp->add_option("--x-steps", c.x_steps, "number of grid intervals");

  s.clt = app.add_subcommand("clt", "local central limit form around the mean");
  s.clt->add_option("--n", c.n, "matrix size")->required();
  CLI::Option* clt_m = s.clt->add_option("--m", c.m, "single M instead of a window");
  s.clt->add_option("--width", c.width, "window half-width in standard deviations");
  s.clt->add_flag("--exact-mean", c.exact_mean, "center on the exact mean (even N)");

  s.asym = app.add_subcommand("asym", "all-real and no-real asymptotes");
  s.asym->add_option("--n", c.n, "matrix size")->required();

  s.propcheck = app.add_subcommand("propcheck", "convergence of log Z_N(xi) / sqrt(N/2)");
  s.propcheck->add_option("--n", c.n_list, "even matrix sizes")->expected(1, -1);
  s.propcheck->add_option("--xi", c.xi, "generating-function argument (> 0)");

  s.mc = app.add_subcommand("mc", "Monte Carlo estimate of the distribution");
  s.mc->add_option("--n", c.n, "matrix size")->required();
  s.mc->add_option("--trials", c.trials, "number of sampled pencils");
  s.mc->add_option("--seed", c.seed, "64-bit seed");

  s.compare = app.add_subcommand("compare", "exact vs Monte Carlo and asymptotic overlays");
  s.compare->add_option("--n", c.n, "matrix size (even)")->required();
  s.compare->add_option("--trials", c.trials, "Monte Carlo trials, 0 skips the simulation");
  s.compare->add_option("--seed", c.seed, "64-bit seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << rsp_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    Payload p;
    CLI::App* sub = app.get_subcommands().front();
    base_payload(p, c, sub->get_name());
    if (sub == s.exact) do_exact(c, exact_m->count() > 0, p);
    else if (sub == s.moments) do_moments(c, p);
    else if (sub == s.ldp) do_ldp(c, ldp_n->count() > 0, p);
    else if (sub == s.idp) do_idp(c, idp_x->count() > 0, p);
    else if (sub == s.clt) do_clt(c, clt_m->count() > 0, p);
    else if (sub == s.asym) do_asym(c, p);
    else if (sub == s.propcheck) do_propcheck(c, p);
    else if (sub == s.mc) do_mc(c, p);
    else if (sub == s.compare) do_compare(c, p);

    std::ostringstream text;
    if (c.format == "csv") write_csv(text, p);
    else write_json(text, p);
    if (c.output.empty()) out << text.str();
    else write_file_atomically(c.output, text.str());
    return kExitOk;
  } catch (const Failure& f) {
    err << "error: " << f.what() << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace rsp_cli
