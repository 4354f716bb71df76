#pragma once

// Closed-form asymptotic regimes for p_{N,M}.

namespace rsp {

namespace constants {
inline constexpr double kZeta3Over2 = 2.6123753486854883433;
inline constexpr double kZetaPrimeMinus1 = -0.16542114370045092921;
}  // namespace constants

// sqrt(2 pi) (2 - sqrt 2): Gaussian width constant of the local CLT and of
// the right tail of the intermediate regime.
double clt_constant();

// Rate r(alpha) with log p_{N, alpha N} ~ -N^2 r(alpha), for 0 < alpha <= 1.
// Throws OutOfRange otherwise. alpha = 1 is the left limit.
double ld_rate(double alpha);

// (1/8)(2 alpha^3 / 3 + alpha^5 / 15): the two leading terms of r near 0.
double small_alpha_rate(double alpha);

// Electrostatic pieces of the rate with the cap angle theta0 = acos(alpha):
// annulus self-energy, equator self-energy and equator/annulus cross term.
struct EnergyBreakdown {
  double alpha = 0;
  double theta0 = 0;
  double e_annulus = 0;
  double e_equator = 0;
  double e_cross = 0;
  double total = 0;
  double v_a_equator = 0;  // annulus potential on the equator
  double v_e = 0;          // equator potential of the equator charge
};

// Defined on [0, 1]; both endpoints are limits.
EnergyBreakdown energy_breakdown(double alpha);

struct CltParameters {
  int n = 0;
  double mu_n = 0;      // mean number of real eigenvalues
  double sigma2 = 0;    // (2 - sqrt 2) mu_n
  double c = 0;
  double window = 0;    // N^(-3/4): scale of alpha - mu_n / N where the CLT holds
};

// mu_n is sqrt(pi N / 2) unless use_exact_mean (then N must be even).
CltParameters clt_parameters(int n, bool use_exact_mean);

// log of the local-CLT form at M = alpha N:
//   -(1/2) log(pi c sqrt N) - N^(3/2) (alpha - mu_n / N)^2 / c.
// This is a density per unit M; the parity lattice carries twice it.
// Throws Parity for M of the wrong parity, OutOfRange outside [0, N].
double clt_log_density(int n, int m, bool use_exact_mean);

// N^2/4 - (N^2/2) log 2 + (1/12) log N - 1/12 - zeta'(-1)
double all_real_log_asymptotic(int n);

// -sqrt(pi N / 8) zeta(3/2)
double no_real_log_asymptotic(int n);

}  // namespace rsp
