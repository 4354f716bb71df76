#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

// Direct simulation of the pencil (A, B) with i.i.d. standard normal entries.
// Real eigenvalues of A B^-1 are counted from the real generalized Schur form.

namespace rsp {

// splitmix64 finalizer applied to seed + (index + 1) * golden gamma: the
// per-trial stream key, independent of how trials are scheduled.
std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t trial_index);

// mt19937_64 feeding Marsaglia's polar method. Uniforms are the top 53 bits
// of each 64-bit output scaled by 2^-53.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0;
  bool has_spare_ = false;
};

struct Pencil {
  int n = 0;
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
};

// A then B, each filled column by column.
Pencil sample_pencil(int n, GaussianStream& rng);

// Number of 1x1 diagonal blocks of the real QZ form of (A, B).
// Throws DecompositionFailure when the QZ iteration does not converge.
int count_real_generalized_eigenvalues(const Pencil& p);

struct EmpiricalDistribution {
  int n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t discarded = 0;      // QZ failures, never resampled
  std::map<int, std::uint64_t> counts;  // only M with the parity of N
  std::map<int, double> phat;       // over trials - discarded
  std::map<int, double> std_error;    // sqrt(phat (1 - phat) / accepted)
  double mean_hat = 0;
  double var_hat = 0;               // unbiased

  std::uint64_t accepted() const { return trials - discarded; }
};

// threads = 0 picks the hardware concurrency. The result does not depend on it.
EmpiricalDistribution estimate_distribution(int n, std::uint64_t trials, std::uint64_t seed,
                                            unsigned threads = 0);

// Raw per-trial counts (-1 for a discarded trial), in trial order.
std::vector<int> simulate_counts(int n, std::uint64_t trials, std::uint64_t seed,
                                 unsigned threads = 0, bool swap_roles = false);

EmpiricalDistribution summarize_counts(int n, std::uint64_t seed, const std::vector<int>& counts);

struct ComparisonRow {
  int m = 0;
  double p_exact = 0;
  double phat = 0;
  double std_error = 0;
  double z = 0;
};

struct ExactEmpiricalReport {
  EmpiricalDistribution empirical;
  std::vector<ComparisonRow> rows;  // every M of the right parity
  double tv_distance = 0;
  double max_abs_z = 0;
  double exact_mean = 0;
  double exact_variance = 0;
  double mean_z = 0;                // (mean_hat - mean) / sqrt(variance / accepted)
  double ratio_exact = 0;           // variance / mean
  double ratio_empirical = 0;
};

// z uses the empirical stderr, or the exact-p one where phat is 0 or 1;
// z = 0 when both vanish.
ExactEmpiricalReport compare_exact_empirical(int n, std::uint64_t trials, std::uint64_t seed,
                                             unsigned precision_bits, unsigned threads = 0);

double total_variation(const std::map<int, double>& p, const std::map<int, double>& q);

}  // namespace rsp
