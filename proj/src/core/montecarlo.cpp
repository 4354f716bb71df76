#include "core/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

#include "core/errors.hpp"
#include "core/exact_dist.hpp"

namespace rsp {

std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t trial_index) {
  std::uint64_t z = seed + (trial_index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double GaussianStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

Pencil sample_pencil(int n, GaussianStream& rng) {
  if (n < 1) throw Error(Errc::OutOfRange, "N must be at least 1");
  Pencil p{n, Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n)};
  for (Eigen::MatrixXd* m : {&p.a, &p.b}) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) (*m)(i, j) = rng.normal();
    }
  }
  return p;
}

int count_real_generalized_eigenvalues(const Pencil& p) {
  Eigen::RealQZ<Eigen::MatrixXd> qz(p.n);
  qz.compute(p.a, p.b, false);
  if (qz.info() != Eigen::Success) {
    throw Error(Errc::DecompositionFailure, "QZ iteration did not converge");
  }
  const Eigen::MatrixXd& s = qz.matrixS();
  int count = 0;
  for (int i = 0; i < p.n;) {
    if (i + 1 < p.n && s(i + 1, i) != 0.0) {
      i += 2;
    } else {
      ++count;
      ++i;
    }
  }
  return count;
}

std::vector<int> simulate_counts(int n, std::uint64_t trials, std::uint64_t seed,
                                 unsigned threads, bool swap_roles) {
  if (n < 1) throw Error(Errc::OutOfRange, "N must be at least 1");
  if (trials < 1) throw Error(Errc::OutOfRange, "trials must be at least 1");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

  std::vector<int> out(trials);
  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      GaussianStream rng(derive_trial_seed(seed, t));
      Pencil p = sample_pencil(n, rng);
      if (swap_roles) std::swap(p.a, p.b);
      try {
        out[t] = count_real_generalized_eigenvalues(p);
      } catch (const Error& e) {
        if (e.code() != Errc::DecompositionFailure) throw;
        out[t] = -1;
      }
    }
  };
  if (threads == 1) {
    work(0, trials);
    return out;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (trials + threads - 1) / threads;
  for (unsigned k = 0; k < threads; ++k) {
    const std::uint64_t begin = k * chunk;
    const std::uint64_t end = std::min(trials, begin + chunk);
    if (begin < end) pool.emplace_back(work, begin, end);
  }
  for (auto& th : pool) th.join();
  return out;
}

EmpiricalDistribution summarize_counts(int n, std::uint64_t seed, const std::vector<int>& counts) {
  EmpiricalDistribution d;
  d.n = n;
  d.seed = seed;
  d.trials = counts.size();
  for (int c : counts) {
    if (c < 0) {
      ++d.discarded;
    } else {
      ++d.counts[c];
    }
  }
  const double accepted = static_cast<double>(d.accepted());
  if (accepted == 0) return d;
  double sum = 0, sum2 = 0;
  for (const auto& [m, k] : d.counts) {
    const double ph = k / accepted;
    d.phat[m] = ph;
    d.std_error[m] = std::sqrt(ph * (1 - ph) / accepted);
    sum += static_cast<double>(m) * k;
    sum2 += static_cast<double>(m) * m * k;
  }
  d.mean_hat = sum / accepted;
  d.var_hat = accepted > 1 ? (sum2 - accepted * d.mean_hat * d.mean_hat) / (accepted - 1) : 0.0;
  return d;
}

EmpiricalDistribution estimate_distribution(int n, std::uint64_t trials, std::uint64_t seed,
                                            unsigned threads) {
  return summarize_counts(n, seed, simulate_counts(n, trials, seed, threads));
}

double total_variation(const std::map<int, double>& p, const std::map<int, double>& q) {
  std::set<int> keys;
  for (const auto& kv : p) keys.insert(kv.first);
  for (const auto& kv : q) keys.insert(kv.first);
  double tv = 0;
  for (int k : keys) {
    const auto a = p.find(k);
    const auto b = q.find(k);
    tv += std::abs((a == p.end() ? 0.0 : a->second) - (b == q.end() ? 0.0 : b->second));
  }
  return tv / 2;
}

ExactEmpiricalReport compare_exact_empirical(int n, std::uint64_t trials, std::uint64_t seed,
                                             unsigned precision_bits, unsigned threads) {
  require_even_n(n);
  const ProbabilityTable table = probability_table(n, precision_bits);
  const ExactMoments moments = exact_moments(n, precision_bits, false);

  ExactEmpiricalReport r;
  r.empirical = estimate_distribution(n, trials, seed, threads);
  const double accepted = static_cast<double>(r.empirical.accepted());
  std::map<int, double> exact;
  for (const ProbabilityEntry& e : table.entries) {
    ComparisonRow row;
    row.m = e.m;
    row.p_exact = e.p_numeric.to_double();
    exact[e.m] = row.p_exact;
    const auto it = r.empirical.phat.find(e.m);
    row.phat = it == r.empirical.phat.end() ? 0.0 : it->second;
    row.std_error = std::sqrt(row.phat * (1 - row.phat) / accepted);
    double scale = row.std_error;
    if (scale == 0) scale = std::sqrt(row.p_exact * (1 - row.p_exact) / accepted);
    row.z = scale == 0 ? 0.0 : (row.phat - row.p_exact) / scale;
    r.max_abs_z = std::max(r.max_abs_z, std::abs(row.z));
    r.rows.push_back(row);
  }
  r.tv_distance = total_variation(exact, r.empirical.phat);
  r.exact_mean = moments.mean.to_double();
  r.exact_variance = moments.variance.to_double();
  r.mean_z = (r.empirical.mean_hat - r.exact_mean) / std::sqrt(r.exact_variance / accepted);
  r.ratio_exact = r.exact_variance / r.exact_mean;
  r.ratio_empirical = r.empirical.var_hat / r.empirical.mean_hat;
  return r;
}

}  // namespace rsp
