#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hpm/params.hpp"

namespace hpm::sampler {

// Unnormalised log density of the N eigenvalues:
//   2 sum_{l<k} log|x_k - x_l| + sum_j [-(Re s + N) log(1+x_j^2) + 2 Im s atan x_j].
// -inf when two eigenvalues coincide.
double log_joint_density(const EnsembleParams& params, std::span<const double> x);

// Change in log density when x[site] moves to x_new.
double acceptance_log_ratio(const EnsembleParams& params, std::span<const double> x, int site, double x_new);

struct ChainConfig {
  std::uint64_t seed = 1;
  long burn_in = 20000;    // steps
  long thinning = 1;       // steps between kept samples
  long total_kept = 100000;
  double proposal_scale = 1.0;  // Cauchy scale; adapted during burn-in when adapt is set
  bool adapt = true;
};

// Final state plus kept samples (row-major, total_kept x N).
struct ChainState {
  std::vector<double> eigenvalues;
  double log_density = 0.0;
  long accept_count = 0;
  long step_count = 0;
};

struct ChainResult {
  int n = 0;
  std::vector<double> samples;
  ChainState final_state;
  double proposal_scale = 0.0;   // after adaptation
  double acceptance_rate = 0.0;  // after burn-in
  std::vector<std::string> warnings;

  std::size_t kept() const { return n == 0 ? 0 : samples.size() / n; }
  std::span<const double> row(std::size_t i) const { return {samples.data() + i * n, std::size_t(n)}; }
};

// Metropolis within Gibbs: each step proposes x_site + scale * Cauchy for one
// site, sites visited in order. Stream for chain c is mt19937_64 seeded with
// seed_seq{seed low 32 bits, seed high 32 bits, c}.
ChainResult run_chain(const EnsembleParams& params, const ChainConfig& config, int chain_index = 0);

// Independent chains 0..n_chains-1, run on up to `threads` threads
// (0: HPM_THREADS or 1). Results are in chain order whatever the scheduling.
std::vector<ChainResult> run_chains(const EnsembleParams& params, const ChainConfig& config, int n_chains,
                                    int threads = 0);

// Per-sample statistics.
//   line:   sum_j |x_j|^{2k} (1 + x_j^2)
//   circle: sum_j |tan(theta_j/2)|^{2k} sec^2(theta_j/2), theta_j = arg of the Cayley image.
double q_statistic(std::span<const double> x, double k);
double circle_statistic(std::span<const double> x, double k);

struct Estimate {
  double k = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;  // batch means
  double ess = 0.0;
  long samples = 0;
  bool finite_variance = true;  // Re k < Re s / 2 - 3/4
};

// Needs real s and k < s - 3/4 (DomainError otherwise). Chains are pooled;
// batches never straddle two chains.
std::vector<Estimate> estimate_q(const EnsembleParams& params, const std::vector<ChainResult>& chains,
                                 std::span<const double> ks, bool circle = false);

}  // namespace hpm::sampler
