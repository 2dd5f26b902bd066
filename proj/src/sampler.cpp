#include "hpm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "hpm/errors.hpp"
#include "hpm/kernels.hpp"
#include "hpm/moments.hpp"

namespace hpm::sampler {

namespace {

constexpr double kTargetAcceptance = 0.3;
constexpr long kAdaptWindow = 200;

double site_log_weight(const EnsembleParams& params, double x) {
  return -(params.re_s() + params.n()) * std::log1p(x * x) + 2.0 * params.im_s() * std::atan(x);
}

int default_threads() {
  if (const char* env = std::getenv("HPM_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

}  // namespace

double log_joint_density(const EnsembleParams& params, std::span<const double> x) {
  double v = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!std::isfinite(x[j])) throw DomainError("eigenvalues must be finite");
    v += site_log_weight(params, x[j]);
    for (std::size_t l = 0; l < j; ++l) {
      if (x[j] == x[l]) return -std::numeric_limits<double>::infinity();
      v += 2.0 * std::log(std::abs(x[j] - x[l]));
    }
  }
  return v;
}

double acceptance_log_ratio(const EnsembleParams& params, std::span<const double> x, int site, double x_new) {
  const double x_old = x[site];
  double v = site_log_weight(params, x_new) - site_log_weight(params, x_old);
  // Others sit on either side of the site; the kernel wants them contiguous.
  v += 2.0 * kernels::log_abs_ratio_sum(x_new, x_old, x.data(), site);
  v += 2.0 * kernels::log_abs_ratio_sum(x_new, x_old, x.data() + site + 1, x.size() - site - 1);
  return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
}

ChainResult run_chain(const EnsembleParams& params, const ChainConfig& config, int chain_index) {
  if (config.burn_in < 0 || config.thinning < 1 || config.total_kept < 100 || !(config.proposal_scale > 0.0))
    throw DomainError("chain config needs burn_in >= 0, thinning >= 1, total_kept >= 100, proposal_scale > 0");
  const int n = params.n();
  std::seed_seq seq{std::uint32_t(config.seed & 0xffffffffu), std::uint32_t(config.seed >> 32),
                    std::uint32_t(chain_index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  ChainResult out;
  out.n = n;
  ChainState& st = out.final_state;
  st.eigenvalues.resize(n);
  // Start spread over the bulk so no two points coincide.
  for (int j = 0; j < n; ++j) st.eigenvalues[j] = std::tan(M_PI * ((j + 0.5) / n - 0.5) * 0.9);
  st.log_density = log_joint_density(params, st.eigenvalues);

  double scale = config.proposal_scale;
  long window_accept = 0;
  auto step = [&](long t) {
    const int site = int(t % n);
    double& xs = st.eigenvalues[site];
    const double x_new = xs + scale * std::tan(M_PI * (unif(rng) - 0.5));
    const double d = acceptance_log_ratio(params, st.eigenvalues, site, x_new);
    const bool accept = std::log(unif(rng)) < d;
    if (accept) {
      xs = x_new;
      st.log_density += d;
    }
    return accept;
  };

  long t = 0;
  for (; t < config.burn_in; ++t) {
    window_accept += step(t);
    if (config.adapt && (t + 1) % kAdaptWindow == 0) {
      const double rate = double(window_accept) / kAdaptWindow;
      scale *= std::exp(rate - kTargetAcceptance);
      window_accept = 0;
    }
  }
  out.proposal_scale = scale;

  out.samples.reserve(std::size_t(config.total_kept) * n);
  long accepted = 0, steps = 0;
  for (long kept = 0; kept < config.total_kept;) {
    accepted += step(t++);
    ++steps;
    if (steps % config.thinning == 0) {
      out.samples.insert(out.samples.end(), st.eigenvalues.begin(), st.eigenvalues.end());
      ++kept;
    }
  }
  st.accept_count = accepted;
  st.step_count = steps;
  // Drift-free log density for the caller.
  st.log_density = log_joint_density(params, st.eigenvalues);
  out.acceptance_rate = double(accepted) / double(steps);
  if (out.acceptance_rate <= 0.1 || out.acceptance_rate >= 0.6)
    out.warnings.push_back("acceptance rate " + std::to_string(out.acceptance_rate) + " outside (0.1, 0.6)");
  return out;
}

std::vector<ChainResult> run_chains(const EnsembleParams& params, const ChainConfig& config, int n_chains,
                                    int threads) {
  if (n_chains < 1) throw DomainError("need at least one chain");
  if (threads <= 0) threads = default_threads();
  threads = std::min(threads, n_chains);
  std::vector<ChainResult> out(n_chains);
  if (threads == 1) {
    for (int c = 0; c < n_chains; ++c) out[c] = run_chain(params, config, c);
    return out;
  }
  // Static round-robin assignment; each chain writes only its own slot.
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int c = w; c < n_chains; c += threads) out[c] = run_chain(params, config, c);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

double q_statistic(std::span<const double> x, double k) {
  double v = 0.0;
  for (double xi : x) {
    const double ax = std::abs(xi);
    v += (ax == 0.0 ? (k == 0.0 ? 1.0 : 0.0) : std::pow(ax, 2.0 * k)) * (1.0 + xi * xi);
  }
  return v;
}

double circle_statistic(std::span<const double> x, double k) {
  double v = 0.0;
  for (double xi : x) {
    const double theta = std::arg(moments::cayley(xi));
    // Cayley sends x to exp(2i atan x), so theta/2 = atan x.
    const double t = std::abs(std::tan(theta / 2.0));
    const double sec2 = 1.0 / (std::cos(theta / 2.0) * std::cos(theta / 2.0));
    v += (t == 0.0 ? (k == 0.0 ? 1.0 : 0.0) : std::pow(t, 2.0 * k)) * sec2;
  }
  return v;
}

std::vector<Estimate> estimate_q(const EnsembleParams& params, const std::vector<ChainResult>& chains,
                                 std::span<const double> ks, bool circle) {
  if (!params.is_real()) throw DomainError("moment estimates need real s");
  const double s = params.re_s();
  std::vector<Estimate> out;
  for (double k : ks) {
    if (!(k > -0.5 && k < s - 0.75))
      throw DomainError("estimate needs -1/2 < k < s - 3/4, got k = " + std::to_string(k));
    Estimate e;
    e.k = k;
    e.finite_variance = k < s / 2.0 - 0.75;
    double sum = 0.0, sum2 = 0.0;
    std::vector<double> batch_means;
    for (const auto& ch : chains) {
      const std::size_t m = ch.kept();
      const std::size_t b = std::max<std::size_t>(1, std::size_t(std::sqrt(double(m))));
      double acc = 0.0;
      std::size_t in_batch = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const double v = circle ? circle_statistic(ch.row(i), k) : q_statistic(ch.row(i), k);
        sum += v;
        sum2 += v * v;
        acc += v;
        if (++in_batch == b) {
          batch_means.push_back(acc / double(b));
          acc = 0.0;
          in_batch = 0;
        }
      }
      e.samples += long(m);
    }
    e.estimate = sum / double(e.samples);
    const double nb = double(batch_means.size());
    double vb = 0.0;
    for (double bm : batch_means) vb += (bm - e.estimate) * (bm - e.estimate);
    vb /= std::max(1.0, nb - 1.0);
    e.std_error = std::sqrt(vb / nb);
    const double var = sum2 / double(e.samples) - e.estimate * e.estimate;
    e.ess = e.std_error > 0.0 ? var / (e.std_error * e.std_error) : double(e.samples);
    out.push_back(e);
  }
  return out;
}

}  // namespace hpm::sampler
