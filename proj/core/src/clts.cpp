#include "dmlab/clts.hpp"

#include <algorithm>
#include <cmath>

#include "dmlab/errors.hpp"

namespace dmlab {

TimestepDistribution make_distribution(Eigen::VectorXd probs) {
  if (probs.size() < 1) throw ContractViolation("distribution needs at least one entry");
  if ((probs.array() < 0.0).any()) throw ContractViolation("distribution has negative entries");
  const double total = probs.sum();
  if (std::abs(total - 1.0) > 1e-12) {
    throw ContractViolation("distribution sums to " + std::to_string(total) + ", not 1");
  }

  TimestepDistribution dist;
  dist.cdf.resize(probs.size());
  double running = 0.0;
  for (Eigen::Index t = 0; t < probs.size(); ++t) {
    running += probs[t];
    dist.cdf[t] = running;
  }
  dist.cdf[probs.size() - 1] = 1.0;  // close the final bin exactly
  dist.probs = std::move(probs);
  return dist;
}

void CltsConfig::validate() const {
  if (timesteps < 2) throw ConfigError("clts: timesteps must be >= 2");
  if (!(sigma > 0.0)) throw ConfigError("clts: sigma must be positive");
  if (target_iteration < 1) throw ConfigError("clts: target_iteration must be >= 1");
}

CltsConfig default_clts_config(int timesteps, long long total_iterations) {
  CltsConfig cfg;
  cfg.timesteps = timesteps;
  cfg.mu = 0.3 * timesteps;
  cfg.sigma = timesteps;
  cfg.target_iteration = std::max<long long>(1, total_iterations / 4);
  return cfg;
}

TimestepDistribution uniform_dist(int timesteps) {
  if (timesteps < 2) throw ConfigError("uniform_dist: timesteps must be >= 2");
  Eigen::VectorXd probs(timesteps);
  const double p = 1.0 / timesteps;
  probs.setConstant(p);
  // Rounding can leave the sum a few ulp off 1; absorb it in the last entry.
  probs[timesteps - 1] += 1.0 - probs.sum();
  return make_distribution(std::move(probs));
}

namespace {

TimestepDistribution gaussian_around(int timesteps, double mu, double sigma) {
  Eigen::VectorXd probs(timesteps);
  for (int t = 0; t < timesteps; ++t) {
    const double d = (t - mu) / sigma;
    probs[t] = std::exp(-0.5 * d * d);
  }
  const double total = probs.sum();
  probs /= total;
  probs[timesteps - 1] += 1.0 - probs.sum();
  return make_distribution(std::move(probs));
}

}  // namespace

TimestepDistribution gaussian_dist(const CltsConfig& cfg) {
  cfg.validate();
  return gaussian_around(cfg.timesteps, cfg.mu, cfg.sigma);
}

double gamma_at(long long iter, long long target) {
  if (target < 1) throw ConfigError("gamma_at: target must be >= 1");
  if (iter <= 0) return 0.0;
  if (iter >= target) return 1.0;
  return static_cast<double>(iter) / static_cast<double>(target);
}

TimestepDistribution mix(const TimestepDistribution& u, const TimestepDistribution& n,
                         double gamma) {
  if (u.size() != n.size()) throw ContractViolation("mix: distributions differ in size");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ContractViolation("mix: gamma outside [0, 1]");
  if (gamma == 0.0) return u;
  if (gamma == 1.0) return n;
  Eigen::VectorXd probs = (1.0 - gamma) * u.probs + gamma * n.probs;
  return make_distribution(std::move(probs));
}

TimestepDistribution shifted_gaussian_dist(const CltsConfig& cfg, double progress) {
  cfg.validate();
  if (!(progress >= 0.0 && progress <= 1.0)) {
    throw ContractViolation("shifted_gaussian_dist: progress outside [0, 1]");
  }
  const double start = cfg.timesteps - 1;
  const double mu = start + (cfg.mu - start) * progress;
  return gaussian_around(cfg.timesteps, mu, cfg.sigma);
}

std::vector<int> sample_timesteps(const TimestepDistribution& dist, Rng& stream, int count) {
  if (count < 0) throw ContractViolation("sample_timesteps: negative count");
  std::vector<int> out(static_cast<std::size_t>(count));
  const double* begin = dist.cdf.data();
  const double* end = begin + dist.cdf.size();
  for (int i = 0; i < count; ++i) {
    const double u = stream.uniform();
    const double* it = std::upper_bound(begin, end, u);
    out[static_cast<std::size_t>(i)] = static_cast<int>(std::min<std::ptrdiff_t>(
        it - begin, dist.cdf.size() - 1));
  }
  return out;
}

}  // namespace dmlab
