#pragma once

#include <Eigen/Core>
#include <vector>

#include "dmlab/rng.hpp"

namespace dmlab {

/// Discrete probability vector over timesteps 0..T-1 with its cumulative
/// sums. Immutable after construction.
struct TimestepDistribution {
  Eigen::VectorXd probs;
  Eigen::VectorXd cdf;

  int size() const { return static_cast<int>(probs.size()); }
};

/// Validates probs (nonnegative, sum 1 within 1e-12) and attaches the cdf.
/// Does not renormalize; callers own the normalization.
TimestepDistribution make_distribution(Eigen::VectorXd probs);

/// Curriculum schedule parameters. sigma defaults to T ("standard variance
/// across timesteps"), mu to 0.3*T.
struct CltsConfig {
  int timesteps = 0;
  double mu = 0.0;
  double sigma = 0.0;
  long long target_iteration = 1;

  void validate() const;
};

CltsConfig default_clts_config(int timesteps, long long total_iterations);

/// U(t) = 1/T.
TimestepDistribution uniform_dist(int timesteps);

/// Discrete Gaussian: probs[t] proportional to exp(-(t-mu)^2 / (2 sigma^2))
/// at integer t, renormalized to sum 1.
TimestepDistribution gaussian_dist(const CltsConfig& cfg);

/// Curriculum progress min(1, iter/target). Clamped at 1 after the target
/// iteration so the Gaussian regime persists.
double gamma_at(long long iter, long long target);

/// P = (1-gamma) * u + gamma * n, entrywise. gamma = 0 and gamma = 1
/// reproduce the arguments bitwise.
TimestepDistribution mix(const TimestepDistribution& u, const TimestepDistribution& n,
                         double gamma);

/// The shifted-Gaussian variant: the mean moves from T-1 toward mu as
/// progress goes 0 -> 1, with no uniform component. Kept only to replicate
/// the negative result; not part of the default curriculum.
TimestepDistribution shifted_gaussian_dist(const CltsConfig& cfg, double progress);

/// I.i.d. inverse-CDF draws, reproducible from the stream.
std::vector<int> sample_timesteps(const TimestepDistribution& dist, Rng& stream, int count);

}  // namespace dmlab
