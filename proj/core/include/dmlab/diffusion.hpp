#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dmlab/rng.hpp"

namespace dmlab {

enum class ScheduleKind { kLinear, kCosine };

ScheduleKind schedule_kind_from_string(const std::string& name);
std::string to_string(ScheduleKind kind);

/// Precomputed forward-process tables. Arrays are indexed t = 0..T-1;
/// alpha_bars[t] is the running product of alphas[0..t].
struct NoiseSchedule {
  ScheduleKind kind = ScheduleKind::kCosine;
  int timesteps = 0;
  Eigen::VectorXd betas;
  Eigen::VectorXd alphas;
  Eigen::VectorXd alpha_bars;

  /// alpha_bar at t-1, with the t=0 boundary defined as 1.
  double alpha_bar_prev(int t) const { return t == 0 ? 1.0 : alpha_bars[t - 1]; }
};

/// Builds the linear (1e-4 .. 0.02 endpoints) or cosine (squared-cosine
/// alpha_bar with s = 0.008, betas clipped at 0.999) schedule. Requires
/// timesteps >= 2.
NoiseSchedule build_schedule(ScheduleKind kind, int timesteps);

enum class PredictionTarget { kEpsilon, kX0 };

PredictionTarget prediction_target_from_string(const std::string& name);
std::string to_string(PredictionTarget target);

/// A noised training batch. Rows are points; all four members share the
/// batch dimension and xt is exactly the forward formula applied to
/// (x0, t, eps).
struct DiffusionBatch {
  Eigen::MatrixXd x0;
  std::vector<int> t;
  Eigen::MatrixXd eps;
  Eigen::MatrixXd xt;

  Eigen::Index size() const { return x0.rows(); }
  Eigen::Index dim() const { return x0.cols(); }
};

DiffusionBatch make_diffusion_batch(const NoiseSchedule& sched, Eigen::MatrixXd x0,
                                    std::vector<int> t, Eigen::MatrixXd eps);

/// xt = sqrt(alpha_bar_t) * x0 + sqrt(1 - alpha_bar_t) * eps.
Eigen::VectorXd forward_sample(const NoiseSchedule& sched, const Eigen::VectorXd& x0, int t,
                               const Eigen::VectorXd& eps);

/// Row-wise forward sample; t[i] applies to row i.
Eigen::MatrixXd forward_sample(const NoiseSchedule& sched, const Eigen::MatrixXd& x0,
                               const std::vector<int>& t, const Eigen::MatrixXd& eps);

/// Mean squared error over all elements (the simplified noise-prediction
/// training loss).
double simple_loss(const Eigen::MatrixXd& eps_hat, const Eigen::MatrixXd& eps);

/// Same contract applied to clean-data targets.
double x0_loss(const Eigen::MatrixXd& x0_hat, const Eigen::MatrixXd& x0);

/// Posterior standard deviation sigma_t = sqrt(beta_t * (1 - alpha_bar_{t-1})
/// / (1 - alpha_bar_t)); zero at t = 0.
double posterior_sigma(const NoiseSchedule& sched, int t);

/// One ancestral step x_t -> x_{t-1}. For epsilon prediction the posterior
/// mean is (x_t - beta_t / sqrt(1 - alpha_bar_t) * eps_hat) / sqrt(alpha_t);
/// for x0 prediction the predicted clean point enters through the standard
/// q(x_{t-1} | x_t, x0) coefficients. z must be zero at t = 0.
Eigen::VectorXd reverse_step(const NoiseSchedule& sched, PredictionTarget target,
                             const Eigen::VectorXd& model_output, const Eigen::VectorXd& xt,
                             int t, const Eigen::VectorXd& z);

Eigen::MatrixXd reverse_step(const NoiseSchedule& sched, PredictionTarget target,
                             const Eigen::MatrixXd& model_output, const Eigen::MatrixXd& xt,
                             int t, const Eigen::MatrixXd& z);

/// Recordable noise for sampling: per-sample sub-streams derived from a
/// seed supply x_T and then one z per reverse step with t > 0. Two streams
/// built from the same (seed, dim, timesteps) replay identical draws, which
/// is what makes shared-noise comparisons across models possible.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, Eigen::Index dim, int timesteps);

  /// x_T for samples 0..n-1. Must be called first; fixes the batch size.
  Eigen::MatrixXd initial(Eigen::Index n);

  /// z for the next reverse step, one row per sample. Throws
  /// ContractViolation after timesteps-1 pulls (the t = 0 step takes no
  /// noise).
  Eigen::MatrixXd step_noise();

  std::uint64_t seed() const { return seed_; }
  int steps_drawn() const { return steps_drawn_; }

 private:
  std::uint64_t seed_;
  Eigen::Index dim_;
  int timesteps_;
  int steps_drawn_ = 0;
  bool initial_drawn_ = false;
  std::vector<Rng> streams_;
};

/// Batch denoiser: model output for a whole batch at one shared timestep.
using BatchDenoiser = std::function<Eigen::MatrixXd(const Eigen::MatrixXd& xt, int t)>;

/// Runs the full reverse chain for n samples. Identical noise stream and
/// identical model give bitwise identical outputs.
Eigen::MatrixXd generate(const BatchDenoiser& model, const NoiseSchedule& sched,
                         PredictionTarget target, NoiseStream& noise, Eigen::Index n);

/// Convenience overload constructing the stream from a seed.
Eigen::MatrixXd generate(const BatchDenoiser& model, const NoiseSchedule& sched,
                         PredictionTarget target, std::uint64_t seed, Eigen::Index n,
                         Eigen::Index dim);

}  // namespace dmlab
