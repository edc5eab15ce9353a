#pragma once

#include <Eigen/Core>

namespace dmlab {

/// Adam-family settings with the decaying-momentum extensions. The two
/// enable flags select the ablation arms: with both off, step() is the
/// plain fixed-beta1 recurrence.
struct MdlrcConfig {
  double beta0 = 0.8;           // initial momentum
  double beta2 = 0.999;         // second-moment factor
  double l0 = 1e-4;             // initial learning rate
  long long total_iterations = 20000;
  double beta_floor = 0.4;      // lower clamp on the decayed momentum
  double ema_rate = 0.9999;     // shadow-average factor
  double epsilon_adam = 1e-8;
  double weight_decay = 0.0;    // decoupled; experiments use plain Adam
  bool momentum_decay = true;
  bool lr_compensation = true;
  double grad_clip = 0.0;       // global-norm clip; 0 disables

  void validate() const;
};

struct OptimizerState {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  Eigen::VectorXd ema_params;
  long long step = 0;
  double beta1_product = 1.0;   // running product of realized beta1 values
  double current_beta1 = 0.0;
  double current_lr = 0.0;
};

/// Fresh state for a parameter vector: zero moments, EMA shadow initialized
/// to the parameters themselves.
OptimizerState init_optimizer(const Eigen::VectorXd& params, const MdlrcConfig& cfg);

/// Decayed momentum at progress tau in [0, 1]:
/// beta = beta0 * (1 - tau) / ((1 - beta0) + beta0 * (1 - tau)),
/// clamped from below at beta_floor.
double momentum_at(double tau, const MdlrcConfig& cfg);

/// Compensated learning rate l0 * (1 - beta0) / (1 - beta_t), which keeps
/// l_t * (1 - beta_t) constant as the momentum decays. Consumes the clamped
/// momentum, so the identity holds after the floor engages too.
double lr_at(double beta_t, const MdlrcConfig& cfg);

/// One optimizer step. tau = step/total_iterations selects the momentum,
/// the learning rate is compensated (both subject to their enable flags),
/// and bias correction uses the running product of the realized beta1
/// values in place of beta1^t. Throws DivergenceError on non-finite values.
void step(OptimizerState& state, Eigen::VectorXd& params, const Eigen::VectorXd& grad,
          const MdlrcConfig& cfg);

/// ema <- rate * ema + (1 - rate) * params.
void ema_update(OptimizerState& state, const Eigen::VectorXd& params, const MdlrcConfig& cfg);

}  // namespace dmlab
