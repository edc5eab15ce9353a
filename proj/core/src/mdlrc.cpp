#include "dmlab/mdlrc.hpp"

#include <cmath>

#include "dmlab/errors.hpp"

namespace dmlab {

void MdlrcConfig::validate() const {
  if (!(beta_floor >= 0.0 && beta_floor <= beta0 && beta0 < 1.0)) {
    throw ConfigError("optimizer: need 0 <= beta_floor <= beta0 < 1");
  }
  if (!(beta2 > 0.0 && beta2 < 1.0)) throw ConfigError("optimizer: beta2 outside (0, 1)");
  if (!(l0 > 0.0)) throw ConfigError("optimizer: l0 must be positive");
  if (!(ema_rate >= 0.0 && ema_rate < 1.0)) throw ConfigError("optimizer: ema_rate outside [0, 1)");
  if (total_iterations < 1) throw ConfigError("optimizer: total_iterations must be >= 1");
  if (!(epsilon_adam > 0.0)) throw ConfigError("optimizer: epsilon_adam must be positive");
  if (weight_decay < 0.0) throw ConfigError("optimizer: weight_decay must be nonnegative");
  if (grad_clip < 0.0) throw ConfigError("optimizer: grad_clip must be nonnegative");
}

OptimizerState init_optimizer(const Eigen::VectorXd& params, const MdlrcConfig& cfg) {
  OptimizerState state;
  state.m = Eigen::VectorXd::Zero(params.size());
  state.v = Eigen::VectorXd::Zero(params.size());
  state.ema_params = params;
  state.current_beta1 = cfg.beta0;
  state.current_lr = cfg.l0;
  return state;
}

double momentum_at(double tau, const MdlrcConfig& cfg) {
  const double raw = cfg.beta0 * (1.0 - tau) / ((1.0 - cfg.beta0) + cfg.beta0 * (1.0 - tau));
  return std::max(raw, cfg.beta_floor);
}

double lr_at(double beta_t, const MdlrcConfig& cfg) {
  if (beta_t >= 1.0) throw ConfigError("lr_at: momentum must be < 1");
  return cfg.l0 * (1.0 - cfg.beta0) / (1.0 - beta_t);
}

void step(OptimizerState& state, Eigen::VectorXd& params, const Eigen::VectorXd& grad,
          const MdlrcConfig& cfg) {
  if (grad.size() != params.size() || state.m.size() != params.size()) {
    throw ContractViolation("step: state/params/grad length mismatch");
  }

  const double tau =
      static_cast<double>(state.step) / static_cast<double>(cfg.total_iterations);
  const double beta1 = cfg.momentum_decay ? momentum_at(tau, cfg) : cfg.beta0;
  const double lr = cfg.lr_compensation ? lr_at(beta1, cfg) : cfg.l0;

  Eigen::VectorXd g = grad;
  if (cfg.grad_clip > 0.0) {
    const double norm = g.norm();
    if (norm > cfg.grad_clip) g *= cfg.grad_clip / norm;
  }

  state.step += 1;
  state.beta1_product *= beta1;
  state.current_beta1 = beta1;
  state.current_lr = lr;

  state.m = beta1 * state.m + (1.0 - beta1) * g;
  state.v = cfg.beta2 * state.v + (1.0 - cfg.beta2) * g.array().square().matrix();

  const double m_corr = 1.0 - state.beta1_product;
  const double v_corr = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));

  const Eigen::ArrayXd m_hat = state.m.array() / m_corr;
  const Eigen::ArrayXd v_hat = state.v.array() / v_corr;

  const Eigen::VectorXd update =
      (lr * m_hat / (v_hat.sqrt() + cfg.epsilon_adam)).matrix() +
      (lr * cfg.weight_decay) * params;
  params -= update;

  if (!params.allFinite() || !state.m.allFinite() || !state.v.allFinite()) {
    throw DivergenceError("optimizer update produced non-finite values", state.step);
  }
}

void ema_update(OptimizerState& state, const Eigen::VectorXd& params, const MdlrcConfig& cfg) {
  if (state.ema_params.size() != params.size()) {
    throw ContractViolation("ema_update: shape mismatch");
  }
  state.ema_params = cfg.ema_rate * state.ema_params + (1.0 - cfg.ema_rate) * params;
}

}  // namespace dmlab
