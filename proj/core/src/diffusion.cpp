#include "dmlab/diffusion.hpp"

#include <cmath>

#include "dmlab/errors.hpp"

namespace dmlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCosineOffset = 0.008;
constexpr double kMaxBeta = 0.999;

double cosine_alpha_bar(double u) {
  const double arg = (u + kCosineOffset) / (1.0 + kCosineOffset) * kPi / 2.0;
  const double c = std::cos(arg);
  return c * c;
}

}  // namespace

ScheduleKind schedule_kind_from_string(const std::string& name) {
  if (name == "linear") return ScheduleKind::kLinear;
  if (name == "cosine") return ScheduleKind::kCosine;
  throw ConfigError("unknown schedule kind: " + name);
}

std::string to_string(ScheduleKind kind) {
  return kind == ScheduleKind::kLinear ? "linear" : "cosine";
}

PredictionTarget prediction_target_from_string(const std::string& name) {
  if (name == "epsilon" || name == "eps") return PredictionTarget::kEpsilon;
  if (name == "x0") return PredictionTarget::kX0;
  throw ConfigError("unknown prediction target: " + name);
}

std::string to_string(PredictionTarget target) {
  return target == PredictionTarget::kEpsilon ? "epsilon" : "x0";
}

NoiseSchedule build_schedule(ScheduleKind kind, int timesteps) {
  if (timesteps < 2) throw ConfigError("schedule needs at least 2 timesteps");

  NoiseSchedule sched;
  sched.kind = kind;
  sched.timesteps = timesteps;
  sched.betas.resize(timesteps);

  if (kind == ScheduleKind::kLinear) {
    const double lo = 1e-4;
    const double hi = 0.02;
    for (int t = 0; t < timesteps; ++t) {
      sched.betas[t] = lo + (hi - lo) * static_cast<double>(t) / (timesteps - 1);
    }
  } else {
    const double t_count = timesteps;
    for (int t = 0; t < timesteps; ++t) {
      const double ratio = cosine_alpha_bar((t + 1) / t_count) / cosine_alpha_bar(t / t_count);
      sched.betas[t] = std::min(1.0 - ratio, kMaxBeta);
    }
  }

  sched.alphas = 1.0 - sched.betas.array();
  sched.alpha_bars.resize(timesteps);
  double running = 1.0;
  for (int t = 0; t < timesteps; ++t) {
    running *= sched.alphas[t];
    sched.alpha_bars[t] = running;
  }
  return sched;
}

namespace {

void check_t(const NoiseSchedule& sched, int t) {
  if (t < 0 || t >= sched.timesteps) {
    throw ContractViolation("timestep " + std::to_string(t) + " out of range [0, " +
                            std::to_string(sched.timesteps) + ")");
  }
}

}  // namespace

Eigen::VectorXd forward_sample(const NoiseSchedule& sched, const Eigen::VectorXd& x0, int t,
                               const Eigen::VectorXd& eps) {
  check_t(sched, t);
  if (x0.size() != eps.size()) throw ContractViolation("forward_sample: x0/eps size mismatch");
  const double ab = sched.alpha_bars[t];
  return std::sqrt(ab) * x0 + std::sqrt(1.0 - ab) * eps;
}

Eigen::MatrixXd forward_sample(const NoiseSchedule& sched, const Eigen::MatrixXd& x0,
                               const std::vector<int>& t, const Eigen::MatrixXd& eps) {
  if (x0.rows() != eps.rows() || x0.cols() != eps.cols() ||
      x0.rows() != static_cast<Eigen::Index>(t.size())) {
    throw ContractViolation("forward_sample: batch shape mismatch");
  }
  Eigen::MatrixXd xt(x0.rows(), x0.cols());
  for (Eigen::Index i = 0; i < x0.rows(); ++i) {
    check_t(sched, t[i]);
    const double ab = sched.alpha_bars[t[i]];
    xt.row(i) = std::sqrt(ab) * x0.row(i) + std::sqrt(1.0 - ab) * eps.row(i);
  }
  return xt;
}

DiffusionBatch make_diffusion_batch(const NoiseSchedule& sched, Eigen::MatrixXd x0,
                                    std::vector<int> t, Eigen::MatrixXd eps) {
  DiffusionBatch batch;
  batch.xt = forward_sample(sched, x0, t, eps);
  batch.x0 = std::move(x0);
  batch.t = std::move(t);
  batch.eps = std::move(eps);
  return batch;
}

double simple_loss(const Eigen::MatrixXd& eps_hat, const Eigen::MatrixXd& eps) {
  if (eps_hat.rows() != eps.rows() || eps_hat.cols() != eps.cols()) {
    throw ContractViolation("simple_loss: shape mismatch");
  }
  return (eps_hat - eps).array().square().sum() / static_cast<double>(eps.size());
}

double x0_loss(const Eigen::MatrixXd& x0_hat, const Eigen::MatrixXd& x0) {
  if (x0_hat.rows() != x0.rows() || x0_hat.cols() != x0.cols()) {
    throw ContractViolation("x0_loss: shape mismatch");
  }
  return (x0_hat - x0).array().square().sum() / static_cast<double>(x0.size());
}

double posterior_sigma(const NoiseSchedule& sched, int t) {
  check_t(sched, t);
  const double beta_tilde =
      sched.betas[t] * (1.0 - sched.alpha_bar_prev(t)) / (1.0 - sched.alpha_bars[t]);
  return std::sqrt(beta_tilde);
}

Eigen::MatrixXd reverse_step(const NoiseSchedule& sched, PredictionTarget target,
                             const Eigen::MatrixXd& model_output, const Eigen::MatrixXd& xt,
                             int t, const Eigen::MatrixXd& z) {
  check_t(sched, t);
  if (model_output.rows() != xt.rows() || model_output.cols() != xt.cols() ||
      z.rows() != xt.rows() || z.cols() != xt.cols()) {
    throw ContractViolation("reverse_step: shape mismatch");
  }

  const double beta = sched.betas[t];
  const double alpha = sched.alphas[t];
  const double ab = sched.alpha_bars[t];
  const double ab_prev = sched.alpha_bar_prev(t);

  Eigen::MatrixXd mean;
  if (target == PredictionTarget::kEpsilon) {
    mean = (xt - (beta / std::sqrt(1.0 - ab)) * model_output) / std::sqrt(alpha);
  } else {
    const double coef_x0 = std::sqrt(ab_prev) * beta / (1.0 - ab);
    const double coef_xt = std::sqrt(alpha) * (1.0 - ab_prev) / (1.0 - ab);
    mean = coef_x0 * model_output + coef_xt * xt;
  }

  const double sigma = posterior_sigma(sched, t);
  if (sigma == 0.0) return mean;
  return mean + sigma * z;
}

Eigen::VectorXd reverse_step(const NoiseSchedule& sched, PredictionTarget target,
                             const Eigen::VectorXd& model_output, const Eigen::VectorXd& xt,
                             int t, const Eigen::VectorXd& z) {
  const Eigen::MatrixXd out = reverse_step(sched, target, Eigen::MatrixXd(model_output.transpose()),
                                           Eigen::MatrixXd(xt.transpose()), t,
                                           Eigen::MatrixXd(z.transpose()));
  return out.row(0).transpose();
}

NoiseStream::NoiseStream(std::uint64_t seed, Eigen::Index dim, int timesteps)
    : seed_(seed), dim_(dim), timesteps_(timesteps) {
  if (dim < 1 || timesteps < 1) throw ContractViolation("NoiseStream: bad dimensions");
}

Eigen::MatrixXd NoiseStream::initial(Eigen::Index n) {
  if (initial_drawn_) throw ContractViolation("NoiseStream: initial noise already drawn");
  initial_drawn_ = true;
  streams_.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    streams_.emplace_back(mix_seed(seed_, static_cast<std::uint64_t>(j)));
  }
  Eigen::MatrixXd x(n, dim_);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < dim_; ++k) x(j, k) = streams_[static_cast<std::size_t>(j)].normal();
  }
  return x;
}

Eigen::MatrixXd NoiseStream::step_noise() {
  if (!initial_drawn_) throw ContractViolation("NoiseStream: initial noise not drawn yet");
  if (steps_drawn_ >= timesteps_ - 1) {
    throw ContractViolation("NoiseStream: exhausted after " + std::to_string(steps_drawn_) +
                            " step draws");
  }
  ++steps_drawn_;
  const Eigen::Index n = static_cast<Eigen::Index>(streams_.size());
  Eigen::MatrixXd z(n, dim_);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < dim_; ++k) z(j, k) = streams_[static_cast<std::size_t>(j)].normal();
  }
  return z;
}

Eigen::MatrixXd generate(const BatchDenoiser& model, const NoiseSchedule& sched,
                         PredictionTarget target, NoiseStream& noise, Eigen::Index n) {
  if (n == 0) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd x = noise.initial(n);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(x.rows(), x.cols());
  for (int t = sched.timesteps - 1; t >= 0; --t) {
    const Eigen::MatrixXd out = model(x, t);
    if (t > 0) {
      x = reverse_step(sched, target, out, x, t, noise.step_noise());
    } else {
      x = reverse_step(sched, target, out, x, t, zero);
    }
  }
  return x;
}

Eigen::MatrixXd generate(const BatchDenoiser& model, const NoiseSchedule& sched,
                         PredictionTarget target, std::uint64_t seed, Eigen::Index n,
                         Eigen::Index dim) {
  NoiseStream stream(seed, dim, sched.timesteps);
  return generate(model, sched, target, stream, n);
}

}  // namespace dmlab
