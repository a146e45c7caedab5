#include "opsplit/solvers.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace opsplit {

bool stopping_check(const Vec& p_prev, const Vec& p_next, double epsilon) {
  if (p_prev.size() != p_next.size()) {
    throw std::invalid_argument("stopping_check: dimension mismatch");
  }
  return (p_next - p_prev).norm() < epsilon;
}

namespace {

void check_config(const SolverConfig& c, const char* what) {
  if (!(c.gamma > 0.0) || !std::isfinite(c.gamma)) {
    throw std::invalid_argument(std::string(what) + ": gamma must be positive and finite");
  }
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) {
    throw std::invalid_argument(std::string(what) + ": epsilon must be positive and finite");
  }
  if (c.max_iter < 1) {
    throw std::invalid_argument(std::string(what) + ": max_iter must be at least 1");
  }
  if (!std::isfinite(c.lambda)) {
    throw std::invalid_argument(std::string(what) + ": lambda must be finite");
  }
}

void check_lambda_averaged(const SolverConfig& c, const char* what) {
  if (c.lambda > 0.0 && c.lambda < 2.0) return;
  if (c.lambda == 2.0 && c.assert_uniform_monotone) return;
  throw std::invalid_argument(std::string(what) +
                              ": lambda must lie in (0, 2); 2 itself requires the uniform "
                              "monotonicity assertion");
}

void check_tuple_shape(const BlockVector& x, int block_count, int base_dim, const char* what) {
  if (x.block_count() != block_count || x.block_dim() != base_dim) {
    throw std::invalid_argument(std::string(what) + ": tuple shape mismatch");
  }
  for (const Vec& b : x.blocks) ensure_finite(b, what);
}

// Shared driver. `step` computes the monitored point from current state and
// advances the state; the advance performed on the stopping iteration is
// discarded with the loop.
template <typename Step>
SolverTrace drive(const SolverConfig& config, const RunControl& control, Step&& step) {
  using clock = std::chrono::steady_clock;
  const auto started = clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - started).count();
  };

  SolverTrace trace;
  Vec p_prev;
  int residual_count = 0;
  for (int k = 0;; ++k) {
    Vec p = step();
    if (control.on_monitor) control.on_monitor(k, p);

    bool stop = false;
    double residual = 0.0;
    if (k >= 1) {
      residual = (p - p_prev).norm();
      ++residual_count;
      if (control.record_residuals) trace.residuals.push_back(residual);
    }
    if (control.success) {
      if (control.success(p)) {
        trace.converged = true;
        stop = true;
      }
    } else if (k >= 1 && residual < config.epsilon) {
      trace.converged = true;
      stop = true;
    }
    if (!stop && residual_count >= config.max_iter) stop = true;
    if (!stop && control.timeout_secs && elapsed() >= *control.timeout_secs) stop = true;

    if (stop) {
      trace.final_p = std::move(p);
      break;
    }
    p_prev = std::move(p);
  }
  trace.iterations = residual_count;
  trace.wall_time_secs = elapsed();
  return trace;
}

}  // namespace

SolverTrace reduced_dr_run(const ReducedLift& lift, const SolverConfig& config,
                           const BlockVector& x0, const RunControl& control) {
  check_config(config, "reduced_dr_run");
  check_lambda_averaged(config, "reduced_dr_run");
  check_tuple_shape(x0, lift.block_count(), lift.base_dim, "reduced_dr_run");

  const double coordinator_gamma = config.gamma / static_cast<double>(lift.block_count());
  BlockVector x = x0;
  return drive(config, control, [&] {
    const Vec p = lift.coordinator->evaluate(coordinator_gamma, x.mean());
    for (int i = 0; i < x.block_count(); ++i) {
      const Vec z = lift.block_operators[i]->evaluate(config.gamma, 2.0 * p - x.blocks[i]);
      x.blocks[i] += config.lambda * (z - p);
    }
    return p;
  });
}

SolverTrace standard_dr_run(const StandardLift& lift, const SolverConfig& config,
                            const BlockVector& x0, const RunControl& control) {
  check_config(config, "standard_dr_run");
  check_lambda_averaged(config, "standard_dr_run");
  check_tuple_shape(x0, lift.operator_count(), lift.base_dim, "standard_dr_run");

  BlockVector x = x0;
  return drive(config, control, [&] {
    const Vec p = x.mean();
    for (int i = 0; i < x.block_count(); ++i) {
      const Vec z = lift.operators[i]->evaluate(config.gamma, 2.0 * p - x.blocks[i]);
      x.blocks[i] += config.lambda * (z - p);
    }
    return p;
  });
}

SolverTrace ryu_run(const ResolventOperator& op_a, const ResolventOperator& op_b,
                    const ResolventOperator& op_c, const SolverConfig& config, const Vec& x0,
                    const Vec& y0, const RunControl& control) {
  check_config(config, "ryu_run");
  if (!(config.lambda > 0.0 && config.lambda <= 1.0)) {
    throw std::invalid_argument("ryu_run: lambda must lie in (0, 1]");
  }
  const int n = op_a.dim();
  if (op_b.dim() != n || op_c.dim() != n) {
    throw std::invalid_argument("ryu_run: operator dimensions differ");
  }
  if (x0.size() != n || y0.size() != n) {
    throw std::invalid_argument("ryu_run: state dimension mismatch");
  }
  ensure_finite(x0, "ryu_run x0");
  ensure_finite(y0, "ryu_run y0");

  Vec x = x0, y = y0;
  return drive(config, control, [&] {
    const Vec u = op_a.evaluate(config.gamma, x);
    const Vec v = op_b.evaluate(config.gamma, u + y);
    const Vec w = op_c.evaluate(config.gamma, u - x + v - y);
    x += config.lambda * (w - u);
    y += config.lambda * (w - v);
    return w;
  });
}

SolverTrace malitsky_tam_run(const std::vector<ResolventPtr>& operators,
                             const SolverConfig& config, const BlockVector& z0,
                             const RunControl& control) {
  check_config(config, "malitsky_tam_run");
  if (!(config.lambda > 0.0 && config.lambda < 1.0)) {
    throw std::invalid_argument("malitsky_tam_run: lambda must lie strictly in (0, 1)");
  }
  const int r = static_cast<int>(operators.size());
  if (r < 2) throw std::invalid_argument("malitsky_tam_run: at least two operators");
  for (const auto& op : operators) {
    if (!op) throw std::invalid_argument("malitsky_tam_run: null operator");
    if (op->dim() != operators.front()->dim()) {
      throw std::invalid_argument("malitsky_tam_run: operator dimensions differ");
    }
  }
  check_tuple_shape(z0, r - 1, operators.front()->dim(), "malitsky_tam_run");

  BlockVector z = z0;
  std::vector<Vec> xs(static_cast<std::size_t>(r));
  return drive(config, control, [&] {
    xs[0] = operators[0]->evaluate(config.gamma, z.blocks[0]);
    for (int i = 1; i < r - 1; ++i) {
      xs[i] = operators[i]->evaluate(config.gamma,
                                     z.blocks[i] - z.blocks[i - 1] + xs[i - 1]);
    }
    xs[r - 1] = operators[r - 1]->evaluate(config.gamma,
                                           xs[0] + xs[r - 2] - z.blocks[r - 2]);
    for (int i = 0; i < r - 1; ++i) {
      z.blocks[i] += config.lambda * (xs[i + 1] - xs[i]);
    }
    return xs[r - 1];
  });
}

SolverTrace aamr_run(const ReducedLift& lift, const SolverConfig& config, const BlockVector& x0,
                     const RunControl& control) {
  check_config(config, "aamr_run");
  if (!(config.lambda > 0.0 && config.lambda <= 2.0)) {
    throw std::invalid_argument("aamr_run: lambda must lie in (0, 2]");
  }
  if (!(config.beta > 0.0 && config.beta < 1.0)) {
    throw std::invalid_argument("aamr_run: beta must lie strictly in (0, 1)");
  }
  if (config.anchor.size() != lift.base_dim) {
    throw std::invalid_argument("aamr_run: anchor dimension mismatch");
  }
  ensure_finite(config.anchor, "aamr_run anchor");
  check_tuple_shape(x0, lift.block_count(), lift.base_dim, "aamr_run");

  const double coordinator_gamma = config.gamma / static_cast<double>(lift.block_count());
  const double beta = config.beta;
  const Vec pull = (1.0 - beta) * config.anchor;
  BlockVector x = x0;
  return drive(config, control, [&] {
    const Vec p = lift.coordinator->evaluate(coordinator_gamma, beta * x.mean() + pull);
    for (int i = 0; i < x.block_count(); ++i) {
      const Vec z = lift.block_operators[i]->evaluate(
          config.gamma, beta * (2.0 * p - x.blocks[i]) + pull);
      x.blocks[i] += config.lambda * (z - p);
    }
    return p;
  });
}

}  // namespace opsplit
