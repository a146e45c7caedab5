#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opsplit/solvers.hpp"

#include <Eigen/Dense>

#include <random>
#include <stdexcept>
#include <vector>

using namespace opsplit;

namespace {

Vec scalar(double v) {
  Vec x(1);
  x << v;
  return x;
}

Vec rand_vec(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

ResolventPtr interval_op(double lo, double hi) {
  return std::make_shared<BoxProjection>(BoxSet::interval(lo, hi));
}

double interval_overshoot(double lo, double hi, double v) {
  if (v < lo) return lo - v;
  if (v > hi) return v - hi;
  return 0.0;
}

struct MonitorLog {
  std::vector<int> ks;
  std::vector<Vec> points;
  std::function<void(int, const Vec&)> hook() {
    return [this](int k, const Vec& p) {
      ks.push_back(k);
      points.push_back(p);
    };
  }
};

}  // namespace

TEST_CASE("two-interval run follows the hand-computed trace exactly") {
  const ReducedLift lift({interval_op(0.0, 2.0)}, interval_op(1.0, 3.0), 1);
  SolverConfig config;  // gamma 1, lambda 1, epsilon 1e-6

  MonitorLog log;
  RunControl control;
  control.on_monitor = log.hook();

  const SolverTrace trace =
      reduced_dr_run(lift, config, BlockVector::replicate(scalar(0.5), 1), control);

  // p_0 = clamp(0.5) = 1, next state 0.5 + (clamp(1.5) - 1) = 1, p_1 = 1.
  CHECK(trace.converged);
  CHECK(trace.iterations == 1);
  REQUIRE(trace.residuals.size() == 1);
  CHECK(trace.residuals[0] == 0.0);
  CHECK(trace.final_p[0] == 1.0);

  REQUIRE(log.ks.size() == 2);  // monitored once per iteration, including the last
  CHECK(log.ks[0] == 0);
  CHECK(log.ks[1] == 1);
  CHECK(log.points[0][0] == 1.0);
  CHECK(log.points[1][0] == 1.0);
}

TEST_CASE("standard-lift run monitors the block mean and stops on its trace") {
  const StandardLift lift({interval_op(0.0, 2.0), interval_op(1.0, 3.0)}, 1);
  SolverConfig config;

  BlockVector x0(std::vector<Vec>{scalar(0.0), scalar(3.0)});
  const SolverTrace trace = standard_dr_run(lift, config, x0);

  // Mean starts at 1.5 and the update leaves it there.
  CHECK(trace.converged);
  CHECK(trace.iterations == 1);
  REQUIRE(trace.residuals.size() == 1);
  CHECK(trace.residuals[0] == 0.0);
  CHECK(trace.final_p[0] == 1.5);
}

TEST_CASE("reduced run with one block reproduces the classical two-operator iteration") {
  auto op_block = interval_op(-1.0, 0.5);
  auto op_coord = interval_op(0.25, 3.0);

  SolverConfig config;
  config.gamma = 0.8;
  config.lambda = 1.4;
  config.epsilon = 1e-10;

  MonitorLog log;
  RunControl control;
  control.on_monitor = log.hook();
  const ReducedLift lift({op_block}, op_coord, 1);
  const SolverTrace trace =
      reduced_dr_run(lift, config, BlockVector::replicate(scalar(2.0), 1), control);

  // Inline reference: p = J_B(x), z = J_A(2p - x), x += lambda (z - p).
  Vec x = scalar(2.0);
  for (std::size_t k = 0; k < log.points.size(); ++k) {
    const Vec p = op_coord->evaluate(config.gamma, x / 1.0);
    CHECK(log.points[k] == p);
    const Vec z = op_block->evaluate(config.gamma, 2.0 * p - x);
    x += config.lambda * (z - p);
  }
  CHECK(trace.converged);
  CHECK(trace.final_p == log.points.back());
}

TEST_CASE("three-operator scheme: identity fixed point and interval feasibility") {
  const ZeroOperator zero(2);
  SolverConfig config;

  const Vec x0 = (Vec(2) << 2.0, -1.0).finished();
  const Vec y0 = (Vec(2) << 3.0, 4.0).finished();
  const SolverTrace frozen = ryu_run(zero, zero, zero, config, x0, y0);
  // All resolvents are the identity, so w = x throughout and y collapses once.
  CHECK(frozen.converged);
  CHECK(frozen.iterations == 1);
  CHECK(frozen.final_p == x0);

  const auto a = interval_op(0.0, 2.0);
  const auto b = interval_op(1.0, 3.0);
  const auto c = interval_op(0.5, 2.5);
  // Incommensurate starts: with integer data the monitored projection can
  // repeat exactly for one step mid-flight and trip the Cauchy rule early.
  config.epsilon = 1e-12;
  const SolverTrace t = ryu_run(*a, *b, *c, config, scalar(-3.7), scalar(6.31));
  CHECK(t.converged);
  const double v = t.final_p[0];
  CHECK(interval_overshoot(1.0, 2.0, v) <= 1e-8);  // the common segment
}

TEST_CASE("chain iteration degenerates to the two-operator recursion for r = 2") {
  auto op_a = interval_op(0.0, 2.0);
  auto op_b = interval_op(1.5, 4.0);

  SolverConfig config;
  config.gamma = 1.3;
  config.lambda = 0.7;
  config.epsilon = 1e-11;

  MonitorLog log;
  RunControl control;
  control.on_monitor = log.hook();
  const SolverTrace trace = malitsky_tam_run({op_a, op_b}, config,
                                             BlockVector::replicate(scalar(-3.0), 1), control);

  Vec z = scalar(-3.0);
  for (std::size_t k = 0; k < log.points.size(); ++k) {
    const Vec x1 = op_a->evaluate(config.gamma, z);
    const Vec x2 = op_b->evaluate(config.gamma, x1 + x1 - z);
    CHECK(log.points[k] == x2);
    z += config.lambda * (x2 - x1);
  }
  CHECK(trace.converged);
  CHECK(interval_overshoot(1.5, 2.0, trace.final_p[0]) <= 1e-8);
}

TEST_CASE("chain iteration over three intervals lands in the common segment") {
  SolverConfig config;
  config.lambda = 0.5;
  config.epsilon = 1e-12;

  const std::vector<ResolventPtr> ops = {interval_op(0.0, 2.0), interval_op(1.0, 3.0),
                                         interval_op(0.5, 2.5)};
  // A start inside the operative range: from far away every clamp saturates,
  // the monitored value sits still, and the Cauchy rule trips prematurely.
  BlockVector z0(std::vector<Vec>{scalar(0.23), scalar(0.81)});
  const SolverTrace trace = malitsky_tam_run(ops, config, z0);
  CHECK(trace.converged);
  CHECK(interval_overshoot(1.0, 2.0, trace.final_p[0]) <= 1e-8);
}

TEST_CASE("anchored variant converges to the aggregated resolvent at the anchor") {
  Eigen::MatrixXd one(1, 1);
  one << 1.0;
  auto ident = std::make_shared<AffineResolvent>(one, Vec::Zero(1));

  // Two identity operators, anchor 4: the limit solves (1 + 2) p = 4.
  const ReducedLift pair_lift({ident}, ident, 1);
  SolverConfig config;
  config.anchor = scalar(4.0);
  config.epsilon = 1e-12;
  SolverTrace trace = aamr_run(pair_lift, config, BlockVector::replicate(scalar(0.0), 1));
  CHECK(trace.converged);
  CHECK(std::abs(trace.final_p[0] - 4.0 / 3.0) <= 1e-8);
  CHECK(std::abs(trace.final_p[0] - resolvent_of_sum(pair_lift, config.gamma, config.anchor)[0]) <=
        1e-8);

  // Zero operators: the aggregated resolvent is the identity, so the
  // monitored point homes in on the anchor itself.
  auto zero = std::make_shared<ZeroOperator>(2);
  const ReducedLift zero_lift({zero, zero}, zero, 2);
  SolverConfig zc;
  zc.anchor = (Vec(2) << -1.0, 2.5).finished();
  zc.epsilon = 1e-12;
  trace = aamr_run(zero_lift, zc, BlockVector::replicate(Vec::Zero(2), 2));
  CHECK(trace.converged);
  CHECK((trace.final_p - zc.anchor).norm() <= 1e-8);

  // Random affine families, blend weight 1/2: limit matches the direct solve.
  std::mt19937_64 rng(53);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    const int n = 2 + trial;
    const int r = 2 + trial % 2;
    std::vector<ResolventPtr> ops;
    for (int i = 0; i < r; ++i) {
      Eigen::MatrixXd m(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) m(a, b) = g(rng);
      m = (m.transpose() * m + 0.3 * Eigen::MatrixXd::Identity(n, n)).eval();
      ops.push_back(std::make_shared<AffineResolvent>(m, rand_vec(rng, n, -1.0, 1.0)));
    }
    ResolventPtr coord = ops.back();
    ops.pop_back();
    const ReducedLift lift(std::move(ops), coord, n);

    SolverConfig ac;
    ac.gamma = 0.8;
    ac.anchor = rand_vec(rng, n, -2.0, 2.0);
    ac.epsilon = 1e-11;
    ac.max_iter = 500000;
    const SolverTrace at = aamr_run(lift, ac, BlockVector::replicate(Vec::Zero(n), r - 1));
    CHECK(at.converged);
    CHECK((at.final_p - resolvent_of_sum(lift, ac.gamma, ac.anchor)).norm() <= 1e-6);
  }
}

TEST_CASE("relaxation and parameter gates") {
  const ReducedLift lift({interval_op(0.0, 2.0)}, interval_op(1.0, 3.0), 1);
  const StandardLift std_lift({interval_op(0.0, 2.0), interval_op(1.0, 3.0)}, 1);
  const BlockVector x1 = BlockVector::replicate(scalar(0.5), 1);
  const BlockVector x2 = BlockVector::replicate(scalar(0.5), 2);

  SolverConfig config;

  SUBCASE("averaged iterations accept (0, 2) and gate the endpoint") {
    config.lambda = 0.0;
    CHECK_THROWS_AS(reduced_dr_run(lift, config, x1), std::invalid_argument);
    config.lambda = 2.0;
    CHECK_THROWS_AS(reduced_dr_run(lift, config, x1), std::invalid_argument);
    CHECK_THROWS_AS(standard_dr_run(std_lift, config, x2), std::invalid_argument);
    config.assert_uniform_monotone = true;
    CHECK_NOTHROW(reduced_dr_run(lift, config, x1));
    config.lambda = 2.1;  // the assertion only unlocks the endpoint itself
    CHECK_THROWS_AS(reduced_dr_run(lift, config, x1), std::invalid_argument);
    config.assert_uniform_monotone = false;
    config.lambda = 1.999;
    CHECK_NOTHROW(standard_dr_run(std_lift, config, x2));
  }

  SUBCASE("three-operator scheme caps lambda at 1") {
    const ZeroOperator zero(1);
    config.lambda = 1.0;
    CHECK_NOTHROW(ryu_run(zero, zero, zero, config, scalar(1.0), scalar(0.0)));
    config.lambda = 1.01;
    CHECK_THROWS_AS(ryu_run(zero, zero, zero, config, scalar(1.0), scalar(0.0)),
                    std::invalid_argument);
    config.lambda = 1.0;
    const ZeroOperator other(2);
    CHECK_THROWS_AS(ryu_run(zero, zero, other, config, scalar(1.0), scalar(0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(ryu_run(zero, zero, zero, config, Vec::Zero(2), scalar(0.0)),
                    std::invalid_argument);
  }

  SUBCASE("chain iteration needs lambda strictly below 1 and two operators") {
    auto op = interval_op(0.0, 1.0);
    config.lambda = 1.0;
    CHECK_THROWS_AS(malitsky_tam_run({op, op}, config, x1), std::invalid_argument);
    config.lambda = 0.99;
    CHECK_NOTHROW(malitsky_tam_run({op, op}, config, x1));
    CHECK_THROWS_AS(malitsky_tam_run({op}, config, BlockVector::replicate(scalar(0.0), 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(malitsky_tam_run({op, nullptr}, config, x1), std::invalid_argument);
    CHECK_THROWS_AS(malitsky_tam_run({op, op}, config, x2), std::invalid_argument);
  }

  SUBCASE("anchored variant bounds and anchor shape") {
    config.anchor = scalar(1.0);
    config.lambda = 2.0;
    CHECK_NOTHROW(aamr_run(lift, config, x1));
    config.lambda = 2.01;
    CHECK_THROWS_AS(aamr_run(lift, config, x1), std::invalid_argument);
    config.lambda = 1.0;
    config.beta = 1.0;
    CHECK_THROWS_AS(aamr_run(lift, config, x1), std::invalid_argument);
    config.beta = 0.0;
    CHECK_THROWS_AS(aamr_run(lift, config, x1), std::invalid_argument);
    config.beta = 0.5;
    config.anchor = Vec::Zero(2);
    CHECK_THROWS_AS(aamr_run(lift, config, x1), std::invalid_argument);
  }

  SUBCASE("shared configuration checks") {
    config.gamma = 0.0;
    CHECK_THROWS_AS(reduced_dr_run(lift, config, x1), std::invalid_argument);
    config.gamma = 1.0;
    config.epsilon = 0.0;
    CHECK_THROWS_AS(reduced_dr_run(lift, config, x1), std::invalid_argument);
    config.epsilon = 1e-6;
    config.max_iter = 0;
    CHECK_THROWS_AS(reduced_dr_run(lift, config, x1), std::invalid_argument);
    config.max_iter = 100;
    CHECK_THROWS_AS(reduced_dr_run(lift, config, BlockVector::replicate(scalar(0.5), 2)),
                    std::invalid_argument);
    Vec bad = scalar(std::numeric_limits<double>::quiet_NaN());
    CHECK_THROWS_AS(reduced_dr_run(lift, config, BlockVector::replicate(bad, 1)),
                    std::invalid_argument);
  }
}

TEST_CASE("stopping rule boundary cases") {
  CHECK(stopping_check(scalar(1.0), scalar(1.0), 1e-300));
  CHECK_FALSE(stopping_check(scalar(0.0), scalar(0.5), 0.5));  // strict comparison
  CHECK(stopping_check(scalar(0.0), scalar(0.5), 0.5000001));
  CHECK_THROWS_AS(stopping_check(Vec::Zero(2), scalar(0.0), 1.0), std::invalid_argument);
}

TEST_CASE("iteration budget, timeout, and residual recording") {
  const ReducedLift lift({interval_op(0.0, 2.0)}, interval_op(1.0, 3.0), 1);
  const BlockVector x0 = BlockVector::replicate(scalar(0.5), 1);
  SolverConfig config;

  SUBCASE("a never-satisfied success test runs the full budget") {
    config.max_iter = 7;
    MonitorLog log;
    RunControl control;
    control.success = [](const Vec&) { return false; };
    control.on_monitor = log.hook();
    const SolverTrace trace = reduced_dr_run(lift, config, x0, control);
    CHECK_FALSE(trace.converged);
    CHECK(trace.iterations == 7);
    CHECK(trace.residuals.size() == 7);
    REQUIRE(log.ks.size() == 8);
    for (int k = 0; k < 8; ++k) CHECK(log.ks[k] == k);
    CHECK(trace.final_p == log.points.back());
  }

  SUBCASE("a success test can accept the very first monitored point") {
    RunControl control;
    control.success = [](const Vec& p) { return p[0] >= 1.0; };
    const SolverTrace trace = reduced_dr_run(lift, config, x0, control);
    CHECK(trace.converged);
    CHECK(trace.iterations == 0);
    CHECK(trace.residuals.empty());
    CHECK(trace.final_p[0] == 1.0);
  }

  SUBCASE("a zero timeout stops after the first monitored point") {
    RunControl control;
    control.timeout_secs = 0.0;
    const SolverTrace trace = reduced_dr_run(lift, config, x0, control);
    CHECK_FALSE(trace.converged);
    CHECK(trace.iterations == 0);
    CHECK(trace.final_p[0] == 1.0);
  }

  SUBCASE("residual recording can be switched off without changing the run") {
    RunControl control;
    control.record_residuals = false;
    const SolverTrace trace = reduced_dr_run(lift, config, x0, control);
    CHECK(trace.converged);
    CHECK(trace.iterations == 1);
    CHECK(trace.residuals.empty());
    CHECK(trace.final_p[0] == 1.0);
  }
}

TEST_CASE("runs are bitwise deterministic") {
  std::mt19937_64 rng(59);
  const int n = 4;
  std::vector<ResolventPtr> ops;
  for (int i = 0; i < 3; ++i) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) * (0.5 + i);
    ops.push_back(std::make_shared<AffineResolvent>(m, rand_vec(rng, n, -1.0, 1.0)));
  }
  ResolventPtr coord = ops.back();
  ops.pop_back();
  const ReducedLift lift(std::move(ops), coord, n);

  SolverConfig config;
  config.epsilon = 1e-10;
  BlockVector x0 = BlockVector::replicate(Vec::Zero(n), 2);
  for (auto& b : x0.blocks) b = rand_vec(rng, n, -1.0, 1.0);

  const SolverTrace first = reduced_dr_run(lift, config, x0);
  const SolverTrace second = reduced_dr_run(lift, config, x0);
  CHECK(first.converged);
  CHECK(first.iterations == second.iterations);
  CHECK(first.final_p == second.final_p);
  REQUIRE(first.residuals.size() == second.residuals.size());
  for (std::size_t i = 0; i < first.residuals.size(); ++i) {
    CHECK(first.residuals[i] == second.residuals[i]);
  }
}
