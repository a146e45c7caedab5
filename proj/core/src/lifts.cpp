#include "opsplit/lifts.hpp"

#include <cmath>
#include <stdexcept>

namespace opsplit {

namespace {

void check_operator(const ResolventPtr& op, int base_dim, const char* what) {
  if (!op) throw std::invalid_argument(std::string(what) + ": null operator");
  if (op->dim() != base_dim) {
    throw std::invalid_argument(std::string(what) + ": operator dimension mismatch");
  }
}

void check_tuple(const BlockVector& x, int block_count, int base_dim, const char* what) {
  if (x.block_count() != block_count || x.block_dim() != base_dim) {
    throw std::invalid_argument(std::string(what) + ": tuple shape mismatch");
  }
  for (const Vec& b : x.blocks) ensure_finite(b, what);
}

void check_gamma(double gamma, const char* what) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument(std::string(what) + ": gamma must be positive and finite");
  }
}

}  // namespace

StandardLift::StandardLift(std::vector<ResolventPtr> ops, int dim)
    : operators(std::move(ops)), base_dim(dim) {
  if (base_dim <= 0) throw std::invalid_argument("StandardLift: dimension must be positive");
  if (operators.empty()) throw std::invalid_argument("StandardLift: at least one operator");
  for (const auto& op : operators) check_operator(op, base_dim, "StandardLift");
}

ReducedLift::ReducedLift(std::vector<ResolventPtr> block_ops, ResolventPtr coord, int dim)
    : block_operators(std::move(block_ops)), coordinator(std::move(coord)), base_dim(dim) {
  if (base_dim <= 0) throw std::invalid_argument("ReducedLift: dimension must be positive");
  if (block_operators.empty()) {
    throw std::invalid_argument("ReducedLift: at least one blockwise operator");
  }
  for (const auto& op : block_operators) check_operator(op, base_dim, "ReducedLift");
  check_operator(coordinator, base_dim, "ReducedLift coordinator");
}

BlockVector diagonal_project(const BlockVector& x) {
  if (x.block_count() == 0) throw std::invalid_argument("diagonal_project: empty tuple");
  return BlockVector::replicate(x.mean(), x.block_count());
}

BlockVector componentwise_resolvent(const StandardLift& lift, double gamma, const BlockVector& x) {
  check_gamma(gamma, "componentwise_resolvent");
  check_tuple(x, lift.operator_count(), lift.base_dim, "componentwise_resolvent");
  BlockVector out = x;
  for (int i = 0; i < lift.operator_count(); ++i) {
    out.blocks[i] = lift.operators[i]->evaluate(gamma, x.blocks[i]);
  }
  return out;
}

BlockVector blockwise_resolvent(const ReducedLift& lift, double gamma, const BlockVector& x) {
  check_gamma(gamma, "blockwise_resolvent");
  check_tuple(x, lift.block_count(), lift.base_dim, "blockwise_resolvent");
  BlockVector out = x;
  for (int i = 0; i < lift.block_count(); ++i) {
    out.blocks[i] = lift.block_operators[i]->evaluate(gamma, x.blocks[i]);
  }
  return out;
}

BlockVector coordinator_resolvent(const ReducedLift& lift, double gamma, const BlockVector& x) {
  check_gamma(gamma, "coordinator_resolvent");
  check_tuple(x, lift.block_count(), lift.base_dim, "coordinator_resolvent");
  const double scale = 1.0 / static_cast<double>(lift.block_count());
  const Vec p = lift.coordinator->evaluate(gamma * scale, x.mean());
  return BlockVector::replicate(p, lift.block_count());
}

std::vector<BlockVector> project_coordinator_set(const ResolventOperator& set_projector,
                                                 const BlockVector& x) {
  if (x.block_count() == 0 || x.block_dim() != set_projector.dim()) {
    throw std::invalid_argument("project_coordinator_set: tuple shape mismatch");
  }
  for (const Vec& b : x.blocks) ensure_finite(b, "project_coordinator_set");
  std::vector<BlockVector> out;
  for (const Vec& c : set_projector.evaluate_all(1.0, x.mean())) {
    out.push_back(BlockVector::replicate(c, x.block_count()));
  }
  return out;
}

Vec resolvent_of_sum(const ReducedLift& lift, double gamma, const Vec& x) {
  check_gamma(gamma, "resolvent_of_sum");
  if (x.size() != lift.base_dim) {
    throw std::invalid_argument("resolvent_of_sum: dimension mismatch");
  }
  ensure_finite(x, "resolvent_of_sum input");

  const int n = lift.base_dim;
  Eigen::MatrixXd total_linear = Eigen::MatrixXd::Zero(n, n);
  Vec total_shift = Vec::Zero(n);
  auto accumulate = [&](const ResolventPtr& op) {
    if (dynamic_cast<const ZeroOperator*>(op.get())) return;
    if (const auto* affine = dynamic_cast<const AffineResolvent*>(op.get())) {
      total_linear += affine->linear_part();
      total_shift += affine->constant_part();
      return;
    }
    throw std::invalid_argument("resolvent_of_sum: supported for affine or zero operators only");
  };
  for (const auto& op : lift.block_operators) accumulate(op);
  accumulate(lift.coordinator);

  const double scale = gamma / static_cast<double>(lift.block_count());
  return AffineResolvent(std::move(total_linear), std::move(total_shift)).evaluate(scale, x);
}

}  // namespace opsplit
