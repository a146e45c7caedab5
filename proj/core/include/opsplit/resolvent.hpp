#pragma once

#include "opsplit/sets.hpp"
#include "opsplit/types.hpp"

#include <Eigen/Dense>

#include <memory>
#include <vector>

namespace opsplit {

/*
 * Evaluation handle for resolvents (Id + gamma A)^{-1} of maximally monotone
 * operators A, with projectors onto closed sets as the gamma-independent
 * special case (A a normal cone). Implementations must be deterministic:
 * equal inputs give bit-identical outputs.
 *
 * evaluate() returns the canonical single-valued selection. evaluate_all()
 * exposes the full solution set where the underlying operator is genuinely
 * set-valued (projectors onto finite nonconvex sets); the default forwards
 * to the canonical selection.
 */
class ResolventOperator {
 public:
  virtual ~ResolventOperator() = default;

  virtual int dim() const = 0;

  virtual Vec evaluate(double gamma, const Vec& x) const = 0;

  virtual std::vector<Vec> evaluate_all(double gamma, const Vec& x) const {
    return {evaluate(gamma, x)};
  }
};

using ResolventPtr = std::shared_ptr<const ResolventOperator>;

/// Projector onto an axis-aligned box; resolvent of the box normal cone.
class BoxProjection final : public ResolventOperator {
 public:
  explicit BoxProjection(BoxSet box) : box_(std::move(box)) {}

  int dim() const override { return box_.dim(); }
  Vec evaluate(double, const Vec& x) const override { return project_box(box_, x); }

  const BoxSet& set() const { return box_; }

 private:
  BoxSet box_;
};

/// Projector onto a closed ball; resolvent of the ball normal cone.
class BallProjection final : public ResolventOperator {
 public:
  explicit BallProjection(BallSet ball) : ball_(std::move(ball)) {}

  int dim() const override { return ball_.dim(); }
  Vec evaluate(double, const Vec& x) const override { return project_ball(ball_, x); }

  const BallSet& set() const { return ball_; }

 private:
  BallSet ball_;
};

/// Set-valued projector onto a finite point collection. The canonical
/// selection is the lowest-index nearest point.
class FinitePointProjection final : public ResolventOperator {
 public:
  explicit FinitePointProjection(FinitePointSet set) : set_(std::move(set)) {}

  int dim() const override { return set_.dim(); }
  Vec evaluate(double, const Vec& x) const override { return project_finite_set_single(set_, x); }
  std::vector<Vec> evaluate_all(double, const Vec& x) const override {
    return project_finite_set(set_, x);
  }

  const FinitePointSet& set() const { return set_; }

 private:
  FinitePointSet set_;
};

/// Projector onto an affine set of prescribed coordinates.
class AffineFixProjection final : public ResolventOperator {
 public:
  explicit AffineFixProjection(AffineFixSet set) : set_(std::move(set)) {}

  int dim() const override { return set_.space_dim; }
  Vec evaluate(double, const Vec& x) const override { return project_affine_fix(set_, x); }

  const AffineFixSet& set() const { return set_; }

 private:
  AffineFixSet set_;
};

/// Resolvent of the affine operator x -> Mx + b with monotone linear part
/// (M + M^T positive semidefinite): solves (Id + gamma M) p = x - gamma b.
class AffineResolvent final : public ResolventOperator {
 public:
  AffineResolvent(Eigen::MatrixXd m, Vec b);

  int dim() const override { return static_cast<int>(shift_.size()); }
  Vec evaluate(double gamma, const Vec& x) const override;

  const Eigen::MatrixXd& linear_part() const { return linear_; }
  const Vec& constant_part() const { return shift_; }

 private:
  Eigen::MatrixXd linear_;
  Vec shift_;
};

/// Resolvent of the zero operator: the identity map.
class ZeroOperator final : public ResolventOperator {
 public:
  explicit ZeroOperator(int dim);

  int dim() const override { return dim_; }
  Vec evaluate(double, const Vec& x) const override;

 private:
  int dim_;
};

/// Proximity operator of the distance function to a closed convex set C,
/// given C's projector: moves x toward P_C(x) by gamma when outside the
/// gamma-neighborhood of C, otherwise lands on P_C(x).
Vec prox_distance(const ResolventOperator& projector_of_c, double gamma, const Vec& x);

/// Resolvent form of the subdifferential of the distance to a convex set.
class DistanceProx final : public ResolventOperator {
 public:
  explicit DistanceProx(ResolventPtr projector);

  int dim() const override { return projector_->dim(); }
  Vec evaluate(double gamma, const Vec& x) const override {
    return prox_distance(*projector_, gamma, x);
  }

 private:
  ResolventPtr projector_;
};

}  // namespace opsplit
