#include "opsplit/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace opsplit {

BoxSet::BoxSet(Vec lo, Vec up) : lower(std::move(lo)), upper(std::move(up)) {
  if (lower.size() == 0 || lower.size() != upper.size()) {
    throw std::invalid_argument("BoxSet: bounds must be nonempty and equally sized");
  }
  ensure_finite(lower, "BoxSet lower");
  ensure_finite(upper, "BoxSet upper");
  if ((lower.array() > upper.array()).any()) {
    throw std::invalid_argument("BoxSet: lower bound exceeds upper bound");
  }
}

BoxSet BoxSet::cube(const Vec& center, double half_side) {
  if (!(half_side >= 0.0) || !std::isfinite(half_side)) {
    throw std::invalid_argument("BoxSet::cube: half side must be finite and nonnegative");
  }
  return BoxSet(center.array() - half_side, center.array() + half_side);
}

BoxSet BoxSet::interval(double lo, double up) {
  Vec l(1), u(1);
  l << lo;
  u << up;
  return BoxSet(std::move(l), std::move(u));
}

BallSet::BallSet(Vec c, double r) : center(std::move(c)), radius(r) {
  if (center.size() == 0) {
    throw std::invalid_argument("BallSet: center must be nonempty");
  }
  ensure_finite(center, "BallSet center");
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("BallSet: radius must be finite and nonnegative");
  }
}

FinitePointSet::FinitePointSet(std::vector<Vec> pts) : points(std::move(pts)) {
  if (points.empty()) {
    throw std::invalid_argument("FinitePointSet: at least one point required");
  }
  const auto dim = points.front().size();
  if (dim == 0) {
    throw std::invalid_argument("FinitePointSet: points must be nonempty vectors");
  }
  for (const Vec& p : points) {
    if (p.size() != dim) {
      throw std::invalid_argument("FinitePointSet: points must share one dimension");
    }
    ensure_finite(p, "FinitePointSet point");
  }
}

FinitePointSet FinitePointSet::of_scalars(std::vector<double> values) {
  std::vector<Vec> pts;
  pts.reserve(values.size());
  for (double v : values) {
    Vec p(1);
    p << v;
    pts.push_back(std::move(p));
  }
  return FinitePointSet(std::move(pts));
}

FinitePointSet finite_product(const FinitePointSet& a, const FinitePointSet& b) {
  std::vector<Vec> pts;
  pts.reserve(a.points.size() * b.points.size());
  for (const Vec& pa : a.points) {
    for (const Vec& pb : b.points) {
      Vec p(pa.size() + pb.size());
      p << pa, pb;
      pts.push_back(std::move(p));
    }
  }
  return FinitePointSet(std::move(pts));
}

AffineFixSet::AffineFixSet(int dim, std::vector<std::pair<int, double>> entries)
    : space_dim(dim), fixed(std::move(entries)) {
  if (space_dim <= 0) {
    throw std::invalid_argument("AffineFixSet: dimension must be positive");
  }
  std::vector<int> seen;
  seen.reserve(fixed.size());
  for (const auto& [idx, value] : fixed) {
    if (idx < 0 || idx >= space_dim) {
      throw std::invalid_argument("AffineFixSet: index out of range");
    }
    if (!std::isfinite(value)) {
      throw std::invalid_argument("AffineFixSet: prescribed value must be finite");
    }
    seen.push_back(idx);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw std::invalid_argument("AffineFixSet: duplicate index");
  }
}

AffineSubspace::AffineSubspace(Vec off, Eigen::MatrixXd proj)
    : offset(std::move(off)), projector(std::move(proj)) {
  const auto n = offset.size();
  if (n == 0 || projector.rows() != n || projector.cols() != n) {
    throw std::invalid_argument("AffineSubspace: projector must be square of the offset's size");
  }
  ensure_finite(offset, "AffineSubspace offset");
  if (!projector.allFinite() || (projector - projector.transpose()).cwiseAbs().maxCoeff() > 1e-10 ||
      (projector * projector - projector).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("AffineSubspace: matrix is not an orthogonal projector");
  }
}

Vec AffineSubspace::project(const Vec& x) const {
  if (x.size() != offset.size()) {
    throw std::invalid_argument("AffineSubspace::project: dimension mismatch");
  }
  return offset + projector * (x - offset);
}

bool AffineSubspace::contains(const Vec& x, double tol) const {
  return (project(x) - x).norm() <= tol;
}

AffineSubspace AffineSubspace::from_basis(const Vec& off, const Eigen::MatrixXd& orthonormal_dirs) {
  if (orthonormal_dirs.rows() != off.size()) {
    throw std::invalid_argument("AffineSubspace::from_basis: direction rows must match offset size");
  }
  const auto k = orthonormal_dirs.cols();
  if (k > 0) {
    Eigen::MatrixXd gram = orthonormal_dirs.transpose() * orthonormal_dirs;
    if ((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-10) {
      throw std::invalid_argument("AffineSubspace::from_basis: columns are not orthonormal");
    }
  }
  return AffineSubspace(off, orthonormal_dirs * orthonormal_dirs.transpose());
}

AffineSubspace AffineSubspace::diagonal(int block_count, int block_dim) {
  if (block_count < 1 || block_dim < 1) {
    throw std::invalid_argument("AffineSubspace::diagonal: counts must be positive");
  }
  const int n = block_count * block_dim;
  // Blockwise averaging matrix; entries 1/block_count are exact.
  Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(n, n);
  const double w = 1.0 / static_cast<double>(block_count);
  for (int i = 0; i < block_count; ++i) {
    for (int j = 0; j < block_count; ++j) {
      for (int d = 0; d < block_dim; ++d) {
        proj(i * block_dim + d, j * block_dim + d) = w;
      }
    }
  }
  return AffineSubspace(Vec::Zero(n), std::move(proj));
}

Vec project_box(const BoxSet& box, const Vec& x) {
  if (x.size() != box.lower.size()) {
    throw std::invalid_argument("project_box: dimension mismatch");
  }
  ensure_finite(x, "project_box input");
  return x.cwiseMax(box.lower).cwiseMin(box.upper);
}

Vec project_ball(const BallSet& ball, const Vec& x) {
  if (x.size() != ball.center.size()) {
    throw std::invalid_argument("project_ball: dimension mismatch");
  }
  ensure_finite(x, "project_ball input");
  const Vec d = x - ball.center;
  const double dist = d.norm();
  if (dist <= ball.radius) return x;
  return ball.center + (ball.radius / dist) * d;
}

Vec project_affine_fix(const AffineFixSet& set, const Vec& x) {
  if (x.size() != set.space_dim) {
    throw std::invalid_argument("project_affine_fix: dimension mismatch");
  }
  ensure_finite(x, "project_affine_fix input");
  Vec p = x;
  for (const auto& [idx, value] : set.fixed) p[idx] = value;
  return p;
}

double distance_to_box(const BoxSet& box, const Vec& x) {
  return (x - project_box(box, x)).norm();
}

double distance_to_ball(const BallSet& ball, const Vec& x) {
  return std::max(0.0, (x - ball.center).norm() - ball.radius);
}

namespace {

// Indices of `points` at minimal distance to x, ties up to a tiny relative slack.
std::vector<std::size_t> nearest_indices(const std::vector<Vec>& points, const Vec& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& p : points) best = std::min(best, (p - x).squaredNorm());
  const double slack = best * 1e-12 + 1e-300;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if ((points[i] - x).squaredNorm() <= best + slack) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<Vec> project_finite_set(const FinitePointSet& set, const Vec& x) {
  if (x.size() != set.points.front().size()) {
    throw std::invalid_argument("project_finite_set: dimension mismatch");
  }
  ensure_finite(x, "project_finite_set input");
  std::vector<Vec> out;
  for (std::size_t i : nearest_indices(set.points, x)) out.push_back(set.points[i]);
  return out;
}

Vec project_finite_set_single(const FinitePointSet& set, const Vec& x) {
  return project_finite_set(set, x).front();
}

Vec nearest_basis_vector(const Vec& v) {
  if (v.size() != 9) {
    throw std::invalid_argument("nearest_basis_vector: expected a 9-dimensional input");
  }
  ensure_finite(v, "nearest_basis_vector input");
  // Nearest e_i maximizes v_i; Eigen reports the first (lowest) maximizer.
  Eigen::Index arg = 0;
  v.maxCoeff(&arg);
  Vec e = Vec::Zero(9);
  e[arg] = 1.0;
  return e;
}

CompositionCheck projection_composition_check(const FinitePointSet& c, const AffineSubspace& d,
                                              const Vec& x) {
  if (c.dim() != d.dim() || x.size() != d.dim()) {
    throw std::invalid_argument("projection_composition_check: dimension mismatch");
  }
  CompositionCheck out;

  std::vector<Vec> members_in_d;
  for (const Vec& p : c.points) {
    if (d.contains(p)) members_in_d.push_back(p);
  }
  if (!members_in_d.empty()) {
    for (std::size_t i : nearest_indices(members_in_d, x)) {
      out.nearest_in_intersection.push_back(members_in_d[i]);
    }
  }

  out.composition_candidates = project_finite_set(c, d.project(x));
  for (const Vec& p : out.composition_candidates) {
    if (d.contains(p)) out.composition_refined.push_back(p);
  }
  out.hypothesis_holds = !out.composition_refined.empty();
  return out;
}

}  // namespace opsplit
