#pragma once

#include "opsplit/types.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace opsplit {

/// Axis-aligned box { x : lower <= x <= upper } (componentwise).
struct BoxSet {
  Vec lower;
  Vec upper;

  BoxSet(Vec lo, Vec up);

  int dim() const { return static_cast<int>(lower.size()); }

  /// Hypercube centered at `center` with the given half side length.
  static BoxSet cube(const Vec& center, double half_side);

  /// One-dimensional interval [lo, up].
  static BoxSet interval(double lo, double up);
};

/// Closed Euclidean ball of the given radius.
struct BallSet {
  Vec center;
  double radius;

  BallSet(Vec c, double r);

  int dim() const { return static_cast<int>(center.size()); }
};

/// Finite collection of points; as a set it is closed but generally nonconvex,
/// so its projector can be multi-valued.
struct FinitePointSet {
  std::vector<Vec> points;

  explicit FinitePointSet(std::vector<Vec> pts);

  /// One-dimensional convenience: the listed scalars as points of R.
  static FinitePointSet of_scalars(std::vector<double> values);

  int dim() const { return static_cast<int>(points.front().size()); }
  int size() const { return static_cast<int>(points.size()); }
};

/// Cartesian product: every concatenation (a_i, b_j), in lexicographic order.
FinitePointSet finite_product(const FinitePointSet& a, const FinitePointSet& b);

/// Affine set prescribing fixed values at selected coordinates, the remaining
/// coordinates free.
struct AffineFixSet {
  int space_dim;
  std::vector<std::pair<int, double>> fixed;  // (index, value), indices unique

  AffineFixSet(int dim, std::vector<std::pair<int, double>> entries);
};

/// Affine subspace represented by a point on it and the orthogonal projector
/// onto its direction space. Storing the projector matrix rather than a basis
/// keeps structured cases exact: the diagonal's projector is blockwise
/// averaging with entries 1/block_count, so block means come out exact where
/// a 1/sqrt(count) basis would round them.
struct AffineSubspace {
  Vec offset;
  Eigen::MatrixXd projector;  // symmetric, idempotent

  AffineSubspace(Vec off, Eigen::MatrixXd proj);

  int dim() const { return static_cast<int>(offset.size()); }

  Vec project(const Vec& x) const;
  bool contains(const Vec& x, double tol = 1e-12) const;

  /// Subspace spanned by orthonormal direction columns through `off`.
  static AffineSubspace from_basis(const Vec& off, const Eigen::MatrixXd& orthonormal_dirs);

  /// Diagonal { (x, ..., x) } of the product of `block_count` copies of a
  /// `block_dim`-dimensional space, as a subspace of the flattened space.
  static AffineSubspace diagonal(int block_count, int block_dim);
};

Vec project_box(const BoxSet& box, const Vec& x);
Vec project_ball(const BallSet& ball, const Vec& x);
Vec project_affine_fix(const AffineFixSet& set, const Vec& x);

double distance_to_box(const BoxSet& box, const Vec& x);
double distance_to_ball(const BallSet& ball, const Vec& x);

/// All points of the set at minimal distance from x, in stored order.
/// Ties are detected up to a tiny relative slack on the distance.
std::vector<Vec> project_finite_set(const FinitePointSet& set, const Vec& x);

/// Lowest-index member of project_finite_set: the canonical selection.
Vec project_finite_set_single(const FinitePointSet& set, const Vec& x);

/// Nearest standard basis vector of R^9; the largest entry wins, lowest index
/// on ties. Throws if v is not 9-dimensional.
Vec nearest_basis_vector(const Vec& v);

/// Projection routes onto the intersection of a finite set C with an affine
/// subspace D. `nearest_in_intersection` projects onto C (intersect) D by
/// enumeration; `composition_candidates` is the set-valued P_C(P_D(x));
/// `composition_refined` keeps the candidates lying in D. The two routes
/// agree exactly when the refined set is nonempty, while the unrefined
/// composition can be a strict superset.
struct CompositionCheck {
  std::vector<Vec> nearest_in_intersection;
  std::vector<Vec> composition_candidates;
  std::vector<Vec> composition_refined;
  bool hypothesis_holds = false;
};

CompositionCheck projection_composition_check(const FinitePointSet& c, const AffineSubspace& d,
                                              const Vec& x);

}  // namespace opsplit
