#include "opsplit/resolvent.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace opsplit {

namespace {

void ensure_positive_gamma(double gamma, const char* what) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument(std::string(what) + ": gamma must be positive and finite");
  }
}

}  // namespace

AffineResolvent::AffineResolvent(Eigen::MatrixXd m, Vec b)
    : linear_(std::move(m)), shift_(std::move(b)) {
  const auto n = shift_.size();
  if (n == 0 || linear_.rows() != n || linear_.cols() != n) {
    throw std::invalid_argument("AffineResolvent: matrix must be square of the shift's size");
  }
  if (!linear_.allFinite()) {
    throw std::invalid_argument("AffineResolvent: non-finite matrix entry");
  }
  ensure_finite(shift_, "AffineResolvent shift");
  // Monotonicity of x -> Mx + b is positive semidefiniteness of M + M^T.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(linear_ + linear_.transpose());
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() < -1e-9) {
    throw std::invalid_argument("AffineResolvent: linear part is not monotone");
  }
}

Vec AffineResolvent::evaluate(double gamma, const Vec& x) const {
  ensure_positive_gamma(gamma, "AffineResolvent::evaluate");
  if (x.size() != shift_.size()) {
    throw std::invalid_argument("AffineResolvent::evaluate: dimension mismatch");
  }
  ensure_finite(x, "AffineResolvent::evaluate input");
  const auto n = shift_.size();
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) + gamma * linear_;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible()) {
    throw std::runtime_error("AffineResolvent::evaluate: singular resolvent system");
  }
  return lu.solve(x - gamma * shift_);
}

ZeroOperator::ZeroOperator(int dim) : dim_(dim) {
  if (dim_ <= 0) {
    throw std::invalid_argument("ZeroOperator: dimension must be positive");
  }
}

Vec ZeroOperator::evaluate(double, const Vec& x) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("ZeroOperator::evaluate: dimension mismatch");
  }
  return x;
}

Vec prox_distance(const ResolventOperator& projector_of_c, double gamma, const Vec& x) {
  ensure_positive_gamma(gamma, "prox_distance");
  if (x.size() != projector_of_c.dim()) {
    throw std::invalid_argument("prox_distance: dimension mismatch");
  }
  ensure_finite(x, "prox_distance input");
  const Vec projected = projector_of_c.evaluate(gamma, x);
  const double dist = (x - projected).norm();
  if (dist > gamma) {
    return x + (gamma / dist) * (projected - x);
  }
  return projected;
}

DistanceProx::DistanceProx(ResolventPtr projector) : projector_(std::move(projector)) {
  if (!projector_) {
    throw std::invalid_argument("DistanceProx: projector required");
  }
}

}  // namespace opsplit
