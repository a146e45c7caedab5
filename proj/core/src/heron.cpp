#include "opsplit/heron.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace opsplit {

namespace {

constexpr double kBallRadius = 10.0;
constexpr double kMinCenterNorm = 12.0;
constexpr double kCoordinateRange = 10.0;
constexpr int kMaxRedraws = 10000;

// Side sqrt(2): unit circumradius in the planar case.
const double kCubeHalfSide = std::sqrt(2.0) / 2.0;

BoxSet cube_of(const HeronInstance& inst, int i) {
  return BoxSet::cube(inst.cube_centers[static_cast<std::size_t>(i)], inst.cube_half_side);
}

}  // namespace

HeronInstance generate_heron(std::uint64_t seed, int dim, int num_sets) {
  if (dim < 1) throw std::invalid_argument("generate_heron: dimension must be positive");
  if (num_sets < 2) throw std::invalid_argument("generate_heron: at least two sets");

  HeronInstance inst;
  inst.dim = dim;
  inst.num_sets = num_sets;
  inst.cube_half_side = kCubeHalfSide;
  inst.ball_radius = kBallRadius;
  inst.seed = seed;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-kCoordinateRange, kCoordinateRange);
  const Vec origin = Vec::Zero(dim);

  for (int i = 0; i < num_sets - 1; ++i) {
    int redraws = 0;
    for (;;) {
      Vec center(dim);
      for (int d = 0; d < dim; ++d) center[d] = coord(rng);
      // A center is admissible when it is far enough from the origin and the
      // whole cube around it stays strictly outside the ball.
      if (center.norm() >= kMinCenterNorm &&
          distance_to_box(BoxSet::cube(center, kCubeHalfSide), origin) > kBallRadius) {
        inst.cube_centers.push_back(std::move(center));
        break;
      }
      if (++redraws >= kMaxRedraws) {
        throw std::runtime_error(
            "generate_heron: could not place a cube outside the ball; at this dimension, "
            "coordinatewise draws from [-10, 10] cannot reach center norm 12 while "
            "clearing radius 10");
      }
    }
  }
  return inst;
}

double heron_objective(const HeronInstance& instance, const Vec& x) {
  if (x.size() != instance.dim) {
    throw std::invalid_argument("heron_objective: dimension mismatch");
  }
  double total = 0.0;
  for (int i = 0; i < instance.num_sets - 1; ++i) {
    total += distance_to_box(cube_of(instance, i), x);
  }
  return total;
}

double heron_constraint_violation(const HeronInstance& instance, const Vec& x) {
  return distance_to_ball(BallSet(Vec::Zero(instance.dim), instance.ball_radius), x);
}

std::vector<ResolventPtr> heron_operators(const HeronInstance& instance) {
  std::vector<ResolventPtr> ops;
  ops.reserve(static_cast<std::size_t>(instance.num_sets));
  for (int i = 0; i < instance.num_sets - 1; ++i) {
    ops.push_back(std::make_shared<DistanceProx>(
        std::make_shared<BoxProjection>(cube_of(instance, i))));
  }
  ops.push_back(std::make_shared<BallProjection>(
      BallSet(Vec::Zero(instance.dim), instance.ball_radius)));
  return ops;
}

ReducedLift heron_reduced_lift(const HeronInstance& instance) {
  auto ops = heron_operators(instance);
  ResolventPtr ball = ops.back();
  ops.pop_back();
  return ReducedLift(std::move(ops), std::move(ball), instance.dim);
}

StandardLift heron_standard_lift(const HeronInstance& instance) {
  return StandardLift(heron_operators(instance), instance.dim);
}

Vec random_start_vec(std::uint64_t seed, int dim) {
  if (dim < 1) throw std::invalid_argument("random_start_vec: dimension must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec x(dim);
  for (int d = 0; d < dim; ++d) x[d] = unit(rng);
  return x;
}

BlockVector random_start(std::uint64_t seed, int block_count, int block_dim) {
  if (block_count < 1) throw std::invalid_argument("random_start: block count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec> blocks(static_cast<std::size_t>(block_count));
  for (Vec& b : blocks) {
    b.resize(block_dim);
    for (int d = 0; d < block_dim; ++d) b[d] = unit(rng);
  }
  return BlockVector(std::move(blocks));
}

}  // namespace opsplit
