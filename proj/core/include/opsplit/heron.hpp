#pragma once

#include "opsplit/lifts.hpp"

#include <cstdint>
#include <vector>

namespace opsplit {

/*
 * Generalized Heron problem: minimize the summed distances to a family of
 * hypercubes over a constraint ball centered at the origin. An instance of
 * r sets consists of r-1 randomly placed cubes (side sqrt(2), so unit
 * circumradius) kept clear of the ball (radius 10), plus the ball itself.
 * The cube distance terms enter through their distance subdifferentials
 * (prox of the distance function); the ball enters through its normal cone
 * (the ball projector).
 */
struct HeronInstance {
  int dim = 0;
  int num_sets = 0;  // r; cubes plus the constraint ball
  std::vector<Vec> cube_centers;
  double cube_half_side = 0.0;
  double ball_radius = 0.0;
  std::uint64_t seed = 0;
};

/// Deterministic per seed: cube centers drawn coordinatewise uniform on
/// [-10, 10], redrawn until the center norm reaches 12 and the whole cube
/// stays clear of the ball. Throws std::runtime_error if a center cannot be
/// placed within a bounded number of redraws — in dimension 1 the norm bound
/// is unreachable, and in very low dimensions admissible draws are rare.
HeronInstance generate_heron(std::uint64_t seed, int dim, int num_sets);

/// Summed distances from x to the cubes.
double heron_objective(const HeronInstance& instance, const Vec& x);

/// Distance from x to the constraint ball.
double heron_constraint_violation(const HeronInstance& instance, const Vec& x);

/// The r operators in order: one distance prox per cube, then the ball
/// projector.
std::vector<ResolventPtr> heron_operators(const HeronInstance& instance);

/// Reduced lift with the ball as coordinator.
ReducedLift heron_reduced_lift(const HeronInstance& instance);

StandardLift heron_standard_lift(const HeronInstance& instance);

/// Vector with entries uniform on [0, 1], deterministic per seed.
Vec random_start_vec(std::uint64_t seed, int dim);

/// Tuple of such vectors, all drawn from one stream.
BlockVector random_start(std::uint64_t seed, int block_count, int block_dim);

}  // namespace opsplit
