#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opsplit/heron.hpp"
#include "opsplit/solvers.hpp"

#include <cmath>
#include <stdexcept>

using namespace opsplit;

TEST_CASE("instance generation is deterministic and respects its own bounds") {
  const HeronInstance a = generate_heron(7, 30, 4);
  const HeronInstance b = generate_heron(7, 30, 4);

  REQUIRE(a.cube_centers.size() == 3);
  CHECK(a.dim == 30);
  CHECK(a.num_sets == 4);
  CHECK(a.ball_radius == 10.0);
  CHECK(a.cube_half_side == std::sqrt(2.0) / 2.0);
  for (std::size_t i = 0; i < a.cube_centers.size(); ++i) {
    CHECK(a.cube_centers[i] == b.cube_centers[i]);  // bitwise repeatable
  }

  const HeronInstance c = generate_heron(8, 30, 4);
  CHECK(c.cube_centers[0] != a.cube_centers[0]);

  for (const Vec& center : a.cube_centers) {
    CHECK(center.norm() >= 12.0);
    CHECK(center.minCoeff() >= -10.0);
    CHECK(center.maxCoeff() <= 10.0);
    // Placement clearance: the whole cube stays outside the ball.
    const BoxSet cube(center.array() - a.cube_half_side, center.array() + a.cube_half_side);
    CHECK(distance_to_box(cube, Vec::Zero(30)) > a.ball_radius);
  }
}

TEST_CASE("generation fails loudly when the geometry leaves no room") {
  // On the line, coordinates from [-10, 10] can never reach center norm 12,
  // so every draw is rejected and the bounded redraw budget runs out.
  CHECK_THROWS_AS(generate_heron(1, 1, 3), std::runtime_error);
  CHECK_THROWS_AS(generate_heron(1, 5, 1), std::invalid_argument);   // no cubes
  CHECK_THROWS_AS(generate_heron(1, 0, 3), std::invalid_argument);   // empty space

  // The norm bound stops binding as the dimension grows: admissible draws
  // exist in the plane (corner regions) and dominate in high dimension.
  CHECK(generate_heron(2, 2, 3).cube_centers.size() == 2);
  CHECK(generate_heron(3, 1000, 3).cube_centers.size() == 2);
}

TEST_CASE("operator list mirrors the instance structure") {
  const HeronInstance inst = generate_heron(11, 12, 5);
  const auto ops = heron_operators(inst);
  REQUIRE(ops.size() == 5);

  for (int i = 0; i < 4; ++i) {
    const auto* dist = dynamic_cast<const DistanceProx*>(ops[i].get());
    REQUIRE(dist != nullptr);
    CHECK(dist->dim() == 12);
  }
  const auto* ball = dynamic_cast<const BallProjection*>(ops[4].get());
  REQUIRE(ball != nullptr);
  CHECK(ball->set().radius == 10.0);
  CHECK(ball->set().center.isZero(0.0));

  const ReducedLift reduced = heron_reduced_lift(inst);
  CHECK(reduced.block_count() == 4);
  CHECK(dynamic_cast<const BallProjection*>(reduced.coordinator.get()) != nullptr);

  const StandardLift standard = heron_standard_lift(inst);
  CHECK(standard.operator_count() == 5);
}

TEST_CASE("cube distance prox moves by min(gamma, distance) toward the cube") {
  const HeronInstance inst = generate_heron(13, 8, 3);
  const auto ops = heron_operators(inst);

  const Vec x = Vec::Zero(8);
  const BoxSet cube(inst.cube_centers[0].array() - inst.cube_half_side,
                    inst.cube_centers[0].array() + inst.cube_half_side);
  const double d = distance_to_box(cube, x);
  REQUIRE(d > 10.0);

  for (double gamma : {0.5, 2.0, d + 5.0}) {
    const Vec moved = ops[0]->evaluate(gamma, x);
    CHECK(std::abs((moved - x).norm() - std::min(gamma, d)) <= 1e-10 * (1.0 + d));
    // The step points straight at the cube: the remaining distance drops by
    // exactly the length moved (until the cube is reached).
    CHECK(std::abs(distance_to_box(cube, moved) - (d - std::min(gamma, d))) <= 1e-9);
  }
}

TEST_CASE("objective and violation agree with direct set distances") {
  const HeronInstance inst = generate_heron(17, 6, 4);
  const Vec x = random_start_vec(99, 6) * 15.0;

  double expect = 0.0;
  for (const Vec& center : inst.cube_centers) {
    const BoxSet cube(center.array() - inst.cube_half_side, center.array() + inst.cube_half_side);
    expect += distance_to_box(cube, x);
  }
  CHECK(std::abs(heron_objective(inst, x) - expect) <= 1e-12 * (1.0 + expect));

  const double viol = heron_constraint_violation(inst, x);
  CHECK(std::abs(viol - distance_to_ball(BallSet(Vec::Zero(6), 10.0), x)) <= 1e-12);
  CHECK(heron_constraint_violation(inst, Vec::Zero(6)) == 0.0);
}

TEST_CASE("random starts are deterministic, range-bounded, and stream-split") {
  const Vec a = random_start_vec(5, 40);
  const Vec b = random_start_vec(5, 40);
  CHECK(a == b);
  CHECK(random_start_vec(6, 40) != a);
  CHECK(a.minCoeff() >= 0.0);
  CHECK(a.maxCoeff() <= 1.0);

  const BlockVector t = random_start(5, 3, 7);
  REQUIRE(t.block_count() == 3);
  CHECK(t.block_dim() == 7);
  const BlockVector u = random_start(5, 3, 7);
  for (int i = 0; i < 3; ++i) CHECK(t.blocks[i] == u.blocks[i]);
  // One stream feeds all blocks, so blocks differ from one another.
  CHECK(t.blocks[0] != t.blocks[1]);
}

TEST_CASE("reduced and standard runs agree on a small instance") {
  const HeronInstance inst = generate_heron(23, 20, 3);

  SolverConfig config;
  config.gamma = 5.0;
  config.lambda = 1.0;
  config.epsilon = 1e-9;
  config.max_iter = 200000;

  const SolverTrace reduced =
      reduced_dr_run(heron_reduced_lift(inst), config, random_start(71, 2, 20));
  const SolverTrace standard =
      standard_dr_run(heron_standard_lift(inst), config, random_start(72, 3, 20));

  REQUIRE(reduced.converged);
  REQUIRE(standard.converged);

  // Both monitored limits satisfy the ball constraint and reach the same
  // optimal value of the summed cube distances.
  CHECK(heron_constraint_violation(inst, reduced.final_p) <= 1e-6);
  CHECK(heron_constraint_violation(inst, standard.final_p) <= 1e-6);
  const double fr = heron_objective(inst, reduced.final_p);
  const double fs = heron_objective(inst, standard.final_p);
  CHECK(std::abs(fr - fs) <= 1e-4 * (1.0 + std::abs(fr)));
}
