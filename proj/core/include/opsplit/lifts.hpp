#pragma once

#include "opsplit/resolvent.hpp"
#include "opsplit/types.hpp"

#include <vector>

namespace opsplit {

/*
 * Product-space reformulations for finding a zero of a finite sum of
 * maximally monotone operators A_1 + ... + A_r on a base space H.
 *
 * The standard lift works on H^r: one operator per block plus the normal
 * cone to the diagonal, whose resolvent is blockwise averaging.
 *
 * The reduced lift works on H^{r-1}: operators A_1, ..., A_{r-1} act
 * blockwise, while the last operator is merged with the diagonal's normal
 * cone into a coordinator whose resolvent evaluates A_r once at the block
 * mean (with gamma scaled by 1/(r-1)) and replicates the result across
 * blocks. Zeros of the lifted sum are exactly the replicated zeros of
 * A_1 + ... + A_r.
 */

/// Standard lift: r operators on a shared base space, coupled via the
/// diagonal of H^r.
struct StandardLift {
  std::vector<ResolventPtr> operators;
  int base_dim;

  StandardLift(std::vector<ResolventPtr> ops, int dim);

  int operator_count() const { return static_cast<int>(operators.size()); }
};

/// Reduced lift: r-1 blockwise operators plus a coordinator on H^{r-1}.
struct ReducedLift {
  std::vector<ResolventPtr> block_operators;  // A_1 ... A_{r-1}
  ResolventPtr coordinator;                   // A_r
  int base_dim;

  ReducedLift(std::vector<ResolventPtr> block_ops, ResolventPtr coord, int dim);

  int block_count() const { return static_cast<int>(block_operators.size()); }
  int operator_count() const { return block_count() + 1; }
};

/// Projection onto the diagonal: every block replaced by the block mean.
BlockVector diagonal_project(const BlockVector& x);

/// Blockwise resolvent of the standard lift's product operator.
BlockVector componentwise_resolvent(const StandardLift& lift, double gamma, const BlockVector& x);

/// Blockwise resolvent of the reduced lift's product operator (coordinator
/// excluded).
BlockVector blockwise_resolvent(const ReducedLift& lift, double gamma, const BlockVector& x);

/// Resolvent of the coordinator-plus-diagonal part of the reduced lift. The
/// result lies on the diagonal: every block equals the coordinator's
/// resolvent, at gamma/(r-1), of the block mean.
BlockVector coordinator_resolvent(const ReducedLift& lift, double gamma, const BlockVector& x);

/// Set-valued projection onto { (c, ..., c) : c in C } given C's (possibly
/// multi-valued) projector: replicates each nearest point of C to the block
/// mean. Evaluating at the mean, rather than composing blockwise projections
/// with a diagonal projection, is what keeps this exact for nonconvex C.
std::vector<BlockVector> project_coordinator_set(const ResolventOperator& set_projector,
                                                 const BlockVector& x);

/// Direct evaluation of the resolvent of the aggregated operator
/// (1/(r-1)) (A_1 + ... + A_r) at gamma, i.e. J_{(gamma/(r-1)) sum A_i}.
/// On the diagonal this is exactly the resolvent of the reduced lift's full
/// splitting sum. Supported when every operator of the lift is affine or
/// zero; throws std::invalid_argument otherwise.
Vec resolvent_of_sum(const ReducedLift& lift, double gamma, const Vec& x);

}  // namespace opsplit
