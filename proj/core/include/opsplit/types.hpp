#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace opsplit {

using Vec = Eigen::VectorXd;

/// Throws std::invalid_argument if v has a NaN or infinite entry.
void ensure_finite(const Vec& v, const char* what);

/// Element of a finite product of identical Euclidean spaces: an ordered
/// tuple of blocks, all of the same dimension.
struct BlockVector {
  std::vector<Vec> blocks;

  BlockVector() = default;
  explicit BlockVector(std::vector<Vec> parts);

  /// Tuple with every block equal to x.
  static BlockVector replicate(const Vec& x, int count);

  int block_count() const { return static_cast<int>(blocks.size()); }
  int block_dim() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().size()); }

  /// Arithmetic mean of the blocks.
  Vec mean() const;

  /// Product-space norm: sqrt of the summed squared block norms.
  double norm() const;

  BlockVector& operator+=(const BlockVector& other);
  BlockVector& operator-=(const BlockVector& other);
};

BlockVector operator+(BlockVector a, const BlockVector& b);
BlockVector operator-(BlockVector a, const BlockVector& b);
BlockVector operator*(double s, BlockVector a);

/// Product-space distance between equally shaped tuples.
double distance(const BlockVector& a, const BlockVector& b);

/// Splitmix-style avalanche of a 64-bit value; used to derive independent
/// stream seeds from a master seed and integer coordinates.
std::uint64_t mix_bits(std::uint64_t z);

/// Seed for the substream addressed by the given coordinates under `base`.
/// Stable across platforms and call sites; order of coordinates matters.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coords);

}  // namespace opsplit
