#include "opsplit/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace opsplit {

void ensure_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

BlockVector::BlockVector(std::vector<Vec> parts) : blocks(std::move(parts)) {
  if (blocks.empty()) {
    throw std::invalid_argument("BlockVector: at least one block required");
  }
  const auto dim = blocks.front().size();
  for (const Vec& b : blocks) {
    if (b.size() != dim) {
      throw std::invalid_argument("BlockVector: blocks must share one dimension");
    }
  }
}

BlockVector BlockVector::replicate(const Vec& x, int count) {
  if (count < 1) {
    throw std::invalid_argument("BlockVector::replicate: count must be positive");
  }
  return BlockVector(std::vector<Vec>(static_cast<std::size_t>(count), x));
}

Vec BlockVector::mean() const {
  if (blocks.empty()) {
    throw std::invalid_argument("BlockVector::mean: empty tuple");
  }
  Vec m = Vec::Zero(blocks.front().size());
  for (const Vec& b : blocks) m += b;
  return m / static_cast<double>(blocks.size());
}

double BlockVector::norm() const {
  double sq = 0.0;
  for (const Vec& b : blocks) sq += b.squaredNorm();
  return std::sqrt(sq);
}

namespace {

void check_same_shape(const BlockVector& a, const BlockVector& b) {
  if (a.block_count() != b.block_count() || a.block_dim() != b.block_dim()) {
    throw std::invalid_argument("BlockVector: shape mismatch");
  }
}

}  // namespace

BlockVector& BlockVector::operator+=(const BlockVector& other) {
  check_same_shape(*this, other);
  for (int i = 0; i < block_count(); ++i) blocks[i] += other.blocks[i];
  return *this;
}

BlockVector& BlockVector::operator-=(const BlockVector& other) {
  check_same_shape(*this, other);
  for (int i = 0; i < block_count(); ++i) blocks[i] -= other.blocks[i];
  return *this;
}

BlockVector operator+(BlockVector a, const BlockVector& b) { return a += b; }

BlockVector operator-(BlockVector a, const BlockVector& b) { return a -= b; }

BlockVector operator*(double s, BlockVector a) {
  for (Vec& b : a.blocks) b *= s;
  return a;
}

double distance(const BlockVector& a, const BlockVector& b) {
  check_same_shape(a, b);
  double sq = 0.0;
  for (int i = 0; i < a.block_count(); ++i) sq += (a.blocks[i] - b.blocks[i]).squaredNorm();
  return std::sqrt(sq);
}

std::uint64_t mix_bits(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coords) {
  std::uint64_t s = mix_bits(base);
  for (std::uint64_t c : coords) s = mix_bits(s ^ mix_bits(c));
  return s;
}

}  // namespace opsplit
