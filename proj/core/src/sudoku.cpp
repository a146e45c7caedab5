#include "opsplit/sudoku.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace opsplit {

namespace {

using Fiber = std::array<int, 9>;

// Projector onto a product of 81 disjoint nine-entry fibers, each constrained
// to the set of standard basis vectors.
class FiberBasisProjection final : public ResolventOperator {
 public:
  explicit FiberBasisProjection(std::vector<Fiber> fibers) : fibers_(std::move(fibers)) {}

  int dim() const override { return kTensorDim; }

  Vec evaluate(double, const Vec& x) const override {
    if (x.size() != kTensorDim) {
      throw std::invalid_argument("FiberBasisProjection: dimension mismatch");
    }
    ensure_finite(x, "FiberBasisProjection input");
    Vec out = x;
    Vec slot(9);
    for (const Fiber& f : fibers_) {
      for (int t = 0; t < 9; ++t) slot[t] = x[f[t]];
      const Vec e = nearest_basis_vector(slot);
      for (int t = 0; t < 9; ++t) out[f[t]] = e[t];
    }
    return out;
  }

 private:
  std::vector<Fiber> fibers_;
};

std::vector<Fiber> row_fibers() {
  std::vector<Fiber> fs;
  for (int i = 0; i < 9; ++i) {
    for (int k = 0; k < 9; ++k) {
      Fiber f;
      for (int j = 0; j < 9; ++j) f[j] = tensor_index(i, j, k);
      fs.push_back(f);
    }
  }
  return fs;
}

std::vector<Fiber> column_fibers() {
  std::vector<Fiber> fs;
  for (int j = 0; j < 9; ++j) {
    for (int k = 0; k < 9; ++k) {
      Fiber f;
      for (int i = 0; i < 9; ++i) f[i] = tensor_index(i, j, k);
      fs.push_back(f);
    }
  }
  return fs;
}

std::vector<Fiber> cell_fibers() {
  std::vector<Fiber> fs;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      Fiber f;
      for (int k = 0; k < 9; ++k) f[k] = tensor_index(i, j, k);
      fs.push_back(f);
    }
  }
  return fs;
}

std::vector<Fiber> subgrid_fibers() {
  std::vector<Fiber> fs;
  for (int bi = 0; bi < 3; ++bi) {
    for (int bj = 0; bj < 3; ++bj) {
      for (int k = 0; k < 9; ++k) {
        Fiber f;
        int t = 0;
        // Column-major order within the subgrid.
        for (int jj = 0; jj < 3; ++jj) {
          for (int ii = 0; ii < 3; ++ii) {
            f[t++] = tensor_index(3 * bi + ii, 3 * bj + jj, k);
          }
        }
        fs.push_back(f);
      }
    }
  }
  return fs;
}

int subgrid_of(int i, int j) { return 3 * (i / 3) + j / 3; }

bool grid_obeys_rules(const std::array<std::array<int, 9>, 9>& cells, bool allow_blanks) {
  // seen[kind][unit] tracks digits per row, column, and subgrid.
  bool seen[3][9][10] = {};
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      const int v = cells[i][j];
      if (v == 0) {
        if (allow_blanks) continue;
        return false;
      }
      if (v < 1 || v > 9) return false;
      const int units[3] = {i, j, subgrid_of(i, j)};
      for (int u = 0; u < 3; ++u) {
        if (seen[u][units[u]][v]) return false;
        seen[u][units[u]][v] = true;
      }
    }
  }
  return true;
}

}  // namespace

bool SudokuPuzzle::consistent() const { return grid_obeys_rules(givens, true); }

int SudokuPuzzle::given_count() const {
  int n = 0;
  for (const auto& row : givens) {
    for (int v : row) n += (v != 0);
  }
  return n;
}

SudokuPuzzle parse_sudoku(const std::string& text) {
  SudokuPuzzle puzzle;
  int pos = 0;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (pos >= 81) throw std::invalid_argument("parse_sudoku: more than 81 characters");
    int value = 0;
    if (c >= '1' && c <= '9') {
      value = c - '0';
    } else if (c != '.' && c != '0') {
      throw std::invalid_argument("parse_sudoku: unexpected character");
    }
    puzzle.givens[pos / 9][pos % 9] = value;
    ++pos;
  }
  if (pos != 81) throw std::invalid_argument("parse_sudoku: fewer than 81 characters");
  if (!puzzle.consistent()) throw std::invalid_argument("parse_sudoku: inconsistent givens");
  return puzzle;
}

std::vector<SudokuPuzzle> load_sudoku_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_sudoku_file: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("load_sudoku_file: read failure on " + path);

  std::string significant;
  for (char c : buffer.str()) {
    if (!std::isspace(static_cast<unsigned char>(c))) significant.push_back(c);
  }
  if (significant.empty() || significant.size() % 81 != 0) {
    throw std::runtime_error("load_sudoku_file: " + path +
                             " does not hold a whole number of 81-character puzzles");
  }
  std::vector<SudokuPuzzle> puzzles;
  for (std::size_t at = 0; at < significant.size(); at += 81) {
    puzzles.push_back(parse_sudoku(significant.substr(at, 81)));
  }
  return puzzles;
}

SudokuGrid sudoku_decode_validate(const Vec& tensor, const SudokuPuzzle& puzzle) {
  if (tensor.size() != kTensorDim) {
    throw std::invalid_argument("sudoku_decode_validate: dimension mismatch");
  }
  SudokuGrid grid;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      int arg = 0;
      double best = tensor[tensor_index(i, j, 0)];
      for (int k = 1; k < 9; ++k) {
        const double v = tensor[tensor_index(i, j, k)];
        if (v > best) {
          best = v;
          arg = k;
        }
      }
      grid.cells[i][j] = arg + 1;
    }
  }
  grid.valid = grid_obeys_rules(grid.cells, false);
  if (grid.valid) {
    for (int i = 0; i < 9 && grid.valid; ++i) {
      for (int j = 0; j < 9; ++j) {
        if (puzzle.givens[i][j] != 0 && puzzle.givens[i][j] != grid.cells[i][j]) {
          grid.valid = false;
          break;
        }
      }
    }
  }
  return grid;
}

Vec sudoku_tensor_from_grid(const std::array<std::array<int, 9>, 9>& cells) {
  Vec x = Vec::Zero(kTensorDim);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      const int v = cells[i][j];
      if (v < 1 || v > 9) {
        throw std::invalid_argument("sudoku_tensor_from_grid: entries must be 1-9");
      }
      x[tensor_index(i, j, v - 1)] = 1.0;
    }
  }
  return x;
}

SudokuConstraints sudoku_encode(const SudokuPuzzle& puzzle) {
  if (!puzzle.consistent()) {
    throw std::invalid_argument("sudoku_encode: inconsistent givens");
  }
  SudokuConstraints c;
  c.fiber_constraints[0] = std::make_shared<FiberBasisProjection>(row_fibers());
  c.fiber_constraints[1] = std::make_shared<FiberBasisProjection>(column_fibers());
  c.fiber_constraints[2] = std::make_shared<FiberBasisProjection>(cell_fibers());
  c.fiber_constraints[3] = std::make_shared<FiberBasisProjection>(subgrid_fibers());

  std::vector<std::pair<int, double>> fixed;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      const int v = puzzle.givens[i][j];
      if (v == 0) continue;
      for (int k = 0; k < 9; ++k) {
        fixed.emplace_back(tensor_index(i, j, k), k == v - 1 ? 1.0 : 0.0);
      }
    }
  }
  c.givens_constraint =
      std::make_shared<AffineFixProjection>(AffineFixSet(kTensorDim, std::move(fixed)));
  return c;
}

std::vector<ResolventPtr> sudoku_operator_list(const SudokuConstraints& constraints) {
  std::vector<ResolventPtr> ops(constraints.fiber_constraints.begin(),
                                constraints.fiber_constraints.end());
  ops.push_back(constraints.givens_constraint);
  return ops;
}

ReducedLift sudoku_reduced_lift(const SudokuConstraints& constraints, int coordinator) {
  if (coordinator < 0 || coordinator > 4) {
    throw std::invalid_argument("sudoku_reduced_lift: coordinator index out of range");
  }
  auto ops = sudoku_operator_list(constraints);
  ResolventPtr coord = ops[static_cast<std::size_t>(coordinator)];
  ops.erase(ops.begin() + coordinator);
  return ReducedLift(std::move(ops), std::move(coord), kTensorDim);
}

StandardLift sudoku_standard_lift(const SudokuConstraints& constraints) {
  return StandardLift(sudoku_operator_list(constraints), kTensorDim);
}

}  // namespace opsplit
