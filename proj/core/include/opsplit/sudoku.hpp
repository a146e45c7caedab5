#pragma once

#include "opsplit/lifts.hpp"

#include <array>
#include <string>
#include <vector>

namespace opsplit {

/*
 * Sudoku as a feasibility problem over the 9x9x9 binary indicator tensor
 * X[row, col, digit], flattened row-major as (row * 9 + col) * 9 + digit.
 * Five constraint sets:
 *
 *   1. each (row, digit) fiber across columns holds exactly one 1,
 *   2. each (col, digit) fiber across rows holds exactly one 1,
 *   3. each (row, col) fiber across digits holds exactly one 1,
 *   4. each (subgrid, digit) fiber across the subgrid's cells holds
 *      exactly one 1 (cells ordered column-major within the subgrid),
 *   5. the fibers of given cells equal the corresponding basis vector
 *      (an affine set; the other coordinates are free).
 *
 * Sets 1-4 are products of 81 copies of the nine basis vectors, so their
 * projectors act fiberwise through the nearest-basis-vector map and are
 * nonconvex but exact.
 */

inline constexpr int kGridOrder = 9;
inline constexpr int kTensorDim = 729;

inline int tensor_index(int row, int col, int digit) { return (row * 9 + col) * 9 + digit; }

/// Partially filled grid; 0 marks a blank.
struct SudokuPuzzle {
  std::array<std::array<int, 9>, 9> givens{};

  /// True iff no digit repeats within a row, column, or subgrid.
  bool consistent() const;

  int given_count() const;
};

/// Parses one puzzle from exactly 81 significant characters: digits 1-9 for
/// givens, '.' or '0' for blanks; whitespace is skipped. Throws
/// std::invalid_argument on malformed or inconsistent input.
SudokuPuzzle parse_sudoku(const std::string& text);

/// Loads the puzzles of a text file: all whitespace is discarded and the
/// remaining characters are consumed 81 at a time. Throws std::runtime_error
/// if the file is unreadable or holds no complete puzzle, and
/// std::invalid_argument on malformed puzzle text.
std::vector<SudokuPuzzle> load_sudoku_file(const std::string& path);

struct SudokuGrid {
  std::array<std::array<int, 9>, 9> cells{};
  bool valid = false;
};

/// Decodes a tensor by per-cell argmax (lowest digit wins ties) and checks
/// the result: valid means every rule holds and every given is honored.
SudokuGrid sudoku_decode_validate(const Vec& tensor, const SudokuPuzzle& puzzle);

/// Exact indicator tensor of a fully filled grid (entries 1-9).
Vec sudoku_tensor_from_grid(const std::array<std::array<int, 9>, 9>& cells);

/// The five constraint projectors of a puzzle.
struct SudokuConstraints {
  std::array<ResolventPtr, 4> fiber_constraints;  // rule sets 1-4
  ResolventPtr givens_constraint;                 // set 5
};

SudokuConstraints sudoku_encode(const SudokuPuzzle& puzzle);

/// All five projectors in rule order; the natural operator list for the
/// chain iteration and the standard lift.
std::vector<ResolventPtr> sudoku_operator_list(const SudokuConstraints& constraints);

/// Reduced lift with the chosen constraint (0-3 a rule set, 4 the givens
/// set; default the givens set) acting as coordinator.
ReducedLift sudoku_reduced_lift(const SudokuConstraints& constraints, int coordinator = 4);

StandardLift sudoku_standard_lift(const SudokuConstraints& constraints);

}  // namespace opsplit
