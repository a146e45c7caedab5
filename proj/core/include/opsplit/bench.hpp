#pragma once

#include "opsplit/heron.hpp"
#include "opsplit/solvers.hpp"
#include "opsplit/sudoku.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace opsplit {

/*
 * Experiment harness: runs algorithm grids over generated problem instances,
 * serializes run records to CSV, and turns records into performance
 * profiles. All randomness is derived from a master seed through stable
 * substream derivation, so a spec with the same seed produces identical
 * records apart from the wall-clock timing field, regardless of the worker
 * count or thread scheduling.
 */

inline constexpr const char* kAlgStandardDr = "standard-dr";
inline constexpr const char* kAlgReducedDr = "reduced-dr";
inline constexpr const char* kAlgRyu = "ryu";
inline constexpr const char* kAlgMalitskyTam = "malitsky-tam";

inline constexpr std::array<const char*, 4> kKnownAlgorithms = {kAlgStandardDr, kAlgReducedDr,
                                                                kAlgRyu, kAlgMalitskyTam};

/// One solver run. For distance-sum problems objective_or_valid holds the
/// objective at the final monitored point; for feasibility problems it holds
/// 1 or 0 for a validated or failed decode.
struct RunRecord {
  std::string algorithm;
  std::string problem_id;
  int start_id = 0;
  double gamma = 0.0;
  double lambda = 0.0;
  std::int64_t iterations = 0;
  std::int64_t time_us = 0;
  bool converged = false;
  double objective_or_valid = 0.0;
  std::uint64_t seed = 0;
};

struct HeronGridSpec {
  std::vector<int> dims = {100};
  int num_sets = 3;
  std::vector<double> gammas = {1.0};
  std::vector<double> lambdas = {1.0};
  std::vector<std::string> algorithms = {kAlgStandardDr, kAlgReducedDr, kAlgRyu, kAlgMalitskyTam};
  int num_problems = 10;
  int starts_per_problem = 10;
  std::uint64_t master_seed = 1;
  double epsilon = 1e-6;
  int max_iter = 100000;
  int workers = 1;
};

/// Runs the full grid. Combinations an algorithm does not support are
/// skipped rather than run out of range: the three-operator scheme only
/// enters for num_sets == 3 and lambda <= 1, the chain iteration only for
/// lambda < 1. Records appear in the deterministic nesting order
/// (dim, problem, start, algorithm, gamma, lambda).
std::vector<RunRecord> run_heron_grid(const HeronGridSpec& spec);

struct SudokuSuiteSpec {
  std::vector<std::string> puzzle_files;
  std::vector<std::string> algorithms = {kAlgStandardDr, kAlgReducedDr, kAlgMalitskyTam};
  int starts_per_puzzle = 10;
  double lambda_dr = 1.0;
  double lambda_mt = 0.5;
  double timeout_secs = 300.0;
  int coordinator = 4;  // reduced lift's coordinator constraint
  std::uint64_t master_seed = 1;
  int workers = 1;
};

struct SudokuSuiteResult {
  std::vector<RunRecord> records;
  std::vector<std::string> file_errors;  // unreadable or malformed files, skipped
};

/// Runs every puzzle of every readable file; a failing file is reported in
/// file_errors and the suite continues. Runs stop on a validated decode or
/// on timeout.
SudokuSuiteResult run_sudoku_suite(const SudokuSuiteSpec& spec);

/// Geometric grid from 1 to tau_max inclusive.
std::vector<double> geometric_tau_grid(double tau_max, int samples);

struct ProfileCurve {
  std::string algorithm;
  std::vector<double> taus;
  std::vector<double> rhos;
};

struct ProfileResult {
  std::vector<ProfileCurve> curves;
  int ranked_problems = 0;    // problems solved by at least one algorithm
  int unsolved_problems = 0;  // solved by none; excluded from the ratios
};

/*
 * Success-weighted performance profile. Runs are pooled by (algorithm,
 * problem): s is the fraction of converged runs, t the mean time over the
 * converged runs. Problems no algorithm ever solved are excluded from the
 * ranked count N and reported separately. For each tau, an algorithm's rho
 * is (1/N) * sum of s over the ranked problems where its t is within tau
 * times the problem's best t. At tau -> infinity rho approaches the
 * algorithm's mean per-problem success share.
 */
ProfileResult performance_profile(const std::vector<RunRecord>& records,
                                  const std::vector<double>& taus);

/// Writes records with the canonical header:
/// algorithm,problem_id,start_id,gamma,lambda,iterations,time_us,converged,objective_or_valid,seed
/// Doubles are rendered in shortest round-trip form. Throws on IO failure.
void emit_csv(const std::vector<RunRecord>& records, const std::string& path);

/// Writes profile curves with header algorithm,tau,rho.
void emit_csv(const std::vector<ProfileCurve>& curves, const std::string& path);

/// Reads a records CSV written by emit_csv; throws std::runtime_error on a
/// missing file, wrong header, or malformed row.
std::vector<RunRecord> parse_records_csv(const std::string& path);

}  // namespace opsplit
