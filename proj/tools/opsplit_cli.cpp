// Command-line front end for the splitting benchmark harness: heron sweeps,
// sudoku suites, and performance-profile postprocessing, all emitting CSV.
#include "CLI11.hpp"

#include "opsplit/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace opsplit;

std::vector<std::string> expand_puzzle_paths(const std::string& root) {
  namespace fs = std::filesystem;
  if (!fs::exists(root)) {
    throw std::runtime_error("puzzle path does not exist: " + root);
  }
  if (!fs::is_directory(root)) return {root};
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw std::runtime_error("no .txt puzzle files under " + root);
  }
  return files;
}

void print_sudoku_summary(const std::vector<RunRecord>& records) {
  struct Agg {
    int solved = 0;
    int total = 0;
    double time_sum = 0.0;
    std::vector<std::int64_t> solved_iters;
  };
  std::map<std::string, Agg> by_algorithm;
  for (const RunRecord& r : records) {
    Agg& a = by_algorithm[r.algorithm];
    ++a.total;
    a.time_sum += static_cast<double>(r.time_us) / 1e6;
    if (r.converged) {
      ++a.solved;
      a.solved_iters.push_back(r.iterations);
    }
  }
  for (auto& [name, a] : by_algorithm) {
    double median = 0.0;
    if (!a.solved_iters.empty()) {
      std::sort(a.solved_iters.begin(), a.solved_iters.end());
      const std::size_t mid = a.solved_iters.size() / 2;
      median = a.solved_iters.size() % 2 == 1
                   ? static_cast<double>(a.solved_iters[mid])
                   : 0.5 * static_cast<double>(a.solved_iters[mid - 1] + a.solved_iters[mid]);
    }
    std::printf("%-14s solved %d/%d  median iterations %.1f  mean time %.4f s\n", name.c_str(),
                a.solved, a.total, median, a.time_sum / std::max(a.total, 1));
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Splitting-method benchmark harness"};
  app.require_subcommand(1);

  // --- heron: random distance-sum instances over an algorithm grid ---
  HeronGridSpec grid;
  std::string heron_out;
  CLI::App* heron = app.add_subcommand("heron", "Run a parameter grid on random instances");
  heron->add_option("--dim", grid.dims, "Space dimensions")->delimiter(',')
      ->capture_default_str();
  heron->add_option("--r", grid.num_sets, "Number of sets (cubes plus the ball)")
      ->capture_default_str();
  heron->add_option("--gamma", grid.gammas, "Resolvent step sizes")->delimiter(',')
      ->capture_default_str();
  heron->add_option("--lambda", grid.lambdas, "Relaxation parameters")->delimiter(',')
      ->capture_default_str();
  heron->add_option("--algorithms", grid.algorithms,
                    "Algorithms: standard-dr, reduced-dr, ryu, malitsky-tam")
      ->delimiter(',');
  heron->add_option("--problems", grid.num_problems, "Instances per dimension")
      ->capture_default_str();
  heron->add_option("--starts", grid.starts_per_problem, "Random starts per instance")
      ->capture_default_str();
  heron->add_option("--seed", grid.master_seed, "Master seed")->capture_default_str();
  heron->add_option("--eps", grid.epsilon, "Stopping tolerance")->capture_default_str();
  heron->add_option("--max-iter", grid.max_iter, "Iteration cap")->capture_default_str();
  heron->add_option("--workers", grid.workers, "Worker threads")->capture_default_str();
  heron->add_option("--out", heron_out, "Records CSV path")->required();

  // --- sudoku: feasibility suite over puzzle files ---
  SudokuSuiteSpec suite;
  std::string puzzles_path, sudoku_out;
  CLI::App* sudoku = app.add_subcommand("sudoku", "Run the puzzle feasibility suite");
  sudoku->add_option("--puzzles", puzzles_path, "Puzzle file or directory of .txt files")
      ->required();
  sudoku->add_option("--algorithms", suite.algorithms,
                     "Algorithms: standard-dr, reduced-dr, malitsky-tam")
      ->delimiter(',');
  sudoku->add_option("--starts", suite.starts_per_puzzle, "Random starts per puzzle")
      ->capture_default_str();
  sudoku->add_option("--seed", suite.master_seed, "Master seed")->capture_default_str();
  sudoku->add_option("--lambda-dr", suite.lambda_dr, "Relaxation for the lift iterations")
      ->capture_default_str();
  sudoku->add_option("--lambda-mt", suite.lambda_mt, "Relaxation for the chain iteration")
      ->capture_default_str();
  sudoku->add_option("--timeout-secs", suite.timeout_secs, "Per-run wall-clock budget")
      ->capture_default_str();
  sudoku->add_option("--coordinator", suite.coordinator,
                     "Reduced-lift coordinator constraint (0-3 a rule set, 4 the givens)")
      ->capture_default_str();
  sudoku->add_option("--workers", suite.workers, "Worker threads")->capture_default_str();
  sudoku->add_option("--out", sudoku_out, "Records CSV path");

  // --- profile: records CSV to performance-profile curves ---
  std::string profile_in, profile_out;
  double tau_max = 32.0;
  int samples = 200;
  CLI::App* profile = app.add_subcommand("profile", "Build performance profiles from records");
  profile->add_option("--input", profile_in, "Records CSV path")->required();
  profile->add_option("--tau-max", tau_max, "Upper end of the tau axis")->capture_default_str();
  profile->add_option("--samples", samples, "Points on the tau axis")->capture_default_str();
  profile->add_option("--out", profile_out, "Curves CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  if (heron->parsed()) {
    const auto records = run_heron_grid(grid);
    emit_csv(records, heron_out);
    std::printf("wrote %zu records to %s\n", records.size(), heron_out.c_str());
    return 0;
  }

  if (sudoku->parsed()) {
    suite.puzzle_files = expand_puzzle_paths(puzzles_path);
    const SudokuSuiteResult result = run_sudoku_suite(suite);
    for (const auto& error : result.file_errors) {
      std::fprintf(stderr, "skipped %s\n", error.c_str());
    }
    if (result.records.empty()) {
      throw std::runtime_error("no puzzles were run");
    }
    print_sudoku_summary(result.records);
    if (!sudoku_out.empty()) {
      emit_csv(result.records, sudoku_out);
      std::printf("wrote %zu records to %s\n", result.records.size(), sudoku_out.c_str());
    }
    return 0;
  }

  const auto records = parse_records_csv(profile_in);
  const ProfileResult result = performance_profile(records, geometric_tau_grid(tau_max, samples));
  emit_csv(result.curves, profile_out);
  std::printf("profiled %d problems (%d unsolved by every algorithm); wrote %zu curves to %s\n",
              result.ranked_problems, result.unsolved_problems, result.curves.size(),
              profile_out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
}
