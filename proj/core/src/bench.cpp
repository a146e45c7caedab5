#include "opsplit/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <climits>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>

namespace opsplit {

namespace {

bool known_algorithm(const std::string& name) {
  return std::find(kKnownAlgorithms.begin(), kKnownAlgorithms.end(), name) !=
         kKnownAlgorithms.end();
}

// Executes fn(0..count-1) over a pool; each task owns its output slot, so
// results are independent of scheduling. The first exception wins and the
// pool drains.
void run_indexed_tasks(int workers, int count, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int threads = std::min(std::max(workers, 1), count);
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        {
          const std::lock_guard<std::mutex> hold(error_mutex);
          if (!error) error = std::current_exception();
        }
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::int64_t to_micros(double secs) { return std::llround(secs * 1e6); }

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void check_positive_list(const std::vector<double>& values, const char* what) {
  if (values.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) + ": entries must be positive and finite");
    }
  }
}

}  // namespace

std::vector<RunRecord> run_heron_grid(const HeronGridSpec& spec) {
  if (spec.dims.empty()) throw std::invalid_argument("run_heron_grid: no dimensions");
  for (int d : spec.dims) {
    if (d < 1) throw std::invalid_argument("run_heron_grid: dimensions must be positive");
  }
  if (spec.num_sets < 2) throw std::invalid_argument("run_heron_grid: at least two sets");
  check_positive_list(spec.gammas, "run_heron_grid gammas");
  check_positive_list(spec.lambdas, "run_heron_grid lambdas");
  for (double l : spec.lambdas) {
    if (l >= 2.0) {
      throw std::invalid_argument("run_heron_grid: grid lambdas must lie in (0, 2)");
    }
  }
  if (spec.algorithms.empty()) throw std::invalid_argument("run_heron_grid: no algorithms");
  for (const auto& a : spec.algorithms) {
    if (!known_algorithm(a)) {
      throw std::invalid_argument("run_heron_grid: unknown algorithm " + a);
    }
  }
  if (spec.num_problems < 1 || spec.starts_per_problem < 1) {
    throw std::invalid_argument("run_heron_grid: problem and start counts must be positive");
  }
  if (!(spec.epsilon > 0.0) || spec.max_iter < 1) {
    throw std::invalid_argument("run_heron_grid: bad stopping parameters");
  }

  struct Task {
    std::shared_ptr<const HeronInstance> instance;
    std::string problem_id;
    int start_id = 0;
    std::uint64_t start_seed = 0;
    std::string algorithm;
    double gamma = 0.0;
    double lambda = 0.0;
  };

  const int r = spec.num_sets;
  std::vector<Task> tasks;
  for (std::size_t di = 0; di < spec.dims.size(); ++di) {
    const int dim = spec.dims[di];
    for (int p = 0; p < spec.num_problems; ++p) {
      const auto instance_seed =
          derive_seed(spec.master_seed, {1, static_cast<std::uint64_t>(dim),
                                         static_cast<std::uint64_t>(p)});
      auto instance =
          std::make_shared<const HeronInstance>(generate_heron(instance_seed, dim, r));
      const std::string problem_id = "heron-d" + std::to_string(dim) + "-r" + std::to_string(r) +
                                     "-p" + std::to_string(p);
      for (int s = 0; s < spec.starts_per_problem; ++s) {
        const auto start_seed =
            derive_seed(spec.master_seed, {2, static_cast<std::uint64_t>(dim),
                                           static_cast<std::uint64_t>(p),
                                           static_cast<std::uint64_t>(s)});
        for (const auto& algorithm : spec.algorithms) {
          for (double gamma : spec.gammas) {
            for (double lambda : spec.lambdas) {
              if (algorithm == kAlgRyu && (r != 3 || lambda > 1.0)) continue;
              if (algorithm == kAlgMalitskyTam && lambda >= 1.0) continue;
              tasks.push_back(Task{instance, problem_id, s, start_seed, algorithm, gamma, lambda});
            }
          }
        }
      }
    }
  }

  std::vector<RunRecord> records(tasks.size());
  run_indexed_tasks(spec.workers, static_cast<int>(tasks.size()), [&](int i) {
    const Task& task = tasks[static_cast<std::size_t>(i)];
    const HeronInstance& inst = *task.instance;

    SolverConfig config;
    config.gamma = task.gamma;
    config.lambda = task.lambda;
    config.epsilon = spec.epsilon;
    config.max_iter = spec.max_iter;
    RunControl control;
    control.record_residuals = false;

    SolverTrace trace;
    if (task.algorithm == kAlgReducedDr) {
      trace = reduced_dr_run(heron_reduced_lift(inst), config,
                             random_start(task.start_seed, r - 1, inst.dim), control);
    } else if (task.algorithm == kAlgStandardDr) {
      trace = standard_dr_run(heron_standard_lift(inst), config,
                              random_start(task.start_seed, r, inst.dim), control);
    } else if (task.algorithm == kAlgRyu) {
      const auto ops = heron_operators(inst);
      const BlockVector start = random_start(task.start_seed, 2, inst.dim);
      trace = ryu_run(*ops[0], *ops[1], *ops[2], config, start.blocks[0], start.blocks[1],
                      control);
    } else {
      trace = malitsky_tam_run(heron_operators(inst), config,
                               random_start(task.start_seed, r - 1, inst.dim), control);
    }

    RunRecord& rec = records[static_cast<std::size_t>(i)];
    rec.algorithm = task.algorithm;
    rec.problem_id = task.problem_id;
    rec.start_id = task.start_id;
    rec.gamma = task.gamma;
    rec.lambda = task.lambda;
    rec.iterations = trace.iterations;
    rec.time_us = to_micros(trace.wall_time_secs);
    rec.converged = trace.converged;
    rec.objective_or_valid = heron_objective(inst, trace.final_p);
    rec.seed = task.start_seed;
  });
  return records;
}

SudokuSuiteResult run_sudoku_suite(const SudokuSuiteSpec& spec) {
  if (spec.puzzle_files.empty()) throw std::invalid_argument("run_sudoku_suite: no puzzle files");
  if (spec.algorithms.empty()) throw std::invalid_argument("run_sudoku_suite: no algorithms");
  for (const auto& a : spec.algorithms) {
    if (!known_algorithm(a)) {
      throw std::invalid_argument("run_sudoku_suite: unknown algorithm " + a);
    }
    if (a == kAlgRyu) {
      throw std::invalid_argument(
          "run_sudoku_suite: the three-operator scheme does not apply to the five-set "
          "arrangement");
    }
  }
  if (spec.starts_per_puzzle < 1) {
    throw std::invalid_argument("run_sudoku_suite: start count must be positive");
  }
  if (!(spec.lambda_dr > 0.0 && spec.lambda_dr < 2.0)) {
    throw std::invalid_argument("run_sudoku_suite: lambda_dr must lie in (0, 2)");
  }
  if (!(spec.lambda_mt > 0.0 && spec.lambda_mt < 1.0)) {
    throw std::invalid_argument("run_sudoku_suite: lambda_mt must lie in (0, 1)");
  }
  if (!(spec.timeout_secs > 0.0)) {
    throw std::invalid_argument("run_sudoku_suite: timeout must be positive");
  }
  if (spec.coordinator < 0 || spec.coordinator > 4) {
    throw std::invalid_argument("run_sudoku_suite: coordinator index out of range");
  }

  SudokuSuiteResult result;

  struct Loaded {
    SudokuPuzzle puzzle;
    std::string problem_id;
    int global_index = 0;
  };
  std::vector<Loaded> loaded;
  int global_index = 0;
  for (const auto& path : spec.puzzle_files) {
    try {
      const auto puzzles = load_sudoku_file(path);
      const std::string stem = std::filesystem::path(path).stem().string();
      for (std::size_t k = 0; k < puzzles.size(); ++k) {
        loaded.push_back(
            Loaded{puzzles[k], stem + ":" + std::to_string(k), global_index++});
      }
    } catch (const std::exception& ex) {
      result.file_errors.push_back(path + ": " + ex.what());
    }
  }

  struct Task {
    const Loaded* puzzle = nullptr;
    const SudokuConstraints* constraints = nullptr;
    std::string algorithm;
    int start_id = 0;
    std::uint64_t start_seed = 0;
  };

  // One constraint encoding per puzzle, shared read-only across tasks.
  std::vector<std::unique_ptr<SudokuConstraints>> encodings;
  encodings.reserve(loaded.size());
  std::vector<Task> tasks;
  for (const Loaded& item : loaded) {
    encodings.push_back(std::make_unique<SudokuConstraints>(sudoku_encode(item.puzzle)));
    for (const auto& algorithm : spec.algorithms) {
      for (int s = 0; s < spec.starts_per_puzzle; ++s) {
        tasks.push_back(Task{&item, encodings.back().get(), algorithm, s,
                             derive_seed(spec.master_seed,
                                         {3, static_cast<std::uint64_t>(item.global_index),
                                          static_cast<std::uint64_t>(s)})});
      }
    }
  }

  result.records.resize(tasks.size());
  run_indexed_tasks(spec.workers, static_cast<int>(tasks.size()), [&](int i) {
    const Task& task = tasks[static_cast<std::size_t>(i)];
    const SudokuPuzzle& puzzle = task.puzzle->puzzle;

    SolverConfig config;
    config.gamma = 1.0;  // every operator is a projector; the value is inert
    config.max_iter = INT_MAX;
    RunControl control;
    control.timeout_secs = spec.timeout_secs;
    control.record_residuals = false;
    control.success = [&puzzle](const Vec& p) { return sudoku_decode_validate(p, puzzle).valid; };

    SolverTrace trace;
    if (task.algorithm == kAlgReducedDr) {
      config.lambda = spec.lambda_dr;
      trace = reduced_dr_run(sudoku_reduced_lift(*task.constraints, spec.coordinator), config,
                             random_start(task.start_seed, 4, kTensorDim), control);
    } else if (task.algorithm == kAlgStandardDr) {
      config.lambda = spec.lambda_dr;
      trace = standard_dr_run(sudoku_standard_lift(*task.constraints), config,
                              random_start(task.start_seed, 5, kTensorDim), control);
    } else {
      config.lambda = spec.lambda_mt;
      trace = malitsky_tam_run(sudoku_operator_list(*task.constraints), config,
                               random_start(task.start_seed, 4, kTensorDim), control);
    }

    RunRecord& rec = result.records[static_cast<std::size_t>(i)];
    rec.algorithm = task.algorithm;
    rec.problem_id = task.puzzle->problem_id;
    rec.start_id = task.start_id;
    rec.gamma = config.gamma;
    rec.lambda = config.lambda;
    rec.iterations = trace.iterations;
    rec.time_us = to_micros(trace.wall_time_secs);
    rec.converged = trace.converged;
    rec.objective_or_valid = trace.converged ? 1.0 : 0.0;
    rec.seed = task.start_seed;
  });
  return result;
}

std::vector<double> geometric_tau_grid(double tau_max, int samples) {
  if (!(tau_max > 1.0) || !std::isfinite(tau_max)) {
    throw std::invalid_argument("geometric_tau_grid: tau_max must exceed 1");
  }
  if (samples < 2) throw std::invalid_argument("geometric_tau_grid: at least two samples");
  std::vector<double> taus(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    taus[static_cast<std::size_t>(i)] =
        std::pow(tau_max, static_cast<double>(i) / static_cast<double>(samples - 1));
  }
  taus.front() = 1.0;
  taus.back() = tau_max;
  return taus;
}

ProfileResult performance_profile(const std::vector<RunRecord>& records,
                                  const std::vector<double>& taus) {
  if (taus.empty()) throw std::invalid_argument("performance_profile: empty tau grid");
  for (double t : taus) {
    if (!(t >= 1.0) || !std::isfinite(t)) {
      throw std::invalid_argument("performance_profile: taus must be finite and at least 1");
    }
  }

  // First-appearance orderings keep the result deterministic.
  std::vector<std::string> algorithms, problems;
  std::unordered_map<std::string, std::size_t> algorithm_index, problem_index;
  for (const RunRecord& r : records) {
    if (algorithm_index.emplace(r.algorithm, algorithms.size()).second) {
      algorithms.push_back(r.algorithm);
    }
    if (problem_index.emplace(r.problem_id, problems.size()).second) {
      problems.push_back(r.problem_id);
    }
  }

  struct Agg {
    std::int64_t runs = 0;
    std::int64_t solved = 0;
    double time_sum = 0.0;
  };
  std::vector<std::vector<Agg>> agg(problems.size(), std::vector<Agg>(algorithms.size()));
  for (const RunRecord& r : records) {
    Agg& a = agg[problem_index[r.problem_id]][algorithm_index[r.algorithm]];
    ++a.runs;
    if (r.converged) {
      ++a.solved;
      a.time_sum += static_cast<double>(r.time_us);
    }
  }

  ProfileResult out;
  std::vector<int> ranked;  // problems some algorithm solved at least once
  for (std::size_t p = 0; p < problems.size(); ++p) {
    bool any = false;
    for (const Agg& a : agg[p]) any = any || a.solved > 0;
    if (any) {
      ranked.push_back(static_cast<int>(p));
    } else {
      ++out.unsolved_problems;
    }
  }
  out.ranked_problems = static_cast<int>(ranked.size());

  std::vector<double> best_time(problems.size(), 0.0);
  for (int p : ranked) {
    double best = std::numeric_limits<double>::infinity();
    for (const Agg& a : agg[static_cast<std::size_t>(p)]) {
      if (a.solved > 0) best = std::min(best, a.time_sum / static_cast<double>(a.solved));
    }
    best_time[static_cast<std::size_t>(p)] = best;
  }

  for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
    ProfileCurve curve;
    curve.algorithm = algorithms[ai];
    curve.taus = taus;
    curve.rhos.assign(taus.size(), 0.0);
    if (!ranked.empty()) {
      for (std::size_t ti = 0; ti < taus.size(); ++ti) {
        double mass = 0.0;
        for (int p : ranked) {
          const Agg& a = agg[static_cast<std::size_t>(p)][ai];
          if (a.solved == 0) continue;
          const double mean_time = a.time_sum / static_cast<double>(a.solved);
          if (mean_time <= taus[ti] * best_time[static_cast<std::size_t>(p)]) {
            mass += static_cast<double>(a.solved) / static_cast<double>(a.runs);
          }
        }
        curve.rhos[ti] = mass / static_cast<double>(ranked.size());
      }
    }
    out.curves.push_back(std::move(curve));
  }
  return out;
}

namespace {

constexpr const char* kRunsHeader =
    "algorithm,problem_id,start_id,gamma,lambda,iterations,time_us,converged,"
    "objective_or_valid,seed";

void check_csv_field(const std::string& s, const char* what) {
  if (s.find_first_of(",\r\n") != std::string::npos) {
    throw std::invalid_argument(std::string(what) + ": value contains a delimiter");
  }
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t at = 0;
  for (;;) {
    const std::size_t comma = line.find(',', at);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(at));
      return fields;
    }
    fields.push_back(line.substr(at, comma - at));
    at = comma + 1;
  }
}

template <typename T>
T parse_number(const std::string& s, const char* what, int line_no) {
  T value{};
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw std::runtime_error("parse_records_csv: bad " + std::string(what) + " on line " +
                             std::to_string(line_no));
  }
  return value;
}

}  // namespace

void emit_csv(const std::vector<RunRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << kRunsHeader << '\n';
  for (const RunRecord& r : records) {
    check_csv_field(r.algorithm, "emit_csv algorithm");
    check_csv_field(r.problem_id, "emit_csv problem_id");
    out << r.algorithm << ',' << r.problem_id << ',' << r.start_id << ','
        << format_double(r.gamma) << ',' << format_double(r.lambda) << ',' << r.iterations << ','
        << r.time_us << ',' << (r.converged ? 1 : 0) << ','
        << format_double(r.objective_or_valid) << ',' << r.seed << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("emit_csv: write failure on " + path);
}

void emit_csv(const std::vector<ProfileCurve>& curves, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << "algorithm,tau,rho\n";
  for (const ProfileCurve& c : curves) {
    check_csv_field(c.algorithm, "emit_csv algorithm");
    if (c.taus.size() != c.rhos.size()) {
      throw std::invalid_argument("emit_csv: curve tau/rho length mismatch");
    }
    for (std::size_t i = 0; i < c.taus.size(); ++i) {
      out << c.algorithm << ',' << format_double(c.taus[i]) << ',' << format_double(c.rhos[i])
          << '\n';
    }
  }
  out.flush();
  if (!out) throw std::runtime_error("emit_csv: write failure on " + path);
}

std::vector<RunRecord> parse_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_records_csv: cannot open " + path);

  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line() || line != kRunsHeader) {
    throw std::runtime_error("parse_records_csv: missing or wrong header in " + path);
  }

  std::vector<RunRecord> records;
  while (next_line()) {
    const auto fields = split_fields(line);
    if (fields.size() != 10) {
      throw std::runtime_error("parse_records_csv: expected 10 fields on line " +
                               std::to_string(line_no));
    }
    RunRecord r;
    r.algorithm = fields[0];
    r.problem_id = fields[1];
    r.start_id = parse_number<int>(fields[2], "start_id", line_no);
    r.gamma = parse_number<double>(fields[3], "gamma", line_no);
    r.lambda = parse_number<double>(fields[4], "lambda", line_no);
    r.iterations = parse_number<std::int64_t>(fields[5], "iterations", line_no);
    r.time_us = parse_number<std::int64_t>(fields[6], "time_us", line_no);
    if (fields[7] == "1") {
      r.converged = true;
    } else if (fields[7] == "0") {
      r.converged = false;
    } else {
      throw std::runtime_error("parse_records_csv: bad converged flag on line " +
                               std::to_string(line_no));
    }
    r.objective_or_valid = parse_number<double>(fields[8], "objective_or_valid", line_no);
    r.seed = parse_number<std::uint64_t>(fields[9], "seed", line_no);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace opsplit
