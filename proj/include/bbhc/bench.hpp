#pragma once

// Benchmark harness: seeded sweeps over problem sizes, per-size statistics,
// the a*x^b*log(x) scaling fit and the bit-flip baseline comparison. Sweeps
// fan runs out over a thread pool; every run derives its own rng and shuffle
// seeds from the base seed, so results are independent of scheduling.

#include <cstdint>
#include <utility>
#include <vector>

#include "bbhc/driver.hpp"

namespace bbhc {

// 16 for hIFF/hXOR, 18 for hTrap.
int default_memory_const(ProblemKind kind);

struct SweepSpec {
    ProblemKind problem = ProblemKind::hiff;
    std::vector<std::size_t> sizes;
    int runs_per_size = 30;
    int memory_const = 0;  // 0 = kind default
    std::uint64_t max_evals = 50'000'000;
    int stagnation_epochs = 30;
    std::uint64_t base_seed = 1;
    bool shuffled = true;
    LevelWeight level_weight = LevelWeight::block_size;
};

struct RunRow {
    std::size_t size = 0;
    int run_index = 0;
    std::uint64_t seed = 0;  // rng seed of the run
    std::uint64_t evals = 0;
    bool success = false;
    bool structure_ok = false;
    int optimum_id = -1;
};

struct SizeSummary {
    std::size_t size = 0;
    int runs = 0;
    double mean_evals = 0.0;
    double std_evals = 0.0;
    int successes = 0;
    int structure_ok = 0;
    int optimum_one = 0;  // runs that found the "1" optimum (all-ones family)
};

// Seeds for run `index` at `size`: {rng_seed, shuffle_seed}.
std::pair<std::uint64_t, std::uint64_t> sweep_run_seeds(const SweepSpec& sweep, std::size_t size,
                                                        int index);

// Re-executes one sweep cell deterministically (for traces and exports).
RunResult rerun_sweep_cell(const SweepSpec& sweep, std::size_t size, int index,
                           ProblemSpec* spec_out = nullptr);

// One row per run, ordered by (size, run index). threads = 0 picks the
// hardware concurrency.
std::vector<RunRow> run_sweep(const SweepSpec& sweep, int threads = 0);

std::vector<SizeSummary> summarize(const std::vector<RunRow>& rows);

// Consecutive mean ratios, one per adjacent size pair.
std::vector<double> mean_ratios(const std::vector<SizeSummary>& summary);

struct FitResult {
    double a = 0.0;
    double b = 0.0;
    double residual = 0.0;  // sum of squared errors in log space
};

// Least squares for f(x) = a * x^b * log(x), solved exactly in log space:
// log y - log log x = log a + b log x (natural logs).
FitResult fit_scaling(const std::vector<std::pair<double, double>>& points);

struct BaselineResult {
    int runs = 0;
    int successes = 0;
    double mean_best_fraction = 0.0;  // best score / optimum, averaged
};

// Random-mutation hill-climber with `budget` evaluations per run; fresh
// shuffle and start per run.
BaselineResult compare_baseline(ProblemKind kind, std::size_t size, std::uint64_t budget,
                                int runs, std::uint64_t base_seed, bool shuffled,
                                int threads = 0);

}  // namespace bbhc
