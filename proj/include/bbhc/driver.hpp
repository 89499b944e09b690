#pragma once

// Outer BBHC loop: repeatedly hill-climb from random states of the current
// block structure, store the results, and once the memory is full learn
// linkages, rebuild the structure and resize the memory. One run is strictly
// sequential; concurrent runs share nothing.

#include <cstdint>
#include <vector>

#include "bbhc/hill_climb.hpp"
#include "bbhc/linkage.hpp"

namespace bbhc {

struct RunConfig {
    std::uint64_t rng_seed = 1;
    // c in memory_size = c + floor(log_k(#blocks)). 16 keeps coincidental
    // configuration bijections (false linkages) rare up to l = 1024 on the
    // two-configuration functions; hTrap benchmarks use 18.
    int memory_const = 16;
    int log_base = 0;  // 0 = use the problem's branching factor
    std::uint64_t max_evals = 50'000'000;
    // Stop after this many consecutive learning phases without a change in
    // the number of blocks.
    int stagnation_epochs = 30;
    // When false the run continues past the first optimum evaluation until
    // the structure converges; benchmarks use true.
    bool stop_at_optimum = true;
};

// c + floor(log_base(num_blocks)), never below 2.
std::size_t memory_size(std::size_t num_blocks, int memory_const, int log_base);

struct EpochRecord {
    int epoch = 0;                   // 1-based learning phase index
    std::size_t num_blocks = 0;      // after rebuilding
    std::size_t memory_entries = 0;  // entries consumed by this phase
    std::uint64_t evals_so_far = 0;
    double best_score = 0.0;
    std::vector<std::vector<std::size_t>> merged_groups;  // pre-rebuild block indices
    std::vector<std::vector<std::size_t>> block_loci;     // post-rebuild loci, genotype coords
};

struct RunResult {
    Genotype best_genotype;
    double best_score = 0.0;
    // Queries until a global optimum was first evaluated when successful,
    // otherwise every query issued; all_evals always counts every query.
    std::uint64_t total_evals = 0;
    std::uint64_t all_evals = 0;
    int epochs = 0;
    BBStructure final_structure;
    bool reached_optimum = false;
    // hIFF: 0 = all-zeros, 1 = all-ones. hXOR: by the first structural bit.
    // hTrap: 1. Unsolved runs: -1.
    int which_optimum = -1;
    std::vector<EpochRecord> trace;
};

RunResult run_bbhc(const ProblemSpec& spec, const RunConfig& config);

// True iff every learning phase e left only blocks whose unshuffled loci
// form contiguous k^e-aligned segments, i.e. the merge history follows the
// problem's balanced k-ary tree.
bool structure_correct(const RunResult& result, const ProblemSpec& spec);

}  // namespace bbhc
