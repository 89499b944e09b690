#pragma once

// The building-block hill-climber and the baseline random-mutation bit-flip
// hill-climber. Both accept moves of equal score and undo only on a strict
// decrease, which matters on the plateaus of the hierarchical functions.

#include <functional>

#include "bbhc/building_blocks.hpp"

namespace bbhc {

using ObjectiveFn = std::function<double(const Genotype&)>;

struct ClimbResult {
    BBState state;
    Genotype genotype;
    double score = 0.0;
    std::uint64_t evals_used = 0;
};

// Processes one block: every configuration (the incumbent included) is set
// and evaluated exactly once in uniformly random order, and each change is
// kept unless it decreases the score relative to the configuration held at
// that point. state/genotype are updated in place; returns the kept score.
// Consumes one rng.permutation(#configs).
double climb_block(const BBStructure& s, std::size_t block, BBState& state, Genotype& genotype,
                   const ObjectiveFn& objective, Rng& rng, std::uint64_t& evals);

// One pass over all blocks in uniformly random order (one rng.permutation
// over blocks, then one per block inside climb_block). evals_used is exactly
// the total number of configurations, since every tried configuration costs
// one objective query.
ClimbResult bb_hill_climb(const BBStructure& s, const BBState& start,
                          const ObjectiveFn& objective, Rng& rng);

// Flips one uniformly random bit per step until max_evals objective queries
// (including the initial one) are spent. The current score never decreases.
ClimbResult bitflip_hill_climb(const ObjectiveFn& objective, const Genotype& start, Rng& rng,
                               std::uint64_t max_evals);

}  // namespace bbhc
