#include "bbhc/hill_climb.hpp"

#include <stdexcept>

namespace bbhc {

double climb_block(const BBStructure& s, std::size_t block, BBState& state, Genotype& genotype,
                   const ObjectiveFn& objective, Rng& rng, std::uint64_t& evals) {
    const auto& bb = s.blocks[block];
    const std::size_t n_configs = bb.configs.size();
    const std::vector<std::size_t> order = rng.permutation(n_configs);

    std::vector<double> score(n_configs);
    for (std::size_t j : order) {
        write_block(s, block, j, genotype);
        score[j] = objective(genotype);
        ++evals;
    }

    // Replay the sequential accept over the recorded scores. The baseline
    // entering the block is the incumbent configuration's score in the
    // current context (= the score of the state the block processing started
    // from), so this reproduces the one-change-at-a-time process: a tried
    // configuration is kept iff it does not score below the one held.
    std::size_t kept = state.config_index[block];
    double current = score[kept];
    for (std::size_t j : order) {
        if (score[j] >= current) {
            current = score[j];
            kept = j;
        }
    }
    state.config_index[block] = kept;
    write_block(s, block, kept, genotype);
    return current;
}

ClimbResult bb_hill_climb(const BBStructure& s, const BBState& start,
                          const ObjectiveFn& objective, Rng& rng) {
    if (start.config_index.size() != s.blocks.size()) {
        throw std::invalid_argument("bb_hill_climb: state does not match structure");
    }
    ClimbResult result;
    result.state = start;
    result.genotype = decode(s, result.state);
    for (std::size_t block : rng.permutation(s.blocks.size())) {
        result.score =
            climb_block(s, block, result.state, result.genotype, objective, rng, result.evals_used);
    }
    return result;
}

ClimbResult bitflip_hill_climb(const ObjectiveFn& objective, const Genotype& start, Rng& rng,
                               std::uint64_t max_evals) {
    if (max_evals == 0) throw std::invalid_argument("bitflip_hill_climb: max_evals must be positive");
    ClimbResult result;
    result.genotype = start;
    result.score = objective(result.genotype);
    result.evals_used = 1;
    while (result.evals_used < max_evals) {
        const std::size_t pos = rng.below(result.genotype.size());
        result.genotype[pos] ^= 1;
        const double moved = objective(result.genotype);
        ++result.evals_used;
        if (moved < result.score) {
            result.genotype[pos] ^= 1;  // undo
        } else {
            result.score = moved;
        }
    }
    return result;
}

}  // namespace bbhc
