#pragma once

// Building-block representation of search states: a partition of the loci
// into blocks, each carrying an explicit list of admissible bit patterns.
// A state picks one pattern per block; decoding writes the picked patterns
// onto the block loci.

#include <cstdint>
#include <vector>

#include "bbhc/problems.hpp"
#include "bbhc/rng.hpp"

namespace bbhc {

// Bit pattern over a block's loci, in sorted-loci order.
using BitPattern = std::vector<std::uint8_t>;

struct BuildingBlock {
    std::vector<std::size_t> loci;    // sorted ascending, distinct
    std::vector<BitPattern> configs;  // distinct, each of length loci.size()
};

struct BBStructure {
    std::vector<BuildingBlock> blocks;
    std::size_t total_length = 0;  // block loci partition [0, total_length)
};

// One configuration index per block. Indices are 0-based in code; exported
// traces and the documentation examples are 1-based.
struct BBState {
    std::vector<std::size_t> config_index;
};

// One singleton block per locus, each with configs {0, 1}; expresses the
// full space {0,1}^length.
BBStructure initial_structure(std::size_t length);

bool is_valid_partition(const BBStructure& s);
// Full consistency check (partition, sorted loci, config shapes); throws
// std::invalid_argument with a description when violated.
void validate_structure(const BBStructure& s);

Genotype decode(const BBStructure& s, const BBState& state);
// Writes one block's chosen config onto an existing genotype.
void write_block(const BBStructure& s, std::size_t block, std::size_t config, Genotype& g);

// Each block's index drawn uniformly and independently.
BBState random_state(const BBStructure& s, Rng& rng);

// Product of configuration counts over all blocks. Metrics/logging only;
// may overflow to +inf for large structures.
double neighborhood_size(const BBStructure& s);

}  // namespace bbhc
