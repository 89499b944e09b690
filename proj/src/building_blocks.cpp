#include "bbhc/building_blocks.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bbhc {

BBStructure initial_structure(std::size_t length) {
    if (length == 0) throw std::invalid_argument("initial_structure: length must be positive");
    BBStructure s;
    s.total_length = length;
    s.blocks.resize(length);
    for (std::size_t i = 0; i < length; ++i) {
        s.blocks[i].loci = {i};
        s.blocks[i].configs = {{0}, {1}};
    }
    return s;
}

bool is_valid_partition(const BBStructure& s) {
    std::vector<std::uint8_t> seen(s.total_length, 0);
    std::size_t covered = 0;
    for (const auto& block : s.blocks) {
        for (std::size_t locus : block.loci) {
            if (locus >= s.total_length || seen[locus]) return false;
            seen[locus] = 1;
            ++covered;
        }
    }
    return covered == s.total_length;
}

void validate_structure(const BBStructure& s) {
    if (!is_valid_partition(s)) {
        throw std::invalid_argument("structure loci do not partition [0, length)");
    }
    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
        const auto& block = s.blocks[b];
        const std::string tag = "block " + std::to_string(b);
        if (!std::is_sorted(block.loci.begin(), block.loci.end())) {
            throw std::invalid_argument(tag + ": loci not sorted");
        }
        if (block.configs.empty()) throw std::invalid_argument(tag + ": no configurations");
        for (const auto& cfg : block.configs) {
            if (cfg.size() != block.loci.size()) {
                throw std::invalid_argument(tag + ": config length does not match loci");
            }
        }
        for (std::size_t i = 0; i < block.configs.size(); ++i) {
            for (std::size_t j = i + 1; j < block.configs.size(); ++j) {
                if (block.configs[i] == block.configs[j]) {
                    throw std::invalid_argument(tag + ": duplicate configurations");
                }
            }
        }
    }
}

void write_block(const BBStructure& s, std::size_t block, std::size_t config, Genotype& g) {
    const auto& bb = s.blocks[block];
    if (config >= bb.configs.size()) {
        throw std::out_of_range("configuration index out of range for block " +
                                std::to_string(block));
    }
    const BitPattern& pattern = bb.configs[config];
    for (std::size_t t = 0; t < bb.loci.size(); ++t) g[bb.loci[t]] = pattern[t];
}

Genotype decode(const BBStructure& s, const BBState& state) {
    if (state.config_index.size() != s.blocks.size()) {
        throw std::invalid_argument("state size does not match number of blocks");
    }
    Genotype g(s.total_length, 0);
    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
        write_block(s, b, state.config_index[b], g);
    }
    return g;
}

BBState random_state(const BBStructure& s, Rng& rng) {
    BBState state;
    state.config_index.resize(s.blocks.size());
    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
        state.config_index[b] = rng.below(s.blocks[b].configs.size());
    }
    return state;
}

double neighborhood_size(const BBStructure& s) {
    double product = 1.0;
    for (const auto& block : s.blocks) product *= static_cast<double>(block.configs.size());
    return product;
}

}  // namespace bbhc
