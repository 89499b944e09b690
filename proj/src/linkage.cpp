#include "bbhc/linkage.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace bbhc {

namespace {

// Canonical form of the partition a block induces on the memory: entry t is
// labelled by the order of first appearance of the block's configuration
// index. Two blocks are linked exactly when these labellings coincide.
std::vector<std::uint32_t> partition_signature(std::size_t block, const MemoryBuffer& memory) {
    std::vector<std::uint32_t> sig(memory.size());
    std::map<std::size_t, std::uint32_t> label;
    for (std::size_t t = 0; t < memory.size(); ++t) {
        const std::size_t v = memory[t].state.config_index[block];
        auto [it, inserted] = label.try_emplace(v, static_cast<std::uint32_t>(label.size()));
        sig[t] = it->second;
    }
    return sig;
}

void require_nonempty(const MemoryBuffer& memory) {
    if (memory.size() == 0) throw std::invalid_argument("linkage: memory is empty");
}

}  // namespace

std::size_t MemoryBuffer::distinct_genotypes() const {
    std::set<Genotype> seen;
    for (const auto& entry : entries_) seen.insert(entry.genotype);
    return seen.size();
}

bool linked(std::size_t i, std::size_t j, const MemoryBuffer& memory) {
    require_nonempty(memory);
    if (i == j) return true;
    return partition_signature(i, memory) == partition_signature(j, memory);
}

std::vector<std::vector<std::size_t>> detect_clusters(const BBStructure& s,
                                                      const MemoryBuffer& memory) {
    require_nonempty(memory);
    std::vector<std::vector<std::size_t>> clusters;
    std::map<std::vector<std::uint32_t>, std::size_t> cluster_of;
    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
        auto sig = partition_signature(b, memory);
        auto [it, inserted] = cluster_of.try_emplace(std::move(sig), clusters.size());
        if (inserted) clusters.emplace_back();
        clusters[it->second].push_back(b);
    }
    return clusters;
}

BBStructure rebuild_structure(const BBStructure& s,
                              const std::vector<std::vector<std::size_t>>& clusters,
                              const MemoryBuffer& memory) {
    require_nonempty(memory);
    std::vector<std::uint8_t> covered(s.blocks.size(), 0);
    for (const auto& cluster : clusters) {
        for (std::size_t b : cluster) {
            if (b >= s.blocks.size() || covered[b]) {
                throw std::invalid_argument("rebuild_structure: clusters must partition the blocks");
            }
            covered[b] = 1;
        }
    }
    if (static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 1)) !=
        s.blocks.size()) {
        throw std::invalid_argument("rebuild_structure: clusters must partition the blocks");
    }

    BBStructure out;
    out.total_length = s.total_length;

    // Singleton clusters first, keeping the original block order.
    std::vector<const std::vector<std::size_t>*> merged;
    std::vector<std::pair<std::size_t, const std::vector<std::size_t>*>> singles;
    for (const auto& cluster : clusters) {
        if (cluster.size() == 1) {
            singles.emplace_back(cluster.front(), &cluster);
        } else {
            merged.push_back(&cluster);
        }
    }
    std::sort(singles.begin(), singles.end());
    std::sort(merged.begin(), merged.end(),
              [](const auto* a, const auto* b) {
                  return *std::min_element(a->begin(), a->end()) <
                         *std::min_element(b->begin(), b->end());
              });

    for (const auto& [index, cluster] : singles) {
        (void)cluster;
        const auto& old_block = s.blocks[index];
        BuildingBlock block;
        block.loci = old_block.loci;
        // Restrict to the configurations encountered in the memory, keeping
        // the original configuration order.
        std::vector<std::uint8_t> observed(old_block.configs.size(), 0);
        for (std::size_t t = 0; t < memory.size(); ++t) {
            observed[memory[t].state.config_index[index]] = 1;
        }
        for (std::size_t j = 0; j < old_block.configs.size(); ++j) {
            if (observed[j]) block.configs.push_back(old_block.configs[j]);
        }
        out.blocks.push_back(std::move(block));
    }

    for (const auto* cluster : merged) {
        BuildingBlock block;
        for (std::size_t b : *cluster) {
            block.loci.insert(block.loci.end(), s.blocks[b].loci.begin(), s.blocks[b].loci.end());
        }
        std::sort(block.loci.begin(), block.loci.end());
        // Distinct patterns observed on the union loci, in order of first
        // appearance in the memory's binary representations.
        for (std::size_t t = 0; t < memory.size(); ++t) {
            BitPattern pattern(block.loci.size());
            for (std::size_t u = 0; u < block.loci.size(); ++u) {
                pattern[u] = memory[t].genotype[block.loci[u]];
            }
            if (std::find(block.configs.begin(), block.configs.end(), pattern) ==
                block.configs.end()) {
                block.configs.push_back(std::move(pattern));
            }
        }
        out.blocks.push_back(std::move(block));
    }

    return out;
}

}  // namespace bbhc
