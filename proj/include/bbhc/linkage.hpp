#pragma once

// Linkage detection over a memory of hill-climb results. Two blocks are
// linked when their observed configurations correspond one-to-one across
// the stored states, i.e. they induce the same partition of the memory.
// Partition equality is an equivalence relation, so all mutually linked
// blocks are discovered together and merged into one new block.

#include <vector>

#include "bbhc/building_blocks.hpp"

namespace bbhc {

struct MemoryEntry {
    BBState state;
    Genotype genotype;
    double score = 0.0;
};

// Stored hill-climb results. All entries must belong to the same structure;
// the driver clears the buffer whenever the structure changes.
class MemoryBuffer {
public:
    explicit MemoryBuffer(std::size_t capacity) : capacity_(capacity) {}

    void add(MemoryEntry entry) { entries_.push_back(std::move(entry)); }
    void clear() { entries_.clear(); }
    bool full() const { return entries_.size() >= capacity_; }
    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    void set_capacity(std::size_t capacity) { capacity_ = capacity; }
    const MemoryEntry& operator[](std::size_t i) const { return entries_[i]; }

    std::size_t distinct_genotypes() const;

private:
    std::vector<MemoryEntry> entries_;
    std::size_t capacity_;
};

// True iff blocks i and j induce the same partition of the memory entries
// by configuration index. Symmetric and transitive; i == j returns true.
bool linked(std::size_t i, std::size_t j, const MemoryBuffer& memory);

// Equivalence classes of `linked` over all blocks, ordered by their
// smallest member; every block appears in exactly one cluster.
std::vector<std::vector<std::size_t>> detect_clusters(const BBStructure& s,
                                                      const MemoryBuffer& memory);

// Multi-block clusters become one block whose loci are the sorted union and
// whose configs are the distinct bit patterns observed on those loci in the
// memory genotypes; singleton clusters keep their loci with configs
// restricted to those observed. Unmerged blocks keep their relative order,
// merged blocks are appended ordered by smallest member.
BBStructure rebuild_structure(const BBStructure& s,
                              const std::vector<std::vector<std::size_t>>& clusters,
                              const MemoryBuffer& memory);

}  // namespace bbhc
