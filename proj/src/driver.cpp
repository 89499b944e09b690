#include "bbhc/driver.hpp"

#include <algorithm>
#include <stdexcept>

namespace bbhc {

std::size_t memory_size(std::size_t num_blocks, int memory_const, int log_base) {
    if (num_blocks == 0) throw std::invalid_argument("memory_size: need at least one block");
    if (memory_const < 1) throw std::invalid_argument("memory_size: constant must be positive");
    if (log_base < 2) throw std::invalid_argument("memory_size: log base must be at least 2");
    std::size_t log_floor = 0;
    std::size_t power = 1;
    while (power <= num_blocks / static_cast<std::size_t>(log_base)) {
        power *= static_cast<std::size_t>(log_base);
        ++log_floor;
    }
    const std::size_t size = static_cast<std::size_t>(memory_const) + log_floor;
    return std::max<std::size_t>(2, size);
}

namespace {

int classify_optimum(const ProblemSpec& spec, const Genotype& best) {
    switch (spec.kind) {
        case ProblemKind::htrap:
            return 1;
        case ProblemKind::hiff:
            // Both optima are uniform, so any position works.
            return best[0] ? 1 : 0;
        case ProblemKind::hxor: {
            const std::size_t pos = spec.shuffled() ? spec.shuffle[0] : 0;
            return best[pos] ? 1 : 0;
        }
    }
    return -1;
}

}  // namespace

RunResult run_bbhc(const ProblemSpec& spec, const RunConfig& config) {
    if (config.max_evals == 0) throw std::invalid_argument("run_bbhc: max_evals must be positive");
    if (config.stagnation_epochs < 1) {
        throw std::invalid_argument("run_bbhc: stagnation_epochs must be positive");
    }
    const int base = config.log_base > 0 ? config.log_base : spec.branching();

    Rng rng(config.rng_seed);
    Evaluator evaluator(spec);
    const ObjectiveFn objective = [&evaluator](const Genotype& g) { return evaluator(g); };

    BBStructure structure = initial_structure(spec.length);
    MemoryBuffer memory(memory_size(structure.blocks.size(), config.memory_const, base));

    RunResult out;
    int stagnant = 0;
    for (;;) {
        const BBState start = random_state(structure, rng);
        ClimbResult climb = bb_hill_climb(structure, start, objective, rng);
        memory.add({std::move(climb.state), std::move(climb.genotype), climb.score});

        if (config.stop_at_optimum && evaluator.optimum_found()) break;
        if (evaluator.evals() >= config.max_evals) break;
        if (!memory.full()) continue;

        if (memory.distinct_genotypes() >= 2) {
            const auto clusters = detect_clusters(structure, memory);
            BBStructure next = rebuild_structure(structure, clusters, memory);

            ++out.epochs;
            EpochRecord record;
            record.epoch = out.epochs;
            record.num_blocks = next.blocks.size();
            record.memory_entries = memory.size();
            record.evals_so_far = evaluator.evals();
            record.best_score = evaluator.best_score();
            for (const auto& cluster : clusters) {
                if (cluster.size() >= 2) record.merged_groups.push_back(cluster);
            }
            for (const auto& block : next.blocks) record.block_loci.push_back(block.loci);
            out.trace.push_back(std::move(record));

            stagnant = next.blocks.size() == structure.blocks.size() ? stagnant + 1 : 0;
            structure = std::move(next);
            memory.clear();
            memory.set_capacity(memory_size(structure.blocks.size(), config.memory_const, base));
        } else {
            // Every stored genotype is identical; linkage would merge
            // everything. Keep the entries, wait for one more memory's worth
            // of climbs, and treat the phase as stagnant so frozen
            // structures still terminate.
            memory.set_capacity(memory.capacity() +
                                memory_size(structure.blocks.size(), config.memory_const, base));
            ++stagnant;
        }
        if (stagnant >= config.stagnation_epochs) break;
    }

    out.reached_optimum = evaluator.optimum_found();
    out.all_evals = evaluator.evals();
    out.total_evals = out.reached_optimum ? evaluator.evals_at_first_optimum() : out.all_evals;
    out.best_score = evaluator.best_score();
    out.best_genotype = evaluator.best_genotype();
    out.final_structure = std::move(structure);
    out.which_optimum = out.reached_optimum ? classify_optimum(spec, out.best_genotype) : -1;
    return out;
}

bool structure_correct(const RunResult& result, const ProblemSpec& spec) {
    const std::size_t k = static_cast<std::size_t>(spec.branching());
    std::size_t expected = 1;
    for (const auto& record : result.trace) {
        // Phases without a merge leave the structure unchanged (restriction
        // only) and do not advance the level.
        if (record.merged_groups.empty()) continue;
        if (expected > spec.length / k) return false;  // merges past the root
        expected *= k;
        for (const auto& loci : record.block_loci) {
            if (loci.size() != expected) return false;
            std::vector<std::size_t> structural(loci.size());
            for (std::size_t t = 0; t < loci.size(); ++t) {
                structural[t] = spec.shuffled() ? spec.inverse_shuffle[loci[t]] : loci[t];
            }
            std::sort(structural.begin(), structural.end());
            if (structural.front() % expected != 0) return false;
            for (std::size_t t = 1; t < structural.size(); ++t) {
                if (structural[t] != structural.front() + t) return false;
            }
        }
    }
    return true;
}

}  // namespace bbhc
