#pragma once

// Hierarchical test functions: hIFF, hXOR and hTrap, with optional bit
// shuffling, exact global optimum values and a per-run counting evaluator.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbhc/rng.hpp"

namespace bbhc {

// Fixed-length bit string; each element is 0 or 1.
using Genotype = std::vector<std::uint8_t>;

Genotype genotype_from_string(const std::string& s);
std::string to_string(const Genotype& g);

enum class ProblemKind { hiff, hxor, htrap };
enum class LevelWeight { block_size, uniform };

const char* to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& s);
const char* to_string(LevelWeight weight);
LevelWeight level_weight_from_string(const std::string& s);

// Uniformly random bijection on [0, length), deterministic in the seed.
std::vector<std::size_t> make_shuffle(std::size_t length, std::uint64_t seed);

struct ProblemSpec {
    ProblemKind kind = ProblemKind::hiff;
    int levels = 0;          // p; length = k^p with k = branching()
    std::size_t length = 1;
    LevelWeight level_weight = LevelWeight::block_size;
    double top_f_high = 1.0;  // hTrap top-level reward
    double top_f_low = 0.9;   // hTrap top-level penalty slope
    std::optional<std::uint64_t> shuffle_seed;
    // Structural locus i is read from genotype position shuffle[i].
    std::vector<std::size_t> shuffle;           // empty when unshuffled
    std::vector<std::size_t> inverse_shuffle;   // genotype pos -> structural pos

    int branching() const { return kind == ProblemKind::htrap ? 3 : 2; }
    bool shuffled() const { return !shuffle.empty(); }

    static ProblemSpec make(ProblemKind kind, int levels,
                            std::optional<std::uint64_t> shuffle_seed = std::nullopt,
                            LevelWeight weight = LevelWeight::block_size);
    // Same, from a string length that must be an exact power of k.
    static ProblemSpec for_length(ProblemKind kind, std::size_t length,
                                  std::optional<std::uint64_t> shuffle_seed = std::nullopt,
                                  LevelWeight weight = LevelWeight::block_size);
};

// trap_k of unitation u: f_high at u == k, else f_low * (k-1-u) / (k-1).
double trap_value(int unitation, int k, double f_high, double f_low);

// Plain structural evaluators (no shuffle, no counting).
double eval_hiff(const Genotype& bits);
double eval_hxor(const Genotype& bits);
double eval_htrap(const Genotype& bits, const ProblemSpec& spec);

// Un-shuffles and dispatches on kind. Pure; see Evaluator for the counted path.
double evaluate(const ProblemSpec& spec, const Genotype& bits);

// hIFF/hXOR: l * (log2(l) + 1). hTrap: value of the all-ones string.
double global_optimum_value(const ProblemSpec& spec);

// Counting evaluator bound to one run: tracks the number of objective
// queries, the best genotype seen, and the query index at which a global
// optimum was first evaluated. One run owns one Evaluator; instances are
// independent, so concurrent runs never share counters.
class Evaluator {
public:
    explicit Evaluator(const ProblemSpec& spec);

    double operator()(const Genotype& bits);

    const ProblemSpec& spec() const { return *spec_; }
    std::uint64_t evals() const { return count_; }
    double optimum() const { return optimum_; }
    bool optimum_found() const { return first_hit_ != 0; }
    std::uint64_t evals_at_first_optimum() const { return first_hit_; }
    double best_score() const { return best_score_; }
    const Genotype& best_genotype() const { return best_genotype_; }

private:
    const ProblemSpec* spec_;
    double optimum_;
    std::uint64_t count_ = 0;
    std::uint64_t first_hit_ = 0;  // 0 = not found yet
    double best_score_ = -1.0;
    Genotype best_genotype_;
    std::vector<std::uint8_t> structural_;  // un-shuffle buffer
    std::vector<std::uint8_t> work_;        // fold buffer
};

}  // namespace bbhc
