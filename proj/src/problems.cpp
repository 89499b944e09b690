#include "bbhc/problems.hpp"

#include <algorithm>
#include <stdexcept>

namespace bbhc {

namespace {

constexpr std::uint8_t kNullSym = 2;

int levels_for(std::size_t length, int k, const char* what) {
    if (length == 0) throw std::invalid_argument(std::string(what) + ": length must be positive");
    int p = 0;
    std::size_t v = length;
    while (v % static_cast<std::size_t>(k) == 0) {
        v /= static_cast<std::size_t>(k);
        ++p;
    }
    if (v != 1) {
        throw std::invalid_argument(std::string(what) + ": length " + std::to_string(length) +
                                    " is not a power of " + std::to_string(k));
    }
    return p;
}

// Shared hIFF/hXOR fold. Level-0 blocks (single bits) are always valid and
// contribute 1 each; each higher level contributes block_size per valid block.
// hIFF validity merges equal symbols, hXOR complementary ones.
double fold_pairs(const std::uint8_t* bits, std::size_t n, bool complement_check,
                  std::uint8_t* work) {
    std::copy(bits, bits + n, work);
    double score = static_cast<double>(n);
    std::size_t width = n;
    std::size_t block = 1;
    while (width > 1) {
        const std::size_t half = width / 2;
        block *= 2;
        std::size_t valid = 0;
        for (std::size_t i = 0; i < half; ++i) {
            const std::uint8_t a = work[2 * i];
            const std::uint8_t b = work[2 * i + 1];
            std::uint8_t merged = kNullSym;
            if (a != kNullSym && b != kNullSym && (complement_check ? a != b : a == b)) {
                merged = a;
            }
            work[i] = merged;
            valid += merged != kNullSym ? 1u : 0u;
        }
        score += static_cast<double>(block) * static_cast<double>(valid);
        width = half;
    }
    return score;
}

// hTrap fold: ternary symbols (all-0 block -> 0, all-1 -> 1, else null);
// a level-q block of k child symbols contributes weight(q) * trap_k(u)
// unless a child is null, in which case it contributes nothing.
double fold_trap(const std::uint8_t* bits, std::size_t n, int levels, const ProblemSpec& spec,
                 std::uint8_t* work) {
    std::copy(bits, bits + n, work);
    double score = 0.0;
    std::size_t width = n;
    double weight = 1.0;
    for (int level = 1; level <= levels; ++level) {
        const std::size_t groups = width / 3;
        weight = spec.level_weight == LevelWeight::block_size ? weight * 3.0 : 1.0;
        const bool top = level == levels;
        const double f_high = top ? spec.top_f_high : 1.0;
        const double f_low = top ? spec.top_f_low : 1.0;
        for (std::size_t g = 0; g < groups; ++g) {
            const std::uint8_t a = work[3 * g];
            const std::uint8_t b = work[3 * g + 1];
            const std::uint8_t c = work[3 * g + 2];
            if (a != kNullSym && b != kNullSym && c != kNullSym) {
                const int u = a + b + c;
                score += weight * trap_value(u, 3, f_high, f_low);
            }
            work[g] = (a == b && b == c) ? a : kNullSym;
        }
        width = groups;
    }
    return score;
}

double dispatch(const ProblemSpec& spec, const std::uint8_t* bits, std::size_t n,
                std::uint8_t* work) {
    switch (spec.kind) {
        case ProblemKind::hiff:
            return fold_pairs(bits, n, false, work);
        case ProblemKind::hxor:
            return fold_pairs(bits, n, true, work);
        case ProblemKind::htrap:
            return fold_trap(bits, n, spec.levels, spec, work);
    }
    throw std::logic_error("unknown problem kind");
}

}  // namespace

Genotype genotype_from_string(const std::string& s) {
    Genotype g;
    g.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("genotype string must be 0/1");
        g.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return g;
}

std::string to_string(const Genotype& g) {
    std::string s(g.size(), '0');
    for (std::size_t i = 0; i < g.size(); ++i) s[i] = g[i] ? '1' : '0';
    return s;
}

const char* to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::hiff: return "hiff";
        case ProblemKind::hxor: return "hxor";
        case ProblemKind::htrap: return "htrap";
    }
    return "?";
}

ProblemKind problem_kind_from_string(const std::string& s) {
    if (s == "hiff") return ProblemKind::hiff;
    if (s == "hxor") return ProblemKind::hxor;
    if (s == "htrap") return ProblemKind::htrap;
    throw std::invalid_argument("unknown problem kind: " + s);
}

const char* to_string(LevelWeight weight) {
    return weight == LevelWeight::block_size ? "block_size" : "uniform";
}

LevelWeight level_weight_from_string(const std::string& s) {
    if (s == "block_size") return LevelWeight::block_size;
    if (s == "uniform") return LevelWeight::uniform;
    throw std::invalid_argument("unknown level weight: " + s);
}

std::vector<std::size_t> make_shuffle(std::size_t length, std::uint64_t seed) {
    if (length == 0) throw std::invalid_argument("make_shuffle: length must be positive");
    Rng rng(seed);
    return rng.permutation(length);
}

ProblemSpec ProblemSpec::make(ProblemKind kind, int levels,
                              std::optional<std::uint64_t> shuffle_seed, LevelWeight weight) {
    if (levels < 0) throw std::invalid_argument("levels must be non-negative");
    ProblemSpec spec;
    spec.kind = kind;
    spec.levels = levels;
    spec.level_weight = weight;
    const int k = spec.branching();
    std::size_t length = 1;
    for (int i = 0; i < levels; ++i) {
        if (length > (std::size_t{1} << 40)) throw std::invalid_argument("problem too large");
        length *= static_cast<std::size_t>(k);
    }
    spec.length = length;
    spec.shuffle_seed = shuffle_seed;
    if (shuffle_seed) {
        spec.shuffle = make_shuffle(length, *shuffle_seed);
        spec.inverse_shuffle.assign(length, 0);
        for (std::size_t i = 0; i < length; ++i) spec.inverse_shuffle[spec.shuffle[i]] = i;
    }
    return spec;
}

ProblemSpec ProblemSpec::for_length(ProblemKind kind, std::size_t length,
                                    std::optional<std::uint64_t> shuffle_seed,
                                    LevelWeight weight) {
    const int k = kind == ProblemKind::htrap ? 3 : 2;
    return make(kind, levels_for(length, k, "ProblemSpec"), shuffle_seed, weight);
}

double trap_value(int unitation, int k, double f_high, double f_low) {
    if (unitation == k) return f_high;
    return f_low * static_cast<double>(k - 1 - unitation) / static_cast<double>(k - 1);
}

double eval_hiff(const Genotype& bits) {
    levels_for(bits.size(), 2, "eval_hiff");
    std::vector<std::uint8_t> work(bits.size());
    return fold_pairs(bits.data(), bits.size(), false, work.data());
}

double eval_hxor(const Genotype& bits) {
    levels_for(bits.size(), 2, "eval_hxor");
    std::vector<std::uint8_t> work(bits.size());
    return fold_pairs(bits.data(), bits.size(), true, work.data());
}

double eval_htrap(const Genotype& bits, const ProblemSpec& spec) {
    if (spec.kind != ProblemKind::htrap) throw std::invalid_argument("eval_htrap: spec kind is not htrap");
    const int p = levels_for(bits.size(), 3, "eval_htrap");
    if (bits.size() != spec.length) throw std::invalid_argument("eval_htrap: length mismatch");
    std::vector<std::uint8_t> work(bits.size());
    return fold_trap(bits.data(), bits.size(), p, spec, work.data());
}

double evaluate(const ProblemSpec& spec, const Genotype& bits) {
    if (bits.size() != spec.length) {
        throw std::invalid_argument("evaluate: genotype length does not match problem length");
    }
    std::vector<std::uint8_t> work(spec.length);
    if (!spec.shuffled()) return dispatch(spec, bits.data(), bits.size(), work.data());
    std::vector<std::uint8_t> structural(spec.length);
    for (std::size_t i = 0; i < spec.length; ++i) structural[i] = bits[spec.shuffle[i]];
    return dispatch(spec, structural.data(), structural.size(), work.data());
}

double global_optimum_value(const ProblemSpec& spec) {
    if (spec.kind == ProblemKind::htrap) {
        Genotype ones(spec.length, 1);
        return eval_htrap(ones, spec);
    }
    return static_cast<double>(spec.length) * static_cast<double>(spec.levels + 1);
}

Evaluator::Evaluator(const ProblemSpec& spec)
    : spec_(&spec),
      optimum_(global_optimum_value(spec)),
      structural_(spec.length),
      work_(spec.length) {}

double Evaluator::operator()(const Genotype& bits) {
    if (bits.size() != spec_->length) {
        throw std::invalid_argument("evaluate: genotype length does not match problem length");
    }
    const std::uint8_t* in = bits.data();
    if (spec_->shuffled()) {
        for (std::size_t i = 0; i < spec_->length; ++i) structural_[i] = bits[spec_->shuffle[i]];
        in = structural_.data();
    }
    const double score = dispatch(*spec_, in, spec_->length, work_.data());
    ++count_;
    if (score > best_score_) {
        best_score_ = score;
        best_genotype_ = bits;
    }
    if (first_hit_ == 0 && score >= optimum_ - 1e-9) first_hit_ = count_;
    return score;
}

}  // namespace bbhc
