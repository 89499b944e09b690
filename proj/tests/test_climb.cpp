#include <doctest.h>

#include <set>
#include <stdexcept>

#include "bbhc/hill_climb.hpp"
#include "oracles.hpp"

using namespace bbhc;

namespace {

double hiff_of(const Genotype& g) { return eval_hiff(g); }

}  // namespace

TEST_CASE("structures without alternatives return the start unchanged") {
    BBStructure s;
    s.total_length = 4;
    s.blocks.resize(2);
    s.blocks[0].loci = {0, 1};
    s.blocks[0].configs = {{0, 1}};
    s.blocks[1].loci = {2, 3};
    s.blocks[1].configs = {{1, 1}};
    Rng rng(1);
    const ClimbResult result = bb_hill_climb(s, {{0, 0}}, hiff_of, rng);
    CHECK(result.state.config_index == std::vector<std::size_t>{0, 0});
    CHECK(result.evals_used == 2);  // one query per block
    CHECK(to_string(result.genotype) == "0111");
}

TEST_CASE("worked example: climbing the middle block") {
    const BBStructure s = oracle::worked_example_structure();
    BBState state{{1, 2, 0}};  // the (2,3,1) state, 0-based
    Genotype genotype = decode(s, state);
    REQUIRE(to_string(genotype) == "01101100");

    std::set<std::string> seen;
    std::uint64_t evals = 0;
    Rng rng(17);
    const double kept = climb_block(
        s, 1, state, genotype,
        [&seen](const Genotype& g) {
            seen.insert(to_string(g));
            return eval_hiff(g);
        },
        rng, evals);

    CHECK(seen == std::set<std::string>{"01000100", "01001100", "01101100", "01100100"});
    CHECK(evals == 4);
    // "01001100" scores 14, strictly above the other three: the climb keeps
    // it regardless of the visiting order.
    CHECK(kept == 14.0);
    CHECK(state.config_index == std::vector<std::size_t>{1, 1, 0});
    CHECK(to_string(genotype) == "01001100");
}

TEST_CASE("matches the naive replay on every 8-bit start") {
    const BBStructure s = initial_structure(8);
    for (const auto& start_bits : oracle::all_genotypes(8)) {
        BBState start;
        for (std::uint8_t bit : start_bits) start.config_index.push_back(bit);
        for (std::uint64_t seed : {11u, 29u}) {
            Rng fast_rng(seed);
            Rng slow_rng(seed);
            const ClimbResult fast = bb_hill_climb(s, start, hiff_of, fast_rng);
            const ClimbResult slow = oracle::bb_climb(s, start, hiff_of, slow_rng);
            CHECK(fast.state.config_index == slow.state.config_index);
            CHECK(fast.genotype == slow.genotype);
            CHECK(fast.score == slow.score);
            CHECK(fast.evals_used == slow.evals_used);
            CHECK(fast.evals_used == 16);  // sum of configuration counts
            CHECK(fast.score == eval_hiff(fast.genotype));
        }
    }
}

TEST_CASE("kept scores never decrease across blocks") {
    const BBStructure s = oracle::worked_example_structure();
    Rng rng(3);
    for (int round = 0; round < 1000; ++round) {
        BBState state = random_state(s, rng);
        Genotype genotype = decode(s, state);
        double previous = -1.0;
        std::uint64_t evals = 0;
        for (std::size_t block : rng.permutation(s.blocks.size())) {
            const double kept = climb_block(s, block, state, genotype, hiff_of, rng, evals);
            CHECK(kept >= previous);
            previous = kept;
        }
    }
}

TEST_CASE("iterated climbs reach building-block local optima at l=8") {
    const BBStructure s = initial_structure(8);
    Rng rng(41);
    for (int round = 0; round < 64; ++round) {
        BBState state = random_state(s, rng);
        ClimbResult result = bb_hill_climb(s, state, hiff_of, rng);
        for (int pass = 0; pass < 8; ++pass) {
            const ClimbResult next = bb_hill_climb(s, result.state, hiff_of, rng);
            if (next.score == result.score && next.state.config_index == result.state.config_index) {
                result = next;
                break;
            }
            result = next;
        }
        // No single-block configuration change strictly improves.
        for (std::size_t b = 0; b < s.blocks.size(); ++b) {
            for (std::size_t j = 0; j < s.blocks[b].configs.size(); ++j) {
                BBState probe = result.state;
                probe.config_index[b] = j;
                CHECK(eval_hiff(decode(s, probe)) <= result.score);
            }
        }
    }
}

TEST_CASE("climbs are deterministic in the seed") {
    const BBStructure s = initial_structure(16);
    Rng seeder(123);
    const BBState start = random_state(s, seeder);
    Rng first(77), second(77);
    const ClimbResult ra = bb_hill_climb(s, start, hiff_of, first);
    const ClimbResult rb = bb_hill_climb(s, start, hiff_of, second);
    CHECK(ra.state.config_index == rb.state.config_index);
    CHECK(ra.score == rb.score);
    CHECK(ra.evals_used == rb.evals_used);
}

TEST_CASE("bit-flip hill climber") {
    const ProblemSpec spec = ProblemSpec::for_length(ProblemKind::hiff, 4);
    auto objective = [&spec](const Genotype& g) { return evaluate(spec, g); };
    Rng rng(9);

    CHECK_THROWS_AS(bitflip_hill_climb(objective, Genotype(4, 0), rng, 0),
                    std::invalid_argument);

    // Starting at an optimum never loses it.
    const ClimbResult at_top = bitflip_hill_climb(objective, Genotype(4, 1), rng, 500);
    CHECK(at_top.score == 12.0);
    CHECK(at_top.evals_used == 500);

    // Monotone: the end score never falls below the start score.
    for (int round = 0; round < 1000; ++round) {
        Genotype start(4);
        for (auto& bit : start) bit = static_cast<std::uint8_t>(rng.below(2));
        const double before = objective(start);
        const ClimbResult result = bitflip_hill_climb(objective, start, rng, 1 + rng.below(64));
        CHECK(result.score >= before);
        CHECK(result.score == objective(result.genotype));
    }

    // Counts queries exactly, including the initial one.
    std::uint64_t queries = 0;
    auto counting = [&](const Genotype& g) {
        ++queries;
        return evaluate(spec, g);
    };
    const ClimbResult counted = bitflip_hill_climb(counting, Genotype(4, 0), rng, 37);
    CHECK(queries == 37);
    CHECK(counted.evals_used == 37);
}
