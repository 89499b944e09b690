// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. The heavyweight sweeps are executed once and shared between the
// statistical criteria; every tolerance is pinned here in code.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "bbhc/bench.hpp"
#include "bbhc/serialize.hpp"
#include "oracles.hpp"

using namespace bbhc;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %02d %s (%s)\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
    va_list args;
    va_start(args, format);
    char buffer[512];
    std::vsnprintf(buffer, sizeof buffer, format, args);
    va_end(args);
    return buffer;
}

const SizeSummary& at_size(const std::vector<SizeSummary>& summary, std::size_t size) {
    for (const auto& s : summary) {
        if (s.size == size) return s;
    }
    throw std::logic_error("missing size in summary");
}

// --- criterion 1: evaluators match the brute-force recursions exactly ----

void criterion_oracle_equivalence() {
    bool pass = true;
    std::string detail = "all inputs matched";
    for (std::size_t l : {std::size_t{4}, std::size_t{8}}) {
        for (const auto& x : oracle::all_genotypes(l)) {
            if (eval_hiff(x) != oracle::hiff(to_string(x)) ||
                eval_hxor(x) != oracle::hxor(to_string(x))) {
                pass = false;
                detail = "mismatch at hIFF/hXOR l=" + std::to_string(l) + " x=" + to_string(x);
            }
        }
    }
    const ProblemSpec spec9 = ProblemSpec::for_length(ProblemKind::htrap, 9);
    for (const auto& x : oracle::all_genotypes(9)) {
        if (std::abs(eval_htrap(x, spec9) - oracle::htrap(to_string(x))) > 1e-12) {
            pass = false;
            detail = "mismatch at hTrap x=" + to_string(x);
        }
    }
    report(1, "evaluators match brute-force recursion (hIFF/hXOR l=4,8; hTrap l=9)", pass,
           detail);
}

// --- criterion 2: worked-example fidelity --------------------------------

void criterion_worked_examples() {
    const BBStructure s = oracle::worked_example_structure();
    bool pass = true;
    std::string detail = "decode + linkage reproduce the worked values";

    const auto expect_decode = [&](std::vector<std::size_t> indices, const std::string& bits) {
        if (to_string(decode(s, {indices})) != bits) {
            pass = false;
            detail = "decode mismatch for " + bits;
        }
    };
    expect_decode({1, 2, 0}, "01101100");
    expect_decode({1, 0, 0}, "01000100");
    expect_decode({1, 1, 0}, "01001100");
    expect_decode({1, 3, 0}, "01100100");

    MemoryBuffer memory(4);
    for (const auto& indices : {std::vector<std::size_t>{0, 0, 0},
                                std::vector<std::size_t>{1, 2, 1},
                                std::vector<std::size_t>{0, 0, 0},
                                std::vector<std::size_t>{1, 2, 0}}) {
        BBState state{indices};
        memory.add({state, decode(s, state), 0.0});
    }
    const auto clusters = detect_clusters(s, memory);
    if (clusters.size() != 2 || clusters[0] != std::vector<std::size_t>{0, 1} ||
        clusters[1] != std::vector<std::size_t>{2}) {
        pass = false;
        detail = "clusters differ from {b1,b2},{b3}";
    } else {
        const BBStructure rebuilt = rebuild_structure(s, clusters, memory);
        const auto& merged = rebuilt.blocks.back();
        if (merged.loci != std::vector<std::size_t>{1, 2, 4, 5} ||
            merged.configs != std::vector<BitPattern>{{0, 0, 0, 0}, {1, 1, 1, 1}}) {
            pass = false;
            detail = "merged block differs from loci {2,3,5,6}, V = {0000,1111}";
        }
    }
    report(2, "worked decode and linkage examples", pass, detail);
}

// --- criteria 3-9: statistics over the shared sweeps ----------------------

struct SweepData {
    SweepSpec spec;
    std::vector<RunRow> rows;
    std::vector<SizeSummary> summary;
};

SweepData sweep_for(ProblemKind kind, std::vector<std::size_t> sizes, int runs,
                    std::uint64_t base_seed) {
    SweepData data;
    data.spec.problem = kind;
    data.spec.sizes = std::move(sizes);
    data.spec.runs_per_size = runs;
    data.spec.base_seed = base_seed;
    data.spec.max_evals = 5'000'000;
    data.rows = run_sweep(data.spec);
    data.summary = summarize(data.rows);
    return data;
}

void criterion_hiff256(const SweepData& hiff) {
    const SizeSummary& s = at_size(hiff.summary, 256);
    const bool pass = s.mean_evals >= 14000.0 && s.mean_evals <= 31000.0 &&
                      s.successes == s.runs;
    report(3, "shuffled hIFF-256: mean evals in [14000, 31000], all runs solve", pass,
           fmt("mean=%.0f, solved %d/%d", s.mean_evals, s.successes, s.runs));
}

void criterion_hiff512(const SweepData& hiff) {
    const SizeSummary& s256 = at_size(hiff.summary, 256);
    const SizeSummary& s512 = at_size(hiff.summary, 512);
    const double ratio = s512.mean_evals / s256.mean_evals;
    const bool pass = ratio <= 2.6 && s512.successes == s512.runs;
    report(4, "shuffled hIFF-512: mean evals <= 2.6x the 256-bit mean, all runs solve", pass,
           fmt("ratio=%.2f, solved %d/%d", ratio, s512.successes, s512.runs));
}

void criterion_scaling_exponents(const SweepData& hiff, const SweepData& hxor,
                                 const SweepData& htrap) {
    const auto fit_of = [](const SweepData& data) {
        std::vector<std::pair<double, double>> points;
        for (const auto& s : data.summary) {
            points.emplace_back(static_cast<double>(s.size), s.mean_evals);
        }
        return fit_scaling(points);
    };
    const FitResult fh = fit_of(hiff);
    const FitResult fx = fit_of(hxor);
    const FitResult ft = fit_of(htrap);
    const bool pass = fh.b >= 0.85 && fh.b <= 1.15 && fx.b >= 0.85 && fx.b <= 1.15 &&
                      ft.b >= 0.78 && ft.b <= 1.12;
    report(5, "scaling fit a*x^b*log(x): b in [0.85,1.15] (hIFF,hXOR), [0.78,1.12] (hTrap)",
           pass, fmt("b_hiff=%.3f, b_hxor=%.3f, b_htrap=%.3f", fh.b, fx.b, ft.b));
}

void criterion_structural_parity(const SweepData& hiff, const SweepData& hxor) {
    const double a = at_size(hiff.summary, 256).mean_evals;
    const double b = at_size(hxor.summary, 256).mean_evals;
    const double gap = std::abs(a - b) / std::min(a, b);
    report(6, "hIFF and hXOR mean evals at 256 agree within 10%", gap <= 0.10,
           fmt("hiff=%.0f, hxor=%.0f, gap=%.1f%%", a, b, 100.0 * gap));
}

void criterion_structure_detection(const SweepData& hiff) {
    const SizeSummary& s = at_size(hiff.summary, 128);
    const bool pass = s.structure_ok >= 29;
    report(7, "perfect structure detection on shuffled hIFF-128 in >= 29/30 runs", pass,
           fmt("structure_ok %d/%d", s.structure_ok, s.runs));
}

void criterion_unbiasedness() {
    bool pass = true;
    std::string detail;
    for (ProblemKind kind : {ProblemKind::hiff, ProblemKind::hxor}) {
        SweepSpec sweep;
        sweep.problem = kind;
        sweep.sizes = {128};
        sweep.runs_per_size = 100;
        sweep.base_seed = 777;
        sweep.max_evals = 5'000'000;
        const auto rows = run_sweep(sweep);
        int ones = 0;
        for (const auto& row : rows) ones += row.optimum_id == 1 ? 1 : 0;
        pass = pass && ones >= 35 && ones <= 65;
        detail += fmt("%s%s: %d/100 on the 1-side", detail.empty() ? "" : ", ",
                      to_string(kind), ones);
    }
    report(8, "both optima found in [35, 65] of 100 runs at l=128", pass, detail);
}

void criterion_stability(const SweepData& hiff) {
    const SizeSummary& s = at_size(hiff.summary, 256);
    report(9, "std of evals at hIFF-256 <= 2000", s.std_evals <= 2000.0,
           fmt("std=%.0f", s.std_evals));
}

void criterion_baseline(const SweepData& hiff) {
    const double budget = at_size(hiff.summary, 128).mean_evals;
    const BaselineResult base = compare_baseline(
        ProblemKind::hiff, 128, static_cast<std::uint64_t>(budget), 100, 4242, true);
    report(10, "bit-flip climber with the BBHC-128 mean budget solves <= 5/100 runs",
           base.successes <= 5,
           fmt("budget=%.0f, solved %d/100, best fraction %.2f", budget, base.successes,
               base.mean_best_fraction));
}

// --- criterion 11: property suites ----------------------------------------

bool property_complement_symmetry(Rng& rng) {
    for (int round = 0; round < 1000; ++round) {
        const std::size_t l = std::size_t{1} << rng.below(6);
        Genotype x(l);
        for (auto& bit : x) bit = static_cast<std::uint8_t>(rng.below(2));
        Genotype y = x;
        for (auto& bit : y) bit ^= 1;
        if (eval_hiff(x) != eval_hiff(y) || eval_hxor(x) != eval_hxor(y)) return false;
    }
    return true;
}

bool property_shuffle_invariance(Rng& rng) {
    for (int round = 0; round < 1000; ++round) {
        const std::size_t l = std::size_t{1} << (1 + rng.below(5));
        const auto kind = rng.below(2) == 0 ? ProblemKind::hiff : ProblemKind::hxor;
        const ProblemSpec base = ProblemSpec::for_length(kind, l);
        const ProblemSpec shuffled = ProblemSpec::for_length(kind, l, rng.next());
        Genotype x(l);
        for (auto& bit : x) bit = static_cast<std::uint8_t>(rng.below(2));
        Genotype image(l);
        for (std::size_t i = 0; i < l; ++i) image[shuffled.shuffle[i]] = x[i];
        if (evaluate(shuffled, image) != evaluate(base, x)) return false;
    }
    return true;
}

bool property_monotone_climbs(Rng& rng) {
    for (int round = 0; round < 1000; ++round) {
        const std::size_t l = std::size_t{2} << rng.below(4);
        const ProblemSpec spec = ProblemSpec::for_length(ProblemKind::hiff, l, rng.next());
        const BBStructure s = initial_structure(l);
        BBState state = random_state(s, rng);
        Genotype genotype = decode(s, state);
        auto objective = [&spec](const Genotype& g) { return evaluate(spec, g); };
        double previous = -1.0;
        std::uint64_t evals = 0;
        for (std::size_t block : rng.permutation(s.blocks.size())) {
            const double kept = climb_block(s, block, state, genotype, objective, rng, evals);
            if (kept < previous) return false;
            previous = kept;
        }
        if (evals != 2 * l) return false;  // one query per configuration
    }
    return true;
}

bool property_partition_invariant(Rng& rng) {
    for (int round = 0; round < 1000; ++round) {
        const std::size_t l = 4 + rng.below(12);
        const BBStructure s = initial_structure(l);
        MemoryBuffer memory(2 + rng.below(6));
        for (std::size_t t = 0; t < memory.capacity(); ++t) {
            const BBState state = random_state(s, rng);
            memory.add({state, decode(s, state), 0.0});
        }
        const BBStructure rebuilt = rebuild_structure(s, detect_clusters(s, memory), memory);
        if (!is_valid_partition(rebuilt)) return false;
        if (rebuilt.blocks.size() > s.blocks.size()) return false;
    }
    return true;
}

bool property_linkage_equivalence(Rng& rng) {
    for (int round = 0; round < 1000; ++round) {
        const std::size_t l = 4 + rng.below(8);
        const BBStructure s = initial_structure(l);
        MemoryBuffer memory(2 + rng.below(5));
        for (std::size_t t = 0; t < memory.capacity(); ++t) {
            const BBState state = random_state(s, rng);
            memory.add({state, decode(s, state), 0.0});
        }
        const std::size_t i = rng.below(l);
        const std::size_t j = rng.below(l);
        const std::size_t k = rng.below(l);
        if (!linked(i, i, memory)) return false;
        if (linked(i, j, memory) != linked(j, i, memory)) return false;
        if (linked(i, j, memory) && linked(j, k, memory) && !linked(i, k, memory)) return false;
    }
    return true;
}

bool property_determinism(Rng& rng) {
    for (int round = 0; round < 12; ++round) {
        const std::size_t l = std::size_t{8} << rng.below(3);
        const ProblemSpec spec = ProblemSpec::for_length(ProblemKind::hxor, l, rng.next());
        RunConfig config;
        config.rng_seed = rng.next();
        const RunResult a = run_bbhc(spec, config);
        const RunResult b = run_bbhc(spec, config);
        if (a.total_evals != b.total_evals || a.best_score != b.best_score ||
            a.best_genotype != b.best_genotype || a.epochs != b.epochs) {
            return false;
        }
    }
    return true;
}

void criterion_properties() {
    Rng rng(20240808);
    struct Property {
        const char* name;
        std::function<bool(Rng&)> run;
    };
    const std::vector<Property> properties = {
        {"complement symmetry", property_complement_symmetry},
        {"shuffle invariance", property_shuffle_invariance},
        {"monotone climb scores", property_monotone_climbs},
        {"partition invariants", property_partition_invariant},
        {"linkage equivalence laws", property_linkage_equivalence},
        {"determinism under fixed seeds", property_determinism},
    };
    bool pass = true;
    std::string detail;
    for (const auto& property : properties) {
        const bool ok = property.run(rng);
        pass = pass && ok;
        if (!ok) detail += fmt("%s%s failed", detail.empty() ? "" : ", ", property.name);
    }
    if (detail.empty()) detail = "6 property suites, >= 1000 cases each";
    report(11, "randomized property suites", pass, detail);
}

}  // namespace

int main() {
    std::printf("building-block hill-climber acceptance suite\n");

    criterion_oracle_equivalence();
    criterion_worked_examples();

    const SweepData hiff = sweep_for(ProblemKind::hiff, {128, 256, 512, 1024}, 30, 101);
    const SweepData hxor = sweep_for(ProblemKind::hxor, {128, 256, 512, 1024}, 30, 202);
    const SweepData htrap = sweep_for(ProblemKind::htrap, {81, 243, 729}, 30, 303);

    criterion_hiff256(hiff);
    criterion_hiff512(hiff);
    criterion_scaling_exponents(hiff, hxor, htrap);
    criterion_structural_parity(hiff, hxor);
    criterion_structure_detection(hiff);
    criterion_unbiasedness();
    criterion_stability(hiff);
    criterion_baseline(hiff);
    criterion_properties();

    std::printf("%d criteria failed\n", g_failures);
    return g_failures;
}
