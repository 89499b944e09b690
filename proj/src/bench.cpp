#include "bbhc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

namespace bbhc {

namespace {

void parallel_for(std::size_t jobs, int threads, const std::function<void(std::size_t)>& body) {
    unsigned n = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
    n = std::max(1u, std::min<unsigned>(n, jobs == 0 ? 1 : static_cast<unsigned>(jobs)));
    if (n == 1) {
        for (std::size_t i = 0; i < jobs; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs) return;
                body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

RunConfig config_for(const SweepSpec& sweep, std::uint64_t rng_seed) {
    RunConfig config;
    config.rng_seed = rng_seed;
    config.memory_const =
        sweep.memory_const > 0 ? sweep.memory_const : default_memory_const(sweep.problem);
    config.max_evals = sweep.max_evals;
    config.stagnation_epochs = sweep.stagnation_epochs;
    return config;
}

void validate_sweep(const SweepSpec& sweep) {
    if (sweep.sizes.empty()) throw std::invalid_argument("sweep: no sizes");
    if (sweep.runs_per_size < 1) throw std::invalid_argument("sweep: runs_per_size must be >= 1");
    for (std::size_t size : sweep.sizes) {
        ProblemSpec::for_length(sweep.problem, size);  // validates the power of k
    }
}

}  // namespace

int default_memory_const(ProblemKind kind) {
    return kind == ProblemKind::htrap ? 18 : 16;
}

std::pair<std::uint64_t, std::uint64_t> sweep_run_seeds(const SweepSpec& sweep, std::size_t size,
                                                        int index) {
    const std::uint64_t cell = mix_seed(sweep.base_seed, static_cast<std::uint64_t>(size));
    return {mix_seed(cell, 2 * static_cast<std::uint64_t>(index)),
            mix_seed(cell, 2 * static_cast<std::uint64_t>(index) + 1)};
}

RunResult rerun_sweep_cell(const SweepSpec& sweep, std::size_t size, int index,
                           ProblemSpec* spec_out) {
    const auto [rng_seed, shuffle_seed] = sweep_run_seeds(sweep, size, index);
    ProblemSpec spec = ProblemSpec::for_length(
        sweep.problem, size,
        sweep.shuffled ? std::optional<std::uint64_t>(shuffle_seed) : std::nullopt,
        sweep.level_weight);
    RunResult result = run_bbhc(spec, config_for(sweep, rng_seed));
    if (spec_out) *spec_out = std::move(spec);
    return result;
}

std::vector<RunRow> run_sweep(const SweepSpec& sweep, int threads) {
    validate_sweep(sweep);
    struct Job {
        std::size_t size;
        int index;
    };
    std::vector<Job> jobs;
    for (std::size_t size : sweep.sizes) {
        for (int i = 0; i < sweep.runs_per_size; ++i) jobs.push_back({size, i});
    }
    std::vector<RunRow> rows(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t j) {
        const Job job = jobs[j];
        ProblemSpec spec;
        const RunResult result = rerun_sweep_cell(sweep, job.size, job.index, &spec);
        RunRow row;
        row.size = job.size;
        row.run_index = job.index;
        row.seed = sweep_run_seeds(sweep, job.size, job.index).first;
        row.evals = result.total_evals;
        row.success = result.reached_optimum;
        row.structure_ok = structure_correct(result, spec);
        row.optimum_id = result.which_optimum;
        rows[j] = std::move(row);
    });
    return rows;
}

std::vector<SizeSummary> summarize(const std::vector<RunRow>& rows) {
    std::map<std::size_t, std::vector<const RunRow*>> by_size;
    for (const auto& row : rows) by_size[row.size].push_back(&row);
    std::vector<SizeSummary> out;
    for (const auto& [size, group] : by_size) {
        SizeSummary s;
        s.size = size;
        s.runs = static_cast<int>(group.size());
        double sum = 0.0;
        for (const auto* row : group) sum += static_cast<double>(row->evals);
        s.mean_evals = sum / static_cast<double>(group.size());
        double sq = 0.0;
        for (const auto* row : group) {
            const double d = static_cast<double>(row->evals) - s.mean_evals;
            sq += d * d;
        }
        s.std_evals = std::sqrt(sq / static_cast<double>(group.size()));
        for (const auto* row : group) {
            s.successes += row->success ? 1 : 0;
            s.structure_ok += row->structure_ok ? 1 : 0;
            s.optimum_one += row->optimum_id == 1 ? 1 : 0;
        }
        out.push_back(s);
    }
    return out;
}

std::vector<double> mean_ratios(const std::vector<SizeSummary>& summary) {
    std::vector<double> ratios;
    for (std::size_t i = 1; i < summary.size(); ++i) {
        ratios.push_back(summary[i].mean_evals / summary[i - 1].mean_evals);
    }
    return ratios;
}

FitResult fit_scaling(const std::vector<std::pair<double, double>>& points) {
    std::vector<double> xs;
    for (const auto& [x, y] : points) {
        if (x < 2.0) throw std::invalid_argument("fit_scaling: sizes must be >= 2");
        if (y <= 0.0) throw std::invalid_argument("fit_scaling: values must be positive");
        xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    if (std::unique(xs.begin(), xs.end()) - xs.begin() < 2) {
        throw std::invalid_argument("fit_scaling: need at least 2 distinct sizes");
    }

    // z = log y - log log x = log a + b * log x, ordinary least squares.
    const double n = static_cast<double>(points.size());
    double st = 0.0, sz = 0.0, stt = 0.0, stz = 0.0;
    for (const auto& [x, y] : points) {
        const double t = std::log(x);
        const double z = std::log(y) - std::log(std::log(x));
        st += t;
        sz += z;
        stt += t * t;
        stz += t * z;
    }
    FitResult fit;
    fit.b = (n * stz - st * sz) / (n * stt - st * st);
    const double log_a = (sz - fit.b * st) / n;
    fit.a = std::exp(log_a);
    for (const auto& [x, y] : points) {
        const double t = std::log(x);
        const double z = std::log(y) - std::log(std::log(x));
        const double r = z - (log_a + fit.b * t);
        fit.residual += r * r;
    }
    return fit;
}

BaselineResult compare_baseline(ProblemKind kind, std::size_t size, std::uint64_t budget,
                                int runs, std::uint64_t base_seed, bool shuffled, int threads) {
    if (budget == 0) throw std::invalid_argument("compare_baseline: budget must be positive");
    if (runs < 1) throw std::invalid_argument("compare_baseline: runs must be >= 1");
    std::vector<int> success(runs, 0);
    std::vector<double> fraction(runs, 0.0);
    parallel_for(static_cast<std::size_t>(runs), threads, [&](std::size_t i) {
        const std::uint64_t cell = mix_seed(base_seed, static_cast<std::uint64_t>(size) + 0x51u);
        const std::uint64_t rng_seed = mix_seed(cell, 2 * i);
        const std::uint64_t shuffle_seed = mix_seed(cell, 2 * i + 1);
        const ProblemSpec spec = ProblemSpec::for_length(
            kind, size, shuffled ? std::optional<std::uint64_t>(shuffle_seed) : std::nullopt);
        Evaluator evaluator(spec);
        Rng rng(rng_seed);
        Genotype start(size);
        for (auto& bit : start) bit = static_cast<std::uint8_t>(rng.below(2));
        const ClimbResult result = bitflip_hill_climb(
            [&evaluator](const Genotype& g) { return evaluator(g); }, start, rng, budget);
        success[i] = result.score >= evaluator.optimum() - 1e-9 ? 1 : 0;
        fraction[i] = evaluator.optimum() > 0.0 ? result.score / evaluator.optimum() : 1.0;
    });
    BaselineResult out;
    out.runs = runs;
    for (int i = 0; i < runs; ++i) {
        out.successes += success[i];
        out.mean_best_fraction += fraction[i];
    }
    out.mean_best_fraction /= static_cast<double>(runs);
    return out;
}

}  // namespace bbhc
