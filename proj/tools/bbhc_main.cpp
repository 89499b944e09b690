// Command-line interface for the building-block hill-climber: single runs,
// scaling sweeps, the scaling-law fit and the bit-flip baseline.
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid arguments,
// 3 optimum not reached when --require-optimum is set.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbhc/bench.hpp"
#include "bbhc/serialize.hpp"

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    json j;
    in >> j;
    return j;
}

struct RunOptions {
    std::string problem;
    std::size_t size = 0;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> shuffle_seed;
    int memory_const = 0;
    std::uint64_t max_evals = 50'000'000;
    int stagnation = 30;
    std::string level_weight = "block_size";
    bool run_to_convergence = false;
    bool require_optimum = false;
    std::string trace_path;
    std::string structure_path;
    bool structure_unshuffled = false;
};

int do_run(const RunOptions& opt) {
    const bbhc::ProblemKind kind = bbhc::problem_kind_from_string(opt.problem);
    const bbhc::ProblemSpec spec = bbhc::ProblemSpec::for_length(
        kind, opt.size, opt.shuffle_seed, bbhc::level_weight_from_string(opt.level_weight));
    bbhc::RunConfig config;
    config.rng_seed = opt.seed;
    config.memory_const =
        opt.memory_const > 0 ? opt.memory_const : bbhc::default_memory_const(kind);
    config.max_evals = opt.max_evals;
    config.stagnation_epochs = opt.stagnation;
    config.stop_at_optimum = !opt.run_to_convergence;

    const bbhc::RunResult result = bbhc::run_bbhc(spec, config);

    if (!opt.trace_path.empty()) bbhc::write_trace_jsonl(opt.trace_path, result);
    if (!opt.structure_path.empty()) {
        bbhc::write_text_file(
            opt.structure_path,
            bbhc::structure_to_json(result.final_structure, spec, opt.structure_unshuffled)
                .dump(2) + "\n");
    }
    std::cout << bbhc::run_result_to_json(result, spec).dump(2) << "\n";
    if (opt.require_optimum && !result.reached_optimum) return 3;
    return 0;
}

int do_sweep(const std::string& config_path, const std::string& out_dir, int threads) {
    const json config = read_json_file(config_path);
    const bbhc::SweepSpec sweep = bbhc::sweep_spec_from_json(config);

    std::filesystem::create_directories(out_dir);
    const auto rows = bbhc::run_sweep(sweep, threads);
    const auto summary = bbhc::summarize(rows);
    const auto out = [&](const std::string& name) { return out_dir + "/" + name; };

    // Soft check only: the consecutive mean ratios should fall toward the
    // branching factor; finite-size effects and failed runs can break it.
    const auto ratios = bbhc::mean_ratios(summary);
    const double k = sweep.problem == bbhc::ProblemKind::htrap ? 3.0 : 2.0;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const bool grew = i > 0 && ratios[i] > ratios[i - 1];
        if (grew || ratios[i] < k * 0.8) {
            std::cerr << "warning: mean ratio " << summary[i].size << "->" << summary[i + 1].size
                      << " is " << ratios[i] << ", not falling toward " << k << "\n";
        }
    }

    bbhc::write_rows_csv(out("rows.csv"), rows);
    bbhc::write_text_file(out("summary.json"),
                          bbhc::summary_to_json(sweep, summary).dump(2) + "\n");
    bbhc::write_text_file(out("plot.py"), bbhc::plot_script());

    // Optional per-run trace/merge-tree exports: "traces": [{"size":..,"run":..}].
    if (config.contains("traces")) {
        for (const auto& cell : config.at("traces")) {
            const std::size_t size = cell.at("size").get<std::size_t>();
            const int run = cell.at("run").get<int>();
            const bbhc::RunResult result = bbhc::rerun_sweep_cell(sweep, size, run);
            const std::string tag = std::to_string(size) + "_" + std::to_string(run);
            bbhc::write_trace_jsonl(out("trace_" + tag + ".jsonl"), result);
            bbhc::write_text_file(out("merge_tree_" + tag + ".dot"),
                                  bbhc::merge_tree_dot(result));
        }
    }

    std::cout << bbhc::summary_to_json(sweep, summary).dump(2) << "\n";
    return 0;
}

int do_fit(const std::string& in_path) {
    const json j = read_json_file(in_path);
    std::vector<std::pair<double, double>> points;
    if (j.contains("per_size")) {
        for (const auto& s : j.at("per_size")) {
            points.emplace_back(s.at("size").get<double>(), s.at("mean_evals").get<double>());
        }
    } else if (j.contains("points")) {
        for (const auto& p : j.at("points")) {
            points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        }
    } else {
        throw std::invalid_argument("fit input needs per_size records or points");
    }
    const bbhc::FitResult fit = bbhc::fit_scaling(points);
    std::cout << json{{"a", fit.a}, {"b", fit.b}, {"residual", fit.residual}}.dump(2) << "\n";
    return 0;
}

int do_baseline(const std::string& problem, std::size_t size, std::uint64_t budget, int runs,
                std::uint64_t seed, bool unshuffled, int threads) {
    const bbhc::ProblemKind kind = bbhc::problem_kind_from_string(problem);
    const bbhc::BaselineResult result =
        bbhc::compare_baseline(kind, size, budget, runs, seed, !unshuffled, threads);
    std::cout << json{{"problem", problem},
                      {"size", size},
                      {"budget", budget},
                      {"runs", result.runs},
                      {"successes", result.successes},
                      {"success_rate", static_cast<double>(result.successes) / result.runs},
                      {"mean_best_fraction", result.mean_best_fraction}}
                     .dump(2)
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Building-block hill-climber for hierarchical test functions"};
    app.require_subcommand(1);

    RunOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "Execute one BBHC run");
    run->add_option("--problem", run_opt.problem, "hiff|hxor|htrap")->required();
    run->add_option("--size", run_opt.size, "Problem size (power of 2, or 3 for htrap)")
        ->required();
    run->add_option("--seed", run_opt.seed, "RNG seed");
    run->add_option("--shuffle-seed", run_opt.shuffle_seed,
                    "Shuffle the bit positions with this seed (absent = unshuffled)");
    run->add_option("--memory-const", run_opt.memory_const,
                    "Memory size constant c (0 = problem default)");
    run->add_option("--max-evals", run_opt.max_evals, "Evaluation budget");
    run->add_option("--stagnation", run_opt.stagnation,
                    "Stop after this many learning phases without structural change");
    run->add_option("--level-weight", run_opt.level_weight, "block_size|uniform");
    run->add_flag("--run-to-convergence", run_opt.run_to_convergence,
                  "Keep climbing past the first optimum until the structure converges");
    run->add_flag("--require-optimum", run_opt.require_optimum,
                  "Exit with code 3 when the run ends without reaching the optimum");
    run->add_option("--trace", run_opt.trace_path, "Write a JSON-lines epoch trace here");
    run->add_option("--structure-out", run_opt.structure_path,
                    "Write the final block structure as JSON here");
    run->add_flag("--structure-unshuffled", run_opt.structure_unshuffled,
                  "Export structural (unshuffled) coordinates");

    std::string sweep_config, sweep_out;
    int threads = 0;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a scaling sweep from a JSON config");
    sweep->add_option("--config", sweep_config, "Sweep configuration JSON")->required();
    sweep->add_option("--out", sweep_out, "Output directory")->required();
    sweep->add_option("--threads", threads, "Worker threads (0 = hardware)");

    std::string fit_in;
    CLI::App* fit = app.add_subcommand("fit", "Fit a*x^b*log(x) to sweep means");
    fit->add_option("--in", fit_in, "summary.json or {\"points\": [[x,y],...]}")->required();

    std::string base_problem;
    std::size_t base_size = 0;
    std::uint64_t base_budget = 0;
    int base_runs = 100;
    std::uint64_t base_seed = 1;
    bool base_unshuffled = false;
    int base_threads = 0;
    CLI::App* baseline = app.add_subcommand("baseline", "Bit-flip hill-climber comparison");
    baseline->add_option("--problem", base_problem, "hiff|hxor|htrap")->required();
    baseline->add_option("--size", base_size, "Problem size")->required();
    baseline->add_option("--budget", base_budget, "Evaluations per run")->required();
    baseline->add_option("--runs", base_runs, "Number of runs");
    baseline->add_option("--seed", base_seed, "Base seed");
    baseline->add_flag("--unshuffled", base_unshuffled, "Disable per-run shuffling");
    baseline->add_option("--threads", base_threads, "Worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return do_run(run_opt);
        if (sweep->parsed()) return do_sweep(sweep_config, sweep_out, threads);
        if (fit->parsed()) return do_fit(fit_in);
        if (baseline->parsed()) {
            return do_baseline(base_problem, base_size, base_budget, base_runs, base_seed,
                               base_unshuffled, base_threads);
        }
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
