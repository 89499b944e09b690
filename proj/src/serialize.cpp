#include "bbhc/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bbhc {

using nlohmann::json;

json problem_spec_to_json(const ProblemSpec& spec) {
    json j;
    j["kind"] = to_string(spec.kind);
    j["p"] = spec.levels;
    if (spec.shuffle_seed) {
        j["shuffle_seed"] = *spec.shuffle_seed;
    } else {
        j["shuffle_seed"] = nullptr;
    }
    j["level_weight"] = to_string(spec.level_weight);
    return j;
}

ProblemSpec problem_spec_from_json(const json& j) {
    const ProblemKind kind = problem_kind_from_string(j.at("kind").get<std::string>());
    const int levels = j.at("p").get<int>();
    std::optional<std::uint64_t> shuffle_seed;
    if (j.contains("shuffle_seed") && !j.at("shuffle_seed").is_null()) {
        shuffle_seed = j.at("shuffle_seed").get<std::uint64_t>();
    }
    LevelWeight weight = LevelWeight::block_size;
    if (j.contains("level_weight")) {
        weight = level_weight_from_string(j.at("level_weight").get<std::string>());
    }
    return ProblemSpec::make(kind, levels, shuffle_seed, weight);
}

json structure_to_json(const BBStructure& structure, const ProblemSpec& spec, bool unshuffled) {
    json blocks = json::array();
    for (const auto& block : structure.blocks) {
        std::vector<std::size_t> loci = block.loci;
        std::vector<std::size_t> order(loci.size());
        std::iota(order.begin(), order.end(), 0);
        if (unshuffled && spec.shuffled()) {
            for (auto& locus : loci) locus = spec.inverse_shuffle[locus];
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return loci[a] < loci[b]; });
            std::sort(loci.begin(), loci.end());
        }
        json configs = json::array();
        for (const auto& config : block.configs) {
            std::string bits(config.size(), '0');
            for (std::size_t t = 0; t < config.size(); ++t) {
                bits[t] = config[order[t]] ? '1' : '0';
            }
            configs.push_back(bits);
        }
        blocks.push_back(json{{"loci", loci}, {"configs", configs}});
    }
    return blocks;
}

json run_result_to_json(const RunResult& result, const ProblemSpec& spec) {
    json j;
    j["problem"] = to_string(spec.kind);
    j["size"] = spec.length;
    j["shuffle_seed"] = spec.shuffle_seed ? json(*spec.shuffle_seed) : json(nullptr);
    j["success"] = result.reached_optimum;
    j["evals"] = result.total_evals;
    j["all_evals"] = result.all_evals;
    j["best_score"] = result.best_score;
    j["optimum_value"] = global_optimum_value(spec);
    j["epochs"] = result.epochs;
    j["final_blocks"] = result.final_structure.blocks.size();
    j["structure_correct"] = structure_correct(result, spec);
    j["which_optimum"] = result.which_optimum;
    return j;
}

SweepSpec sweep_spec_from_json(const json& j) {
    SweepSpec sweep;
    sweep.problem = problem_kind_from_string(j.at("problem").get<std::string>());
    sweep.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    if (j.contains("runs_per_size")) sweep.runs_per_size = j.at("runs_per_size").get<int>();
    if (j.contains("memory_const")) sweep.memory_const = j.at("memory_const").get<int>();
    if (j.contains("max_evals")) sweep.max_evals = j.at("max_evals").get<std::uint64_t>();
    if (j.contains("stagnation_epochs")) {
        sweep.stagnation_epochs = j.at("stagnation_epochs").get<int>();
    }
    if (j.contains("base_seed")) sweep.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("shuffled")) sweep.shuffled = j.at("shuffled").get<bool>();
    if (j.contains("level_weight")) {
        sweep.level_weight = level_weight_from_string(j.at("level_weight").get<std::string>());
    }
    return sweep;
}

json sweep_spec_to_json(const SweepSpec& sweep) {
    json j;
    j["problem"] = to_string(sweep.problem);
    j["sizes"] = sweep.sizes;
    j["runs_per_size"] = sweep.runs_per_size;
    j["memory_const"] =
        sweep.memory_const > 0 ? sweep.memory_const : default_memory_const(sweep.problem);
    j["max_evals"] = sweep.max_evals;
    j["stagnation_epochs"] = sweep.stagnation_epochs;
    j["base_seed"] = sweep.base_seed;
    j["shuffled"] = sweep.shuffled;
    j["level_weight"] = to_string(sweep.level_weight);
    return j;
}

json summary_to_json(const SweepSpec& sweep, const std::vector<SizeSummary>& summary) {
    json j;
    j["config"] = sweep_spec_to_json(sweep);
    json per_size = json::array();
    for (const auto& s : summary) {
        per_size.push_back(json{{"size", s.size},
                                {"runs", s.runs},
                                {"mean_evals", s.mean_evals},
                                {"std_evals", s.std_evals},
                                {"successes", s.successes},
                                {"success_rate", static_cast<double>(s.successes) / s.runs},
                                {"structure_ok", s.structure_ok},
                                {"optimum_one", s.optimum_one}});
    }
    j["per_size"] = per_size;
    j["ratios"] = mean_ratios(summary);
    j["fit"] = nullptr;
    std::vector<std::pair<double, double>> points;
    for (const auto& s : summary) {
        points.emplace_back(static_cast<double>(s.size), s.mean_evals);
    }
    if (summary.size() >= 2) {
        const FitResult fit = fit_scaling(points);
        j["fit"] = json{{"a", fit.a}, {"b", fit.b}, {"residual", fit.residual}};
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_trace_jsonl(const std::string& path, const RunResult& result) {
    std::ostringstream out;
    for (const auto& record : result.trace) {
        json merges = json::array();
        for (const auto& group : record.merged_groups) {
            json indices = json::array();
            for (std::size_t b : group) indices.push_back(b + 1);  // 1-based for export
            merges.push_back(indices);
        }
        // Loci of the blocks formed by this phase's merges: the merged blocks
        // are appended after the singles in rebuild order.
        json new_blocks = json::array();
        const std::size_t merged_count = record.merged_groups.size();
        for (std::size_t b = record.block_loci.size() - merged_count; b < record.block_loci.size();
             ++b) {
            new_blocks.push_back(record.block_loci[b]);
        }
        const json line = json{{"epoch", record.epoch},
                               {"num_blocks", record.num_blocks},
                               {"memory_size", record.memory_entries},
                               {"evals_so_far", record.evals_so_far},
                               {"best_score", record.best_score},
                               {"merges", merges},
                               {"new_blocks", new_blocks}};
        out << line.dump() << "\n";
    }
    write_text_file(path, out.str());
}

void write_rows_csv(const std::string& path, const std::vector<RunRow>& rows) {
    std::ostringstream out;
    out << "size,seed,evals,success,structure_ok,optimum_id\n";
    for (const auto& row : rows) {
        out << row.size << ',' << row.seed << ',' << row.evals << ',' << (row.success ? 1 : 0)
            << ',' << (row.structure_ok ? 1 : 0) << ',' << row.optimum_id << '\n';
    }
    write_text_file(path, out.str());
}

namespace {

std::string loci_label(const std::vector<std::size_t>& loci) {
    const bool contiguous = std::adjacent_find(loci.begin(), loci.end(), [](auto a, auto b) {
                                return b != a + 1;
                            }) == loci.end();
    std::ostringstream label;
    if (loci.size() == 1) {
        label << loci.front();
    } else if (contiguous) {
        label << loci.front() << ".." << loci.back();
    } else {
        label << loci.size() << " loci";
    }
    return label.str();
}

}  // namespace

std::string merge_tree_dot(const RunResult& result) {
    std::ostringstream out;
    out << "digraph merge_tree {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n";
    // Epoch 0: the primitive single-locus blocks that ever take part in a merge.
    std::size_t num_prev = result.final_structure.total_length;
    std::vector<std::string> prev_ids(num_prev);
    std::vector<std::string> prev_labels(num_prev);
    std::vector<std::uint8_t> labelled(num_prev, 0);
    for (std::size_t i = 0; i < num_prev; ++i) {
        prev_ids[i] = "e0_" + std::to_string(i);
        prev_labels[i] = std::to_string(i);
    }
    for (const auto& record : result.trace) {
        if (record.merged_groups.empty()) continue;
        // Post-phase order: unmerged blocks first (original order), then the
        // merged groups ordered by smallest member.
        std::vector<std::uint8_t> in_merge(num_prev, 0);
        for (const auto& group : record.merged_groups) {
            for (std::size_t b : group) in_merge[b] = 1;
        }
        std::vector<std::string> ids(record.block_loci.size());
        std::vector<std::string> labels(record.block_loci.size());
        std::vector<std::uint8_t> new_labelled(record.block_loci.size(), 0);
        const std::size_t singles = record.block_loci.size() - record.merged_groups.size();
        std::size_t here = 0;
        for (std::size_t b = 0; b < num_prev; ++b) {
            if (!in_merge[b]) {
                ids[here] = prev_ids[b];
                labels[here] = prev_labels[b];
                new_labelled[here] = labelled[b];
                ++here;
            }
        }
        for (std::size_t m = 0; m < record.merged_groups.size(); ++m) {
            const std::string id = "e" + std::to_string(record.epoch) + "_" + std::to_string(m);
            ids[singles + m] = id;
            labels[singles + m] = loci_label(record.block_loci[singles + m]);
            new_labelled[singles + m] = 1;
            out << "  " << id << " [label=\"" << labels[singles + m] << "\"];\n";
            for (std::size_t b : record.merged_groups[m]) {
                if (!labelled[b]) {
                    out << "  " << prev_ids[b] << " [label=\"" << prev_labels[b] << "\"];\n";
                }
                out << "  " << prev_ids[b] << " -> " << id << ";\n";
            }
        }
        prev_ids = std::move(ids);
        prev_labels = std::move(labels);
        labelled = std::move(new_labelled);
        num_prev = prev_ids.size();
    }
    out << "}\n";
    return out.str();
}

std::string plot_script() {
    return R"PY(#!/usr/bin/env python3
"""Render sweep results: log-log scaling plot with the fitted a*x^b*log(x)."""
import csv
import json
import math
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main(summary_path="summary.json", rows_path="rows.csv", out_path="scaling.png"):
    with open(summary_path) as fh:
        summary = json.load(fh)
    sizes = [s["size"] for s in summary["per_size"]]
    means = [s["mean_evals"] for s in summary["per_size"]]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    try:
        with open(rows_path) as fh:
            rows = list(csv.DictReader(fh))
        ax.scatter([int(r["size"]) for r in rows], [int(r["evals"]) for r in rows],
                   s=8, alpha=0.3, label="runs")
    except FileNotFoundError:
        pass
    ax.plot(sizes, means, "o-", label="mean")
    fit = summary.get("fit")
    if fit:
        xs = [min(sizes) * (max(sizes) / min(sizes)) ** (i / 99.0) for i in range(100)]
        ys = [fit["a"] * x ** fit["b"] * math.log(x) for x in xs]
        ax.plot(xs, ys, "--", label=f"fit: {fit['a']:.2f} x^{fit['b']:.3f} log x")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("problem size (bits)")
    ax.set_ylabel("objective evaluations")
    ax.legend()
    ax.set_title(summary["config"]["problem"])
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    print(f"wrote {out_path}")


if __name__ == "__main__":
    main(*sys.argv[1:])
)PY";
}

}  // namespace bbhc
