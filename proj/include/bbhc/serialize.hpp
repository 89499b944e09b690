#pragma once

// JSON/CSV/DOT exchange formats: problem specs, block structures, run
// traces, sweep configuration and results. Exported block and configuration
// indices are 1-based to line up with hand-worked examples; loci are 0-based
// genotype coordinates unless unshuffled coordinates are requested.

#include <string>

#include <json.hpp>

#include "bbhc/bench.hpp"
#include "bbhc/driver.hpp"

namespace bbhc {

nlohmann::json problem_spec_to_json(const ProblemSpec& spec);
ProblemSpec problem_spec_from_json(const nlohmann::json& j);

// [{"loci": [...], "configs": ["0110", ...]}, ...]. When unshuffled = true
// the loci are mapped back to structural coordinates (and re-sorted, with
// the config bit order following the new loci order).
nlohmann::json structure_to_json(const BBStructure& structure, const ProblemSpec& spec,
                                 bool unshuffled = false);

nlohmann::json run_result_to_json(const RunResult& result, const ProblemSpec& spec);

SweepSpec sweep_spec_from_json(const nlohmann::json& j);
nlohmann::json sweep_spec_to_json(const SweepSpec& sweep);

nlohmann::json summary_to_json(const SweepSpec& sweep, const std::vector<SizeSummary>& summary);

// One record per learning phase: {"epoch", "num_blocks", "memory_size",
// "evals_so_far", "best_score", "merges", "new_blocks"}.
void write_trace_jsonl(const std::string& path, const RunResult& result);

// Header: size,seed,evals,success,structure_ok,optimum_id
void write_rows_csv(const std::string& path, const std::vector<RunRow>& rows);

void write_text_file(const std::string& path, const std::string& content);

// Merge tree of a finished run in Graphviz DOT format.
std::string merge_tree_dot(const RunResult& result);

// Self-contained matplotlib script that renders rows.csv/summary.json.
std::string plot_script();

}  // namespace bbhc
