#pragma once

#include "medlat/corpus.h"
#include "medlat/decimal.h"
#include "medlat/evaluation.h"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace medlat::scenario {

// The three tasks share their names with the evaluated columns.
using Task = evaluation::Field;

enum class ScenarioKind {
    baseline,          // cross-validation over eFontes genres only
    ud_all,            // all UD treebanks, tested on every genre
    ud_plus_specific,  // all UD, then one UD treebank
    ud_plus_efontes,   // all UD, then the cross-validation training genres
    specific_plus_efontes, // all UD, one UD treebank, then the genres; off unless asked for
};

std::string to_string(ScenarioKind kind);

struct Scenario {
    ScenarioKind kind = ScenarioKind::baseline;
    // ud_plus_specific / specific_plus_efontes: one treebank, or every UD treebank when unset.
    std::optional<std::string> ud_name;
    std::vector<Task> tasks{Task::upos, Task::ufeats, Task::lemma};
};

// "baseline", "ud_all", "ud_plus_specific", "ud_plus_specific:PROIEL", "ud_plus_efontes",
// "specific_plus_efontes[:NAME]". Throws InvalidScenario.
Scenario parse_scenario(std::string_view s);

struct Stage {
    std::vector<std::string> datasets;
    // Overrides the execution-wide epoch count for this stage (tagging tasks only).
    std::optional<int> epochs;

    bool operator==(const Stage&) const = default;
};

struct TrainingRun {
    std::string run_id;   // label:task[:test genre]
    std::string label;    // baseline, ud_all, ud_plus_proiel, ud_plus_efontes, ...
    Task task = Task::upos;
    std::vector<Stage> stages;
    std::vector<std::string> test_datasets;

    bool operator==(const TrainingRun&) const = default;
};

struct RunPlan {
    std::vector<TrainingRun> runs;

    // Number of (run, test genre) cells the plan produces.
    std::size_t evaluation_count() const;
    std::size_t count(std::string_view label_prefix) const;
};

struct PlanOptions {
    bool allow_specific_plus_efontes = false;
    double validation_fraction = 0.1;
};

// Errors: MissingDataset, InvalidScenario (specific_plus_efontes without the flag).
RunPlan plan(const Scenario& scenario, const corpus::Registry& registry, const PlanOptions& options = {});
// Concatenated plans; throws DuplicateRunId.
RunPlan plan_all(const std::vector<Scenario>& scenarios, const corpus::Registry& registry,
                 const PlanOptions& options = {});

// "run_id TAB label TAB task TAB stage1;stage2 TAB tests" rows, or an aligned table.
std::string format_plan_rows(const RunPlan& plan);
std::string format_plan_table(const RunPlan& plan);

struct ResultRow {
    std::string run_id;
    std::string genre;
    Task task = Task::upos;
    Decimal2 accuracy;

    // Scenario label: the run id up to its first ':'.
    std::string label() const;

    bool operator==(const ResultRow&) const = default;
};

// (scenario label, genre, task) -> accuracy.
struct ResultGrid {
    std::vector<ResultRow> rows;

    std::optional<Decimal2> get(std::string_view label, std::string_view genre, Task task) const;
    bool operator==(const ResultGrid&) const = default;
};

inline constexpr std::string_view kResultsHeader = "#medlat-results v1";

// Rows keyed by (run_id, genre); upsert replaces, the file lists keys in sorted
// order so the bytes do not depend on completion order. Thread-safe.
class ResultsStore {
public:
    ResultsStore() = default;
    explicit ResultsStore(std::filesystem::path path);

    void upsert(const ResultRow& row);
    ResultGrid grid() const;
    // Rewrites the file; a no-op without a path.
    void save() const;

    static ResultGrid load(const std::filesystem::path& path);
    static std::string format(const ResultGrid& grid);
    static ResultGrid parse(std::string_view text);

private:
    std::filesystem::path path_;
    mutable std::mutex mutex_;
    std::map<std::pair<std::string, std::string>, ResultRow> rows_;
};

struct ExecuteOptions {
    std::uint64_t seed = 1;
    int epochs = 10;
    double validation_fraction = 0.1;
    // results.tsv, models/, predictions/ and gold/ go here; nothing is written
    // when empty.
    std::filesystem::path output_dir;
    int jobs = 1;
    bool exclude_sym = false;
    std::function<void(const std::string&)> log;
};

// Seed for one run: FNV-1a of the run id mixed with the base seed.
std::uint64_t run_seed(std::string_view run_id, std::uint64_t base_seed);

// File name for a run's persisted model.
std::string model_file_name(const TrainingRun& run);
// Predicted test corpus for one genre, e.g. "ud_all.lemma.Annals.conllu".
std::string prediction_file_name(const TrainingRun& run, std::string_view genre);

// Trains every run stage by stage and evaluates on each test dataset.
// Errors from training or IO carry the run id.
ResultGrid execute(const RunPlan& plan, const corpus::Registry& registry, const ExecuteOptions& options);

struct ComparisonCell {
    std::string label;
    Decimal2 accuracy;
    bool best = false;
    bool worst = false;
};

struct ComparisonColumn {
    std::string genre;
    Task task = Task::upos;
    std::vector<ComparisonCell> cells;
};

struct ComparisonReport {
    std::vector<std::string> labels; // first-appearance order
    std::vector<ComparisonColumn> columns;

    const ComparisonColumn* column(std::string_view genre, Task task) const;
    std::vector<std::string> best(std::string_view genre, Task task) const;
    std::vector<std::string> worst(std::string_view genre, Task task) const;
};

// Marks the maximum and minimum per (genre, task); ties mark every tied entry.
// Throws InvalidArgument on an empty grid.
ComparisonReport compare(const ResultGrid& grid);
// Scenarios as rows, (genre, task) as columns, '+' after best and '-' after worst values.
std::string format_comparison_table(const ComparisonReport& report);
// "genre TAB task TAB label TAB accuracy TAB best|worst|best,worst|-"
std::string format_comparison_rows(const ComparisonReport& report);

// Scenario config file (key = value):
//   scenario = baseline, ud_all, ud_plus_specific, ud_plus_efontes
//   tasks = upos, ufeats, lemma
//   registry = path          (relative to the config file)
//   output_dir = path        (relative to the config file)
//   seed, epochs, validation_fraction, jobs, exclude_sym, allow_specific_plus_efontes
// "ruleset" and "verbosity" are accepted and left to the command line front end,
// so one file can serve as both.
struct ScenarioConfig {
    std::vector<Scenario> scenarios;
    std::filesystem::path registry;
    std::filesystem::path output_dir;
    std::uint64_t seed = 1;
    int epochs = 10;
    double validation_fraction = 0.1;
    int jobs = 1;
    bool exclude_sym = false;
    bool allow_specific_plus_efontes = false;
};

// Throws ConfigSyntax for unknown keys or bad values.
ScenarioConfig parse_scenario_config(const std::string& text, const std::filesystem::path& base_dir);
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

} // namespace medlat::scenario
