#include "medlat/scenario.h"

#include "medlat/error.h"
#include "medlat/kv_config.h"
#include "medlat/lemmatizer.h"
#include "medlat/tagger.h"
#include "medlat/text.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

namespace medlat::scenario {

std::string to_string(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::baseline: return "baseline";
    case ScenarioKind::ud_all: return "ud_all";
    case ScenarioKind::ud_plus_specific: return "ud_plus_specific";
    case ScenarioKind::ud_plus_efontes: return "ud_plus_efontes";
    case ScenarioKind::specific_plus_efontes: return "specific_plus_efontes";
    }
    return "?";
}

Scenario parse_scenario(std::string_view s) {
    s = text::trim(s);
    std::string_view head = s;
    std::optional<std::string> name;
    if (const auto colon = s.find(':'); colon != std::string_view::npos) {
        head = s.substr(0, colon);
        name = std::string(text::trim(s.substr(colon + 1)));
        if (name->empty()) throw Error("InvalidScenario", "empty dataset name in '" + std::string(s) + "'");
    }
    Scenario out;
    if (head == "baseline") {
        out.kind = ScenarioKind::baseline;
    } else if (head == "ud_all") {
        out.kind = ScenarioKind::ud_all;
    } else if (head == "ud_plus_specific") {
        out.kind = ScenarioKind::ud_plus_specific;
    } else if (head == "ud_plus_efontes") {
        out.kind = ScenarioKind::ud_plus_efontes;
    } else if (head == "specific_plus_efontes") {
        out.kind = ScenarioKind::specific_plus_efontes;
    } else {
        throw Error("InvalidScenario", "'" + std::string(s) + "'");
    }
    const bool takes_name = out.kind == ScenarioKind::ud_plus_specific || out.kind == ScenarioKind::specific_plus_efontes;
    if (name && !takes_name) throw Error("InvalidScenario", std::string(head) + " takes no dataset name");
    out.ud_name = std::move(name);
    return out;
}

std::size_t RunPlan::evaluation_count() const {
    std::size_t n = 0;
    for (const auto& r : runs) n += r.test_datasets.size();
    return n;
}

std::size_t RunPlan::count(std::string_view label_prefix) const {
    return static_cast<std::size_t>(std::count_if(runs.begin(), runs.end(), [&](const TrainingRun& r) {
        return r.label.compare(0, label_prefix.size(), label_prefix) == 0;
    }));
}

namespace {

std::vector<std::string> specific_targets(const Scenario& scenario, const corpus::Registry& registry) {
    const auto ud = registry.ud_treebanks();
    if (!scenario.ud_name) return ud;
    if (std::find(ud.begin(), ud.end(), *scenario.ud_name) == ud.end()) {
        throw Error("MissingDataset", "no UD treebank named " + *scenario.ud_name);
    }
    return {*scenario.ud_name};
}

void require(bool ok, const std::string& what) {
    if (!ok) throw Error("MissingDataset", what);
}

} // namespace

RunPlan plan(const Scenario& scenario, const corpus::Registry& registry, const PlanOptions& options) {
    const auto genres = registry.genres();
    const auto ud = registry.ud_treebanks();
    if (scenario.tasks.empty()) throw Error("InvalidScenario", "no tasks");
    RunPlan out;

    auto cv_folds = [&]() {
        require(genres.size() >= 2, to_string(scenario.kind) + " needs at least 2 eFontes genres");
        return corpus::make_cv_splits(genres, options.validation_fraction);
    };

    switch (scenario.kind) {
    case ScenarioKind::baseline:
        for (const auto& fold : cv_folds()) {
            for (Task t : scenario.tasks) {
                out.runs.push_back({"baseline:" + evaluation::to_string(t) + ":" + fold.test_dataset, "baseline", t,
                                    {Stage{fold.train_datasets, {}}}, {fold.test_dataset}});
            }
        }
        break;
    case ScenarioKind::ud_all:
        require(!ud.empty(), "ud_all needs at least one UD treebank");
        require(!genres.empty(), "ud_all needs at least one eFontes genre to test on");
        for (Task t : scenario.tasks) {
            out.runs.push_back({"ud_all:" + evaluation::to_string(t), "ud_all", t, {Stage{ud, {}}}, genres});
        }
        break;
    case ScenarioKind::ud_plus_specific:
        require(!ud.empty(), "ud_plus_specific needs at least one UD treebank");
        require(!genres.empty(), "ud_plus_specific needs at least one eFontes genre to test on");
        for (const auto& name : specific_targets(scenario, registry)) {
            const std::string label = "ud_plus_" + text::lowercase(name);
            for (Task t : scenario.tasks) {
                out.runs.push_back({label + ":" + evaluation::to_string(t), label, t, {Stage{ud, {}}, Stage{{name}, {}}},
                                    genres});
            }
        }
        break;
    case ScenarioKind::ud_plus_efontes: {
        require(!ud.empty(), "ud_plus_efontes needs at least one UD treebank");
        for (const auto& fold : cv_folds()) {
            for (Task t : scenario.tasks) {
                out.runs.push_back({"ud_plus_efontes:" + evaluation::to_string(t) + ":" + fold.test_dataset,
                                    "ud_plus_efontes", t, {Stage{ud, {}}, Stage{fold.train_datasets, {}}},
                                    {fold.test_dataset}});
            }
        }
        break;
    }
    case ScenarioKind::specific_plus_efontes: {
        if (!options.allow_specific_plus_efontes) {
            throw Error("InvalidScenario", "specific_plus_efontes is disabled; enable allow_specific_plus_efontes");
        }
        require(!ud.empty(), "specific_plus_efontes needs at least one UD treebank");
        const auto folds = cv_folds();
        for (const auto& name : specific_targets(scenario, registry)) {
            const std::string label = "ud_" + text::lowercase(name) + "_plus_efontes";
            for (const auto& fold : folds) {
                for (Task t : scenario.tasks) {
                    out.runs.push_back({label + ":" + evaluation::to_string(t) + ":" + fold.test_dataset, label, t,
                                        {Stage{ud, {}}, Stage{{name}, {}}, Stage{fold.train_datasets, {}}},
                                        {fold.test_dataset}});
                }
            }
        }
        break;
    }
    }
    return out;
}

RunPlan plan_all(const std::vector<Scenario>& scenarios, const corpus::Registry& registry, const PlanOptions& options) {
    RunPlan out;
    std::set<std::string> seen;
    for (const auto& s : scenarios) {
        for (auto& r : plan(s, registry, options).runs) {
            if (!seen.insert(r.run_id).second) throw Error("DuplicateRunId", r.run_id);
            out.runs.push_back(std::move(r));
        }
    }
    return out;
}

namespace {

std::string stages_str(const TrainingRun& r) {
    std::vector<std::string> parts;
    for (const auto& s : r.stages) parts.push_back(text::join(s.datasets, ","));
    return text::join(parts, ";");
}

} // namespace

std::string format_plan_rows(const RunPlan& plan) {
    std::string out;
    for (const auto& r : plan.runs) {
        out += r.run_id + "\t" + r.label + "\t" + evaluation::to_string(r.task) + "\t" + stages_str(r) + "\t" +
               text::join(r.test_datasets, ",") + "\n";
    }
    return out;
}

std::string format_plan_table(const RunPlan& plan) {
    std::size_t w = 6;
    for (const auto& r : plan.runs) w = std::max(w, r.run_id.size());
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(w) + 2) << "run" << "stages -> tests\n";
    for (const auto& r : plan.runs) {
        out << std::left << std::setw(static_cast<int>(w) + 2) << r.run_id;
        for (std::size_t i = 0; i < r.stages.size(); ++i) {
            if (i) out << " => ";
            out << "{" << text::join(r.stages[i].datasets, ", ") << "}";
        }
        out << " -> " << text::join(r.test_datasets, ", ") << '\n';
    }
    out << plan.runs.size() << " runs, " << plan.evaluation_count() << " evaluations\n";
    return out.str();
}

std::string ResultRow::label() const { return run_id.substr(0, run_id.find(':')); }

std::optional<Decimal2> ResultGrid::get(std::string_view label, std::string_view genre, Task task) const {
    for (const auto& r : rows) {
        if (r.task == task && r.genre == genre && r.label() == label) return r.accuracy;
    }
    return std::nullopt;
}

ResultsStore::ResultsStore(std::filesystem::path path) : path_(std::move(path)) {
    if (std::filesystem::exists(path_)) {
        for (auto& r : load(path_).rows) rows_[{r.run_id, r.genre}] = std::move(r);
    }
}

void ResultsStore::upsert(const ResultRow& row) {
    std::lock_guard lock(mutex_);
    rows_[{row.run_id, row.genre}] = row;
}

ResultGrid ResultsStore::grid() const {
    std::lock_guard lock(mutex_);
    ResultGrid g;
    for (const auto& [k, r] : rows_) g.rows.push_back(r);
    return g;
}

void ResultsStore::save() const {
    if (path_.empty()) return;
    const auto g = grid();
    std::lock_guard lock(mutex_);
    write_file(path_, format(g));
}

std::string ResultsStore::format(const ResultGrid& grid) {
    std::string out = std::string(kResultsHeader) + "\nrun_id\tgenre\ttask\taccuracy\n";
    for (const auto& r : grid.rows) {
        out += r.run_id + "\t" + r.genre + "\t" + evaluation::to_string(r.task) + "\t" + r.accuracy.str() + "\n";
    }
    return out;
}

ResultGrid ResultsStore::parse(std::string_view content) {
    ResultGrid g;
    int line_no = 0;
    bool header_seen = false;
    for (const auto& raw : text::split(content, '\n')) {
        ++line_no;
        std::string_view line = raw;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != kResultsHeader) throw Error("ResultsFormat", "missing '" + std::string(kResultsHeader) + "' header");
            continue;
        }
        if (!header_seen) {
            if (line != "run_id\tgenre\ttask\taccuracy") throw Error("ResultsFormat", "line 2: bad column header");
            header_seen = true;
            continue;
        }
        const auto cols = text::split(line, '\t');
        if (cols.size() != 4) throw Error("ResultsFormat", "line " + std::to_string(line_no) + ": expected 4 columns");
        try {
            g.rows.push_back({cols[0], cols[1], evaluation::parse_field(cols[2]), Decimal2::parse(cols[3])});
        } catch (const Error& e) {
            throw Error("ResultsFormat", "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return g;
}

ResultGrid ResultsStore::load(const std::filesystem::path& path) {
    try {
        return parse(read_file(path));
    } catch (const Error& e) {
        throw e.annotated(path.string());
    }
}

std::uint64_t run_seed(std::string_view run_id, std::uint64_t base_seed) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : run_id) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h ^ base_seed;
}

std::string model_file_name(const TrainingRun& run) {
    std::string name = run.run_id;
    std::replace(name.begin(), name.end(), ':', '.');
    return name + ".model";
}

std::string prediction_file_name(const TrainingRun& run, std::string_view genre) {
    const auto model = model_file_name(run);
    return model.substr(0, model.size() - 6) + "." + std::string(genre) + ".conllu";
}

namespace {

using DocCache = std::map<std::string, conllu::Document>;

conllu::Document stage_corpus(const Stage& stage, const DocCache& cache, double validation_fraction) {
    std::vector<conllu::Document> parts;
    for (const auto& d : stage.datasets) parts.push_back(cache.at(d));
    auto joined = conllu::concatenate(parts, text::join(stage.datasets, "+"));
    return corpus::carve_validation(joined, validation_fraction).train;
}

std::vector<ResultRow> execute_run(const TrainingRun& run, const DocCache& cache, const ExecuteOptions& options) {
    const std::uint64_t seed = run_seed(run.run_id, options.seed);
    const evaluation::EvalOptions eval_opts{options.exclude_sym};
    std::vector<ResultRow> rows;
    std::string model_text;

    auto record = [&](const std::string& genre, const conllu::Document& gold, const conllu::Document& pred) {
        const auto report = evaluation::evaluate(gold, pred, {run.task}, eval_opts);
        rows.push_back({run.run_id, genre, run.task, report.accuracy(run.task)});
        if (!options.output_dir.empty())
            write_file(options.output_dir / "predictions" / prediction_file_name(run, genre), conllu::serialize(pred));
    };

    if (run.task == Task::lemma) {
        std::optional<lemmatizer::LemmatizerModel> model;
        for (const auto& stage : run.stages) {
            const auto data = stage_corpus(stage, cache, options.validation_fraction);
            model = lemmatizer::train_lemmatizer(data, model ? &*model : nullptr, stage.datasets);
        }
        for (const auto& genre : run.test_datasets) {
            const auto& gold = cache.at(genre);
            record(genre, gold, lemmatizer::lemmatize_document(*model, gold));
        }
        model_text = lemmatizer::format_lemmatizer(*model);
    } else {
        const auto task = run.task == Task::upos ? tagger::TagTask::upos : tagger::TagTask::ufeats;
        std::optional<tagger::TaggerModel> model;
        for (std::size_t i = 0; i < run.stages.size(); ++i) {
            const auto& stage = run.stages[i];
            const auto data = stage_corpus(stage, cache, options.validation_fraction);
            tagger::TrainOptions to;
            to.epochs = stage.epochs.value_or(options.epochs);
            to.seed = seed + i;
            to.datasets = stage.datasets;
            model = tagger::train(data, task, to, model ? &*model : nullptr);
        }
        for (const auto& genre : run.test_datasets) {
            const auto& gold = cache.at(genre);
            record(genre, gold, tagger::tag_document(*model, gold));
        }
        model_text = tagger::format_model(*model);
    }
    if (!options.output_dir.empty()) write_file(options.output_dir / "models" / model_file_name(run), model_text);
    return rows;
}

} // namespace

ResultGrid execute(const RunPlan& plan, const corpus::Registry& registry, const ExecuteOptions& options) {
    if (options.jobs < 1) throw Error("InvalidArgument", "jobs must be at least 1");
    if (options.epochs < 0) throw Error("InvalidArgument", "epochs must be non-negative");

    // Every dataset is parsed once up front; runs only read the cache.
    DocCache cache;
    for (const auto& run : plan.runs) {
        for (const auto& s : run.stages) {
            if (s.datasets.empty()) throw Error("InvalidPlan", run.run_id + ": empty stage");
            for (const auto& d : s.datasets) {
                if (!cache.count(d)) cache.emplace(d, corpus::load_dataset(registry, d));
            }
        }
        for (const auto& d : run.test_datasets) {
            if (!cache.count(d)) cache.emplace(d, corpus::load_dataset(registry, d));
        }
    }

    if (!options.output_dir.empty()) {
        std::set<std::string> genres;
        for (const auto& run : plan.runs) genres.insert(run.test_datasets.begin(), run.test_datasets.end());
        for (const auto& g : genres) write_file(options.output_dir / "gold" / (g + ".conllu"), conllu::serialize(cache.at(g)));
    }

    ResultsStore store(options.output_dir.empty() ? std::filesystem::path{}
                                                  : options.output_dir / "results.tsv");
    std::vector<std::vector<ResultRow>> per_run(plan.runs.size());
    std::atomic<std::size_t> next{0};
    std::mutex fail_mutex;
    std::exception_ptr failure;
    std::mutex log_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= plan.runs.size()) return;
            {
                std::lock_guard lock(fail_mutex);
                if (failure) return;
            }
            const auto& run = plan.runs[i];
            try {
                per_run[i] = execute_run(run, cache, options);
                for (const auto& row : per_run[i]) store.upsert(row);
                if (options.log) {
                    std::lock_guard lock(log_mutex);
                    options.log("finished " + run.run_id);
                }
            } catch (const Error& e) {
                std::lock_guard lock(fail_mutex);
                if (!failure) failure = std::make_exception_ptr(e.annotated(run.run_id));
            } catch (...) {
                std::lock_guard lock(fail_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    const auto n_threads = static_cast<std::size_t>(std::min<std::size_t>(options.jobs, plan.runs.size()));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    store.save();
    if (failure) std::rethrow_exception(failure);

    ResultGrid grid;
    for (auto& rows : per_run) {
        for (auto& r : rows) grid.rows.push_back(std::move(r));
    }
    return grid;
}

const ComparisonColumn* ComparisonReport::column(std::string_view genre, Task task) const {
    for (const auto& c : columns) {
        if (c.genre == genre && c.task == task) return &c;
    }
    return nullptr;
}

std::vector<std::string> ComparisonReport::best(std::string_view genre, Task task) const {
    std::vector<std::string> out;
    if (const auto* c = column(genre, task)) {
        for (const auto& cell : c->cells) {
            if (cell.best) out.push_back(cell.label);
        }
    }
    return out;
}

std::vector<std::string> ComparisonReport::worst(std::string_view genre, Task task) const {
    std::vector<std::string> out;
    if (const auto* c = column(genre, task)) {
        for (const auto& cell : c->cells) {
            if (cell.worst) out.push_back(cell.label);
        }
    }
    return out;
}

ComparisonReport compare(const ResultGrid& grid) {
    if (grid.rows.empty()) throw Error("InvalidArgument", "empty result grid");
    ComparisonReport report;
    for (const auto& r : grid.rows) {
        const auto label = r.label();
        if (std::find(report.labels.begin(), report.labels.end(), label) == report.labels.end()) {
            report.labels.push_back(label);
        }
        auto* col = const_cast<ComparisonColumn*>(report.column(r.genre, r.task));
        if (!col) {
            report.columns.push_back({r.genre, r.task, {}});
            col = &report.columns.back();
        }
        auto it = std::find_if(col->cells.begin(), col->cells.end(),
                               [&](const ComparisonCell& c) { return c.label == label; });
        if (it != col->cells.end()) throw Error("DuplicateResult", label + " / " + r.genre + " / " +
                                                                       evaluation::to_string(r.task));
        col->cells.push_back({label, r.accuracy, false, false});
    }
    for (auto& col : report.columns) {
        const auto [lo, hi] = std::minmax_element(col.cells.begin(), col.cells.end(),
                                                  [](const auto& a, const auto& b) { return a.accuracy < b.accuracy; });
        const Decimal2 max = hi->accuracy;
        const Decimal2 min = lo->accuracy;
        for (auto& c : col.cells) {
            c.best = c.accuracy == max;
            c.worst = c.accuracy == min;
        }
    }
    std::stable_sort(report.columns.begin(), report.columns.end(), [](const auto& a, const auto& b) {
        return std::tie(a.genre, a.task) < std::tie(b.genre, b.task);
    });
    return report;
}

std::string format_comparison_table(const ComparisonReport& report) {
    std::size_t label_w = 8;
    for (const auto& l : report.labels) label_w = std::max(label_w, l.size());
    std::vector<std::string> heads;
    for (const auto& c : report.columns) heads.push_back(c.genre + "/" + evaluation::to_string(c.task));
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(label_w) + 2) << "scenario";
    for (const auto& h : heads) out << std::right << std::setw(static_cast<int>(std::max<std::size_t>(h.size(), 7)) + 2) << h;
    out << '\n';
    for (const auto& label : report.labels) {
        out << std::left << std::setw(static_cast<int>(label_w) + 2) << label;
        for (std::size_t i = 0; i < report.columns.size(); ++i) {
            const auto& col = report.columns[i];
            std::string cell = "";
            for (const auto& c : col.cells) {
                if (c.label != label) continue;
                cell = c.accuracy.str();
                if (c.best) cell += "+";
                if (c.worst) cell += "-";
            }
            if (cell.empty()) cell = ".";
            out << std::right << std::setw(static_cast<int>(std::max<std::size_t>(heads[i].size(), 7)) + 2) << cell;
        }
        out << '\n';
    }
    out << "(+ best, - worst per column)\n";
    return out.str();
}

std::string format_comparison_rows(const ComparisonReport& report) {
    std::string out;
    for (const auto& col : report.columns) {
        for (const auto& c : col.cells) {
            std::string mark;
            if (c.best) mark = "best";
            if (c.worst) mark += mark.empty() ? "worst" : ",worst";
            if (mark.empty()) mark = "-";
            out += col.genre + "\t" + evaluation::to_string(col.task) + "\t" + c.label + "\t" + c.accuracy.str() + "\t" +
                   mark + "\n";
        }
    }
    return out;
}

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T v{};
    const auto* end = value.data() + value.size();
    const auto [p, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || p != end) throw Error("ConfigSyntax", key + ": not a number: '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    throw Error("ConfigSyntax", key + ": expected true or false, got '" + value + "'");
}

} // namespace

ScenarioConfig parse_scenario_config(const std::string& content, const std::filesystem::path& base_dir) {
    const auto kv = parse_kv(content, base_dir / "(scenario config)");
    if (kv.sections.size() > 1) throw Error("ConfigSyntax", "scenario config takes no [sections]");
    ScenarioConfig cfg;
    std::vector<Task> tasks{Task::upos, Task::ufeats, Task::lemma};
    std::vector<std::string> scenario_names;
    for (const auto& [key, value] : kv.root().entries) {
        if (key == "scenario" || key == "scenarios") {
            scenario_names = text::split_list(value);
        } else if (key == "tasks") {
            tasks = evaluation::parse_fields(value);
        } else if (key == "registry") {
            cfg.registry = base_dir / value;
        } else if (key == "output_dir") {
            cfg.output_dir = base_dir / value;
        } else if (key == "seed") {
            cfg.seed = parse_number<std::uint64_t>(key, value);
        } else if (key == "epochs") {
            cfg.epochs = parse_number<int>(key, value);
            if (cfg.epochs < 0) throw Error("ConfigSyntax", "epochs must be non-negative");
        } else if (key == "validation_fraction") {
            cfg.validation_fraction = parse_number<double>(key, value);
            if (cfg.validation_fraction < 0 || cfg.validation_fraction >= 1) {
                throw Error("ConfigSyntax", "validation_fraction must be in [0, 1)");
            }
        } else if (key == "jobs") {
            cfg.jobs = parse_number<int>(key, value);
            if (cfg.jobs < 1) throw Error("ConfigSyntax", "jobs must be at least 1");
        } else if (key == "exclude_sym") {
            cfg.exclude_sym = parse_bool(key, value);
        } else if (key == "allow_specific_plus_efontes") {
            cfg.allow_specific_plus_efontes = parse_bool(key, value);
        } else if (key == "ruleset" || key == "verbosity") {
            // read by the command line front end
        } else {
            throw Error("ConfigSyntax", "unknown key '" + key + "'");
        }
    }
    for (const auto& name : scenario_names) {
        auto s = parse_scenario(name);
        s.tasks = tasks;
        cfg.scenarios.push_back(std::move(s));
    }
    return cfg;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
    return parse_scenario_config(read_file(path), path.parent_path());
}

} // namespace medlat::scenario
