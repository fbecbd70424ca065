#include "medlat/cli.h"

#include "medlat/conllu.h"
#include "medlat/corpus.h"
#include "medlat/error.h"
#include "medlat/error_analysis.h"
#include "medlat/evaluation.h"
#include "medlat/kv_config.h"
#include "medlat/lemmatizer.h"
#include "medlat/normalizer.h"
#include "medlat/scenario.h"
#include "medlat/tagger.h"
#include "medlat/text.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;

namespace medlat {
namespace {

struct Globals {
    std::string config_path;
    bool machine = false;
    int verbosity = 0;
};

// Values from the config file; flags given on the command line replace them.
struct CliConfig {
    fs::path registry;
    fs::path output_dir = "medlat-out";
    std::uint64_t seed = 1;
    fs::path ruleset;
    int verbosity = 0;
    scenario::ScenarioConfig scenario;
    bool has_scenarios = false;
};

CliConfig load_config(const std::string& path) {
    CliConfig cfg;
    if (path.empty()) return cfg;
    const fs::path p(path);
    const auto content = read_file(p);
    cfg.scenario = scenario::parse_scenario_config(content, p.parent_path());
    cfg.has_scenarios = !cfg.scenario.scenarios.empty();
    cfg.registry = cfg.scenario.registry;
    if (!cfg.scenario.output_dir.empty()) cfg.output_dir = cfg.scenario.output_dir;
    cfg.seed = cfg.scenario.seed;
    const auto kv = parse_kv(content, p);
    if (auto r = kv.root().get("ruleset")) cfg.ruleset = p.parent_path() / *r;
    if (auto v = kv.root().get("verbosity")) {
        try {
            cfg.verbosity = std::stoi(*v);
        } catch (const std::exception&) {
            throw Error("ConfigSyntax", path + ": verbosity must be an integer");
        }
    }
    return cfg;
}

conllu::Document read_conllu(const std::string& path) {
    try {
        return conllu::parse(read_file(path), fs::path(path).filename().string());
    } catch (const Error& e) {
        throw e.annotated(path);
    }
}

conllu::Document read_many(const std::vector<std::string>& paths) {
    std::vector<conllu::Document> docs;
    for (const auto& p : paths) docs.push_back(read_conllu(p));
    std::vector<std::string> names;
    for (const auto& p : paths) names.push_back(fs::path(p).filename().string());
    return conllu::concatenate(docs, text::join(names, "+"));
}

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
    } else {
        write_file(path, content);
    }
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    return read_file(path);
}

// Sentences grouped by the most recent "# genre = X" comment.
evaluation::GenrePairs split_by_genre(const conllu::Document& gold, const conllu::Document& pred) {
    evaluation::check_aligned(gold, pred);
    evaluation::GenrePairs pairs;
    std::string genre = "unknown";
    for (std::size_t i = 0; i < gold.sentences.size(); ++i) {
        for (const auto& c : gold.sentences[i].comments) {
            const auto body = text::trim(std::string_view(c).substr(1));
            if (body.rfind("genre", 0) == 0) {
                const auto eq = body.find('=');
                if (eq != std::string_view::npos) genre = std::string(text::trim(body.substr(eq + 1)));
            }
        }
        auto& [g, p] = pairs[genre];
        g.sentences.push_back(gold.sentences[i]);
        p.sentences.push_back(pred.sentences[i]);
    }
    return pairs;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Medieval Latin tagging and lemmatization toolkit", "medlat"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "Config file (key = value); MEDLAT_CONFIG is used when absent");
    app.add_flag("--machine", g.machine, "Tab-separated output with a versioned header");
    app.add_flag("-v,--verbose", g.verbosity, "More log output on stderr (repeatable)");

    // corpus
    auto* corpus_cmd = app.add_subcommand("corpus", "Corpus statistics and validation");
    corpus_cmd->require_subcommand(1);
    std::string registry_flag;
    std::vector<std::string> dataset_filter;
    std::vector<std::string> files;
    double tolerance = 0.05;
    auto* stats_cmd = corpus_cmd->add_subcommand("stats", "Token, sentence and average counts");
    stats_cmd->add_option("--registry", registry_flag, "Dataset registry file");
    stats_cmd->add_option("--dataset", dataset_filter, "Restrict to these datasets");
    stats_cmd->add_option("files", files, "CoNLL-U files");
    auto* validate_cmd = corpus_cmd->add_subcommand("validate", "Check CoNLL-U files and declared statistics");
    validate_cmd->add_option("--registry", registry_flag, "Dataset registry file");
    validate_cmd->add_option("--dataset", dataset_filter, "Restrict to these datasets");
    validate_cmd->add_option("--tolerance", tolerance, "Allowed |declared avg - tokens/sentences|")->capture_default_str();
    validate_cmd->add_option("files", files, "CoNLL-U files");

    // normalize
    auto* normalize_cmd = app.add_subcommand("normalize", "Apply orthographic rewrite rules to lemmas or words");
    std::string input_path;
    std::string output_path;
    std::string ruleset_flag;
    std::vector<std::string> words;
    bool augment = false;
    bool print_rules = false;
    std::string norm_field = "lemma";
    normalize_cmd->add_option("--input,--in", input_path, "CoNLL-U file to normalize");
    normalize_cmd->add_option("--field", norm_field, "Column rewritten in place: lemma or form")
        ->check(CLI::IsMember({"lemma", "form"}))
        ->capture_default_str();
    normalize_cmd->add_option("--output", output_path, "Output file (default stdout)");
    normalize_cmd->add_option("--ruleset", ruleset_flag, "Ruleset file (default: built-in gold ruleset)");
    normalize_cmd->add_option("--word", words, "Normalize single words");
    normalize_cmd->add_flag("--augment", augment, "Append spelling-variant copies of sentences instead");
    normalize_cmd->add_flag("--print-rules", print_rules, "Print the ruleset in file format");

    // tagger
    auto* tagger_cmd = app.add_subcommand("tagger", "Averaged perceptron UPOS / UFeats tagger");
    tagger_cmd->require_subcommand(1);
    std::string task_name = "upos";
    std::vector<std::string> train_files;
    std::string model_path;
    std::string base_path;
    int epochs = 10;
    std::optional<std::uint64_t> seed_flag;
    auto* ttrain_cmd = tagger_cmd->add_subcommand("train", "Train (or continue training) a tagger");
    ttrain_cmd->add_option("--task", task_name, "upos or ufeats")->capture_default_str();
    ttrain_cmd->add_option("--train", train_files, "Training CoNLL-U files")->required();
    ttrain_cmd->add_option("--model", model_path, "Model output path")->required();
    ttrain_cmd->add_option("--base", base_path, "Continue from this model");
    ttrain_cmd->add_option("--epochs", epochs, "Training epochs")->capture_default_str();
    ttrain_cmd->add_option("--seed", seed_flag, "Shuffle seed");
    auto* ttag_cmd = tagger_cmd->add_subcommand("tag", "Tag a CoNLL-U file");
    ttag_cmd->add_option("--model", model_path, "Model file")->required();
    ttag_cmd->add_option("--input", input_path, "CoNLL-U input")->required();
    ttag_cmd->add_option("--output", output_path, "Output file (default stdout)");
    auto* teval_cmd = tagger_cmd->add_subcommand("eval", "Tag a gold file and report accuracy");
    teval_cmd->add_option("--model", model_path, "Model file")->required();
    teval_cmd->add_option("--gold", input_path, "Gold CoNLL-U")->required();

    // lemmatize
    auto* lemma_cmd = app.add_subcommand("lemmatize", "Edit-script lemmatizer");
    lemma_cmd->require_subcommand(1);
    std::vector<std::string> queries;
    std::string conllu_path;
    auto* ltrain_cmd = lemma_cmd->add_subcommand("train", "Train (or continue training) a lemmatizer");
    ltrain_cmd->add_option("--train", train_files, "Training CoNLL-U files")->required();
    ltrain_cmd->add_option("--model", model_path, "Model output path")->required();
    ltrain_cmd->add_option("--base", base_path, "Continue from this model");
    auto* lrun_cmd = lemma_cmd->add_subcommand("run", "Lemmatize form:UPOS queries or a CoNLL-U file");
    lrun_cmd->add_option("--model", model_path, "Model file")->required();
    lrun_cmd->add_option("--input", input_path, "File of form:UPOS lines ('-' for stdin)");
    lrun_cmd->add_option("--conllu", conllu_path, "CoNLL-U file to lemmatize (uses its UPOS column)");
    lrun_cmd->add_option("--output", output_path, "Output file (default stdout)");
    lrun_cmd->add_option("queries", queries, "form:UPOS queries");

    // scenario
    auto* scenario_cmd = app.add_subcommand("scenario", "Training scenarios over the registry");
    scenario_cmd->require_subcommand(1);
    std::vector<std::string> scenario_names;
    std::string tasks_flag;
    std::string output_dir_flag;
    std::optional<int> epochs_flag;
    std::optional<int> jobs_flag;
    std::optional<double> vfrac_flag;
    bool exclude_sym = false;
    bool allow_spe = false;
    std::string results_path;
    auto add_plan_opts = [&](CLI::App* c) {
        c->add_option("--scenario", scenario_names,
                      "baseline, ud_all, ud_plus_specific[:NAME], ud_plus_efontes, specific_plus_efontes[:NAME]");
        c->add_option("--tasks", tasks_flag, "Comma list of upos, ufeats, lemma");
        c->add_option("--registry", registry_flag, "Dataset registry file");
        c->add_flag("--allow-specific-plus-efontes", allow_spe, "Permit the specific_plus_efontes scenario");
    };
    auto* splan_cmd = scenario_cmd->add_subcommand("plan", "List the training runs a scenario implies");
    add_plan_opts(splan_cmd);
    auto* srun_cmd = scenario_cmd->add_subcommand("run", "Train and evaluate every planned run");
    add_plan_opts(srun_cmd);
    srun_cmd->add_option("--output-dir", output_dir_flag, "Where results.tsv, models, predictions and gold copies go");
    srun_cmd->add_option("--seed", seed_flag, "Base seed");
    srun_cmd->add_option("--epochs", epochs_flag, "Tagger epochs per stage");
    srun_cmd->add_option("--jobs", jobs_flag, "Parallel runs (default 1)");
    srun_cmd->add_option("--validation-fraction", vfrac_flag, "Share of each training set held out");
    srun_cmd->add_flag("--exclude-sym", exclude_sym, "Leave SYM tokens out of accuracy");
    auto* scompare_cmd = scenario_cmd->add_subcommand("compare", "Best and worst scenario per genre and task");
    scompare_cmd->add_option("--results", results_path, "Results file (default OUTPUT_DIR/results.tsv)");
    scompare_cmd->add_option("--output-dir", output_dir_flag, "Output directory holding results.tsv");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Token accuracy of predictions against gold");
    std::string gold_path;
    std::string pred_path;
    std::string fields_flag = "upos,ufeats,lemma";
    bool by_genre = false;
    eval_cmd->add_option("--gold", gold_path, "Gold CoNLL-U")->required();
    eval_cmd->add_option("--pred", pred_path, "Predicted CoNLL-U")->required();
    eval_cmd->add_option("--fields", fields_flag, "Comma list of upos, ufeats, lemma")->capture_default_str();
    eval_cmd->add_flag("--exclude-sym", exclude_sym, "Leave SYM tokens out");
    eval_cmd->add_flag("--by-genre", by_genre, "Separate scores per '# genre =' comment");

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "Error analysis of predictions against gold");
    std::string report_kind = "confusions";
    std::size_t top_k = 5;
    bool include_sym = false;
    std::string field_flag = "lemma";
    std::string rules_out;
    analyze_cmd->add_option("--gold", gold_path, "Gold CoNLL-U")->required();
    analyze_cmd->add_option("--pred", pred_path, "Predicted CoNLL-U")->required();
    analyze_cmd->add_option("--report", report_kind, "confusions, pos or genres")
        ->check(CLI::IsMember({"confusions", "pos", "genres"}))
        ->capture_default_str();
    analyze_cmd->add_option("--top-k", top_k, "Patterns per position / rows shown")->capture_default_str();
    analyze_cmd->add_flag("--include-sym", include_sym, "Keep SYM tokens in lemma confusion mining");
    analyze_cmd->add_option("--field", field_flag, "Field for the genres report")->capture_default_str();
    analyze_cmd->add_option("--rules-out", rules_out, "Write rewrite rules mined from the confusions here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        const CLI::App* deepest = &app;
        for (;;) {
            const auto subs = deepest->get_subcommands();
            if (subs.empty()) break;
            deepest = subs.front();
        }
        err << "usage error: " << e.what() << "\n\n" << deepest->help();
        return 2;
    }

    try {
        std::string cfg_path = g.config_path;
        if (cfg_path.empty()) {
            if (const char* env = std::getenv("MEDLAT_CONFIG"); env && *env) cfg_path = env;
        }
        CliConfig cfg = load_config(cfg_path);
        const int verbosity = std::max(g.verbosity, cfg.verbosity);
        auto log = [&](const std::string& msg) {
            if (verbosity > 0) err << "[medlat] " << msg << '\n';
        };
        if (!cfg_path.empty()) log("config " + cfg_path);
        if (!registry_flag.empty()) cfg.registry = registry_flag;
        if (!output_dir_flag.empty()) cfg.output_dir = output_dir_flag;
        if (seed_flag) cfg.seed = *seed_flag;
        if (!ruleset_flag.empty()) cfg.ruleset = ruleset_flag;
        if (g.machine) out << kMachineHeader << '\n';

        auto need_registry = [&]() {
            if (cfg.registry.empty()) throw Error("MissingRegistry", "pass --registry or set registry in the config");
            return corpus::load_registry(cfg.registry);
        };

        if (corpus_cmd->parsed()) {
            std::vector<std::pair<std::string, conllu::Document>> docs;
            std::optional<corpus::Registry> reg;
            if (!registry_flag.empty() || (files.empty() && !cfg.registry.empty())) reg = need_registry();
            auto selected = [&](const std::string& name) {
                return dataset_filter.empty() ||
                       std::find(dataset_filter.begin(), dataset_filter.end(), name) != dataset_filter.end();
            };
            if (reg) {
                for (const auto& name : dataset_filter) reg->at(name);
            }

            if (stats_cmd->parsed()) {
                struct Row {
                    std::string name, kind, source;
                    corpus::CorpusStats stats;
                };
                std::vector<Row> rows;
                if (reg) {
                    for (const auto& d : reg->datasets()) {
                        if (!selected(d.name)) continue;
                        if (!d.paths.empty()) {
                            rows.push_back({d.name, corpus::to_string(d.kind), "computed",
                                            corpus::compute_stats(corpus::load_dataset(*reg, d.name))});
                        } else if (d.declared_stats) {
                            rows.push_back({d.name, corpus::to_string(d.kind), "declared", *d.declared_stats});
                        }
                    }
                }
                for (const auto& f : files) rows.push_back({f, "file", "computed", corpus::compute_stats(read_conllu(f))});
                if (g.machine) {
                    for (const auto& r : rows) {
                        out << r.name << '\t' << r.kind << '\t' << r.stats.tokens << '\t' << r.stats.sentences << '\t'
                            << r.stats.avg_tokens_per_sentence.str() << '\t' << r.source << '\n';
                    }
                } else {
                    out << pad("dataset", 16) << pad("kind", 15) << std::right << std::setw(10) << "tokens"
                        << std::setw(11) << "sentences" << std::setw(9) << "avg" << "  source\n";
                    for (const auto& r : rows) {
                        out << pad(r.name, 16) << pad(r.kind, 15) << std::right << std::setw(10) << r.stats.tokens
                            << std::setw(11) << r.stats.sentences << std::setw(9)
                            << r.stats.avg_tokens_per_sentence.str() << "  " << r.source << '\n';
                    }
                }
                return 0;
            }

            // validate
            std::size_t problems = 0;
            std::ostringstream table;
            auto check_doc = [&](const std::string& name, const conllu::Document& doc) {
                const auto violations = conllu::validate(doc);
                for (const auto& v : violations) {
                    if (g.machine) {
                        out << "violation\t" << name << '\t' << v.sentence_index << '\t' << v.token_id << '\t' << v.rule
                            << '\n';
                    } else {
                        table << pad(name, 16) << "sentence " << v.sentence_index << " token " << v.token_id << ": "
                              << v.rule << '\n';
                    }
                }
                problems += violations.size();
                if (violations.empty()) {
                    if (g.machine) {
                        out << "file\t" << name << "\tok\n";
                    } else {
                        table << pad(name, 16) << "ok (" << doc.sentences.size() << " sentences, "
                              << doc.token_count() << " tokens)\n";
                    }
                }
            };
            if (reg) {
                for (const auto& d : reg->datasets()) {
                    if (!selected(d.name)) continue;
                    if (d.declared_stats) {
                        const auto v = corpus::validate_stats(*d.declared_stats, tolerance);
                        if (!v.consistent) ++problems;
                        std::ostringstream dev;
                        dev << std::fixed << std::setprecision(4) << v.deviation;
                        if (g.machine) {
                            out << "stats\t" << d.name << '\t' << (v.consistent ? "consistent" : "inconsistent") << '\t'
                                << d.declared_stats->avg_tokens_per_sentence.str() << '\t' << v.expected_avg.str()
                                << '\t' << dev.str() << '\n';
                        } else {
                            table << pad(d.name, 16) << (v.consistent ? "consistent  " : "INCONSISTENT")
                                  << "  declared " << d.declared_stats->avg_tokens_per_sentence.str() << ", expected "
                                  << v.expected_avg.str() << ", deviation " << dev.str() << '\n';
                        }
                    }
                    if (!d.paths.empty()) check_doc(d.name, corpus::load_dataset(*reg, d.name));
                }
            }
            for (const auto& f : files) check_doc(f, read_conllu(f));
            if (!g.machine) out << table.str();
            if (problems > 0) throw Error("ValidationFailed", std::to_string(problems) + " problem(s) found");
            return 0;
        }

        if (normalize_cmd->parsed()) {
            const auto rules = cfg.ruleset.empty()
                                   ? normalizer::default_gold_ruleset()
                                   : normalizer::parse_ruleset(read_file(cfg.ruleset), cfg.ruleset.stem().string());
            if (print_rules) out << normalizer::format_ruleset(rules);
            for (const auto& w : words) out << w << '\t' << normalizer::apply_rules(rules, w) << '\n';
            if (!input_path.empty()) {
                const auto doc = read_conllu(input_path);
                conllu::Document result;
                if (augment) {
                    result = normalizer::augment_variants(rules, doc);
                } else if (norm_field == "lemma") {
                    result = normalizer::normalize_lemmas(rules, doc);
                } else {
                    result = doc;
                    for (auto& s : result.sentences) {
                        for (auto& t : s.tokens) t.form = normalizer::apply_rules(rules, t.form);
                    }
                }
                emit(output_path, conllu::serialize(result), out);
                log((augment ? "augmented " : "normalized ") + input_path);
            } else if (!print_rules && words.empty()) {
                throw Error("InvalidArgument", "nothing to do: give --input, --word or --print-rules");
            }
            return 0;
        }

        if (ttrain_cmd->parsed()) {
            const auto task = tagger::parse_task(task_name);
            const auto corpus = read_many(train_files);
            std::optional<tagger::TaggerModel> base;
            if (!base_path.empty()) base = tagger::parse_model(read_file(base_path));
            tagger::TrainOptions opts;
            opts.epochs = epochs;
            opts.seed = cfg.seed;
            for (const auto& f : train_files) opts.datasets.push_back(fs::path(f).stem().string());
            const auto model = tagger::train(corpus, task, opts, base ? &*base : nullptr);
            write_file(model_path, tagger::format_model(model));
            if (g.machine) {
                out << "tags\t" << model.tagset().size() << "\nfeatures\t" << model.feature_vocabulary().size()
                    << "\nweights\t" << model.nonzero_weights() << "\nstages\t" << model.provenance().size() << '\n';
            } else {
                out << "trained " << tagger::to_string(task) << " tagger on " << corpus.token_count() << " tokens: "
                    << model.tagset().size() << " tags, " << model.feature_vocabulary().size() << " features, "
                    << model.nonzero_weights() << " weights; " << model.provenance().size() << " stage(s) -> "
                    << model_path << '\n';
            }
            return 0;
        }

        if (ttag_cmd->parsed()) {
            const auto model = tagger::parse_model(read_file(model_path));
            emit(output_path, conllu::serialize(tagger::tag_document(model, read_conllu(input_path))), out);
            return 0;
        }

        if (teval_cmd->parsed()) {
            const auto model = tagger::parse_model(read_file(model_path));
            const auto gold = read_conllu(input_path);
            const auto field =
                model.task() == tagger::TagTask::upos ? evaluation::Field::upos : evaluation::Field::ufeats;
            std::map<std::string, evaluation::EvalReport> reports;
            reports["all"] = evaluation::evaluate(gold, tagger::tag_document(model, gold), {field});
            out << (g.machine ? evaluation::format_rows(reports, {field}) : evaluation::format_table(reports, {field}));
            return 0;
        }

        if (ltrain_cmd->parsed()) {
            const auto corpus = read_many(train_files);
            std::optional<lemmatizer::LemmatizerModel> base;
            if (!base_path.empty()) base = lemmatizer::parse_lemmatizer(read_file(base_path));
            std::vector<std::string> names;
            for (const auto& f : train_files) names.push_back(fs::path(f).stem().string());
            const auto model = lemmatizer::train_lemmatizer(corpus, base ? &*base : nullptr, names);
            write_file(model_path, lemmatizer::format_lemmatizer(model));
            if (g.machine) {
                out << "lexicon\t" << model.lexicon().size() << "\nscripts\t" << model.scripts().size() << "\nstages\t"
                    << model.provenance().size() << '\n';
            } else {
                out << "trained lemmatizer on " << corpus.token_count() << " tokens: " << model.lexicon().size()
                    << " lexicon keys, " << model.scripts().size() << " script keys; " << model.provenance().size()
                    << " stage(s) -> " << model_path << '\n';
            }
            return 0;
        }

        if (lrun_cmd->parsed()) {
            const auto model = lemmatizer::parse_lemmatizer(read_file(model_path));
            if (!conllu_path.empty()) {
                emit(output_path, conllu::serialize(lemmatizer::lemmatize_document(model, read_conllu(conllu_path))),
                     out);
                return 0;
            }
            std::vector<std::string> lines = queries;
            if (!input_path.empty() || queries.empty()) {
                for (const auto& l : text::split(read_input(input_path.empty() ? "-" : input_path), '\n')) {
                    const auto t = text::trim(l);
                    if (!t.empty()) lines.emplace_back(t);
                }
            }
            std::string result;
            for (const auto& l : lines) {
                const auto q = lemmatizer::LemmaQuery::parse(l);
                result += q.str() + "\t" + lemmatizer::lemmatize(model, q) + "\n";
            }
            emit(output_path, result, out);
            return 0;
        }

        if (splan_cmd->parsed() || srun_cmd->parsed()) {
            std::vector<scenario::Scenario> scenarios;
            std::vector<scenario::Task> tasks = tasks_flag.empty() ? std::vector<scenario::Task>{}
                                                                   : evaluation::parse_fields(tasks_flag);
            if (!scenario_names.empty()) {
                for (const auto& n : scenario_names) {
                    for (const auto& part : text::split_list(n)) scenarios.push_back(scenario::parse_scenario(part));
                }
                if (tasks.empty() && cfg.has_scenarios) tasks = cfg.scenario.scenarios.front().tasks;
            } else if (cfg.has_scenarios) {
                scenarios = cfg.scenario.scenarios;
            } else {
                throw Error("InvalidScenario", "pass --scenario or set scenario in the config");
            }
            if (!tasks.empty()) {
                for (auto& s : scenarios) s.tasks = tasks;
            }
            const auto reg = need_registry();
            scenario::PlanOptions popts;
            popts.allow_specific_plus_efontes = allow_spe || cfg.scenario.allow_specific_plus_efontes;
            popts.validation_fraction = vfrac_flag.value_or(cfg.scenario.validation_fraction);
            const auto plan = scenario::plan_all(scenarios, reg, popts);

            if (splan_cmd->parsed()) {
                out << (g.machine ? scenario::format_plan_rows(plan) : scenario::format_plan_table(plan));
                return 0;
            }
            scenario::ExecuteOptions eopts;
            eopts.seed = cfg.seed;
            eopts.epochs = epochs_flag.value_or(cfg.scenario.epochs);
            eopts.validation_fraction = popts.validation_fraction;
            eopts.output_dir = cfg.output_dir;
            eopts.jobs = jobs_flag.value_or(cfg.scenario.jobs);
            eopts.exclude_sym = exclude_sym || cfg.scenario.exclude_sym;
            eopts.log = log;
            log("executing " + std::to_string(plan.runs.size()) + " runs with " + std::to_string(eopts.jobs) +
                " job(s)");
            const auto grid = scenario::execute(plan, reg, eopts);
            const auto results = cfg.output_dir / "results.tsv";
            if (g.machine) {
                for (const auto& r : grid.rows) {
                    out << r.run_id << '\t' << r.genre << '\t' << evaluation::to_string(r.task) << '\t'
                        << r.accuracy.str() << '\n';
                }
            } else {
                for (const auto& r : grid.rows) {
                    out << pad(r.run_id, 36) << pad(r.genre, 14) << r.accuracy.str() << '\n';
                }
                out << plan.runs.size() << " runs, " << grid.rows.size() << " results -> " << results.string() << '\n';
            }
            return 0;
        }

        if (scompare_cmd->parsed()) {
            const fs::path path = results_path.empty() ? cfg.output_dir / "results.tsv" : fs::path(results_path);
            const auto report = scenario::compare(scenario::ResultsStore::load(path));
            out << (g.machine ? scenario::format_comparison_rows(report) : scenario::format_comparison_table(report));
            return 0;
        }

        if (eval_cmd->parsed()) {
            const auto fields = evaluation::parse_fields(fields_flag);
            const auto gold = read_conllu(gold_path);
            const auto pred = read_conllu(pred_path);
            std::map<std::string, evaluation::EvalReport> reports;
            if (by_genre) {
                reports = evaluation::evaluate_by_genre(split_by_genre(gold, pred), fields, {exclude_sym});
            } else {
                reports["all"] = evaluation::evaluate(gold, pred, fields, {exclude_sym});
            }
            out << (g.machine ? evaluation::format_rows(reports, fields) : evaluation::format_table(reports, fields));
            return 0;
        }

        if (analyze_cmd->parsed()) {
            const auto gold = read_conllu(gold_path);
            const auto pred = read_conllu(pred_path);
            if (report_kind == "confusions") {
                const auto patterns = analysis::mine_confusions(analysis::collect_lemma_errors(gold, pred, include_sym));
                out << (g.machine ? analysis::format_confusion_rows(patterns, top_k)
                                  : analysis::format_confusion_table(patterns, top_k));
                if (!rules_out.empty()) {
                    write_file(rules_out, normalizer::format_ruleset(normalizer::mine_rules(patterns)));
                    log("mined rules written to " + rules_out);
                }
            } else if (report_kind == "pos") {
                const auto m = analysis::pos_confusions(gold, pred);
                out << (g.machine ? analysis::format_pos_rows(m) : analysis::format_pos_table(m, top_k));
            } else {
                const auto field = evaluation::parse_field(field_flag);
                const auto reports =
                    evaluation::evaluate_by_genre(split_by_genre(gold, pred), {field}, {!include_sym && field == evaluation::Field::lemma});
                const auto d = analysis::genre_distribution(reports, field);
                out << (g.machine ? analysis::format_genre_rows(d) : analysis::format_genre_table(d));
            }
            return 0;
        }
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const fs::filesystem_error& e) {
        err << "error: IoError: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace medlat
