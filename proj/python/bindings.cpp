#include "medlat/cli.h"
#include "medlat/conllu.h"
#include "medlat/corpus.h"
#include "medlat/error.h"
#include "medlat/error_analysis.h"
#include "medlat/evaluation.h"
#include "medlat/lemmatizer.h"
#include "medlat/normalizer.h"
#include "medlat/scenario.h"
#include "medlat/tagger.h"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace medlat;

namespace {

py::dict stats_dict(const corpus::CorpusStats& s) {
    py::dict d;
    d["tokens"] = s.tokens;
    d["sentences"] = s.sentences;
    d["avg_tokens_per_sentence"] = s.avg_tokens_per_sentence.str();
    return d;
}

std::vector<evaluation::Field> fields_of(const std::vector<std::string>& names) {
    std::vector<evaluation::Field> out;
    for (const auto& n : names) out.push_back(evaluation::parse_field(n));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Medieval Latin tagging, lemmatization and error analysis";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result([&]() { return py::object(py::exception<Error>(m, "MedlatError")); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const py::object& type = error_type.get_stored();
            py::object inst = type(e.what());
            inst.attr("kind") = e.kind();
            inst.attr("detail") = e.detail();
            PyErr_SetObject(type.ptr(), inst.ptr());
        }
    });

    m.def("roundtrip", [](const std::string& text) { return conllu::serialize(conllu::parse(text, "<python>")); },
          py::arg("text"), "Parse CoNLL-U text and serialize it again.");

    m.def(
        "validate_conllu",
        [](const std::string& text) {
            std::vector<std::tuple<std::size_t, int, std::string>> out;
            for (const auto& v : conllu::validate(conllu::parse(text, "<python>")))
                out.emplace_back(v.sentence_index, v.token_id, v.rule);
            return out;
        },
        py::arg("text"), "List (sentence_index, token_id, rule) violations.");

    m.def("corpus_stats", [](const std::string& text) { return stats_dict(corpus::compute_stats(conllu::parse(text, "<python>"))); },
          py::arg("text"));

    m.def(
        "validate_stats",
        [](std::int64_t tokens, std::int64_t sentences, const std::string& avg, double tolerance) {
            const auto v = corpus::validate_stats({tokens, sentences, Decimal2::parse(avg)}, tolerance);
            py::dict d;
            d["consistent"] = v.consistent;
            d["expected_avg"] = v.expected_avg.str();
            d["deviation"] = v.deviation;
            return d;
        },
        py::arg("tokens"), py::arg("sentences"), py::arg("avg"), py::arg("tolerance") = 0.05);

    m.def(
        "derive_edit_script",
        [](const std::string& form, const std::string& lemma) { return lemmatizer::derive_edit_script(form, lemma).str(); },
        py::arg("form"), py::arg("lemma"));
    m.def(
        "apply_edit_script",
        [](const std::string& script, const std::string& form) {
            return lemmatizer::apply_edit_script(lemmatizer::EditScript::parse(script), form);
        },
        py::arg("script"), py::arg("form"));

    m.def(
        "train_lemmatizer",
        [](const std::string& conllu_text) {
            return lemmatizer::format_lemmatizer(lemmatizer::train_lemmatizer(conllu::parse(conllu_text, "<python>")));
        },
        py::arg("conllu_text"), "Train a lemmatizer and return the model text.");
    m.def(
        "lemmatize",
        [](const std::string& model, const std::vector<std::string>& queries) {
            const auto lm = lemmatizer::parse_lemmatizer(model);
            std::vector<std::string> out;
            for (const auto& q : queries) out.push_back(lemmatizer::lemmatize(lm, lemmatizer::LemmaQuery::parse(q)));
            return out;
        },
        py::arg("model"), py::arg("queries"), "Lemmatize \"form:UPOS\" queries.");

    m.def(
        "train_tagger",
        [](const std::string& conllu_text, const std::string& task, int epochs, std::uint64_t seed) {
            tagger::TrainOptions o;
            o.epochs = epochs;
            o.seed = seed;
            return tagger::format_model(tagger::train(conllu::parse(conllu_text, "<python>"), tagger::parse_task(task), o));
        },
        py::arg("conllu_text"), py::arg("task") = "upos", py::arg("epochs") = 10, py::arg("seed") = 1);
    m.def(
        "tag",
        [](const std::string& model, const std::string& conllu_text) {
            return conllu::serialize(tagger::tag_document(tagger::parse_model(model), conllu::parse(conllu_text, "<python>")));
        },
        py::arg("model"), py::arg("conllu_text"));

    m.def(
        "normalize",
        [](const std::vector<std::string>& words) {
            const auto rules = normalizer::default_gold_ruleset();
            std::vector<std::string> out;
            for (const auto& w : words) out.push_back(normalizer::apply_rules(rules, w));
            return out;
        },
        py::arg("words"));

    m.def(
        "evaluate",
        [](const std::string& gold, const std::string& pred, const std::vector<std::string>& fields, bool exclude_sym) {
            const auto fs = fields_of(fields);
            const auto r = evaluation::evaluate(conllu::parse(gold, "gold"), conllu::parse(pred, "pred"), fs, {exclude_sym});
            py::dict d;
            for (auto f : fs) d[py::str(evaluation::to_string(f))] = r.accuracy(f).str();
            return d;
        },
        py::arg("gold"), py::arg("pred"), py::arg("fields") = std::vector<std::string>{"upos", "ufeats", "lemma"},
        py::arg("exclude_sym") = false);

    m.def(
        "align",
        [](const std::string& gold, const std::string& pred) {
            const auto ops = analysis::align_chars(gold, pred);
            return py::make_tuple(analysis::format_alignment(ops), analysis::alignment_cost(ops));
        },
        py::arg("gold"), py::arg("pred"), "Return (alignment, cost).");
    m.def(
        "mine_confusions",
        [](const std::vector<std::pair<std::string, std::string>>& errors) {
            std::vector<std::tuple<std::string, std::string, long>> out;
            for (const auto& p : analysis::mine_confusions(errors)) out.emplace_back(p.pattern(), to_string(p.position), p.count);
            return out;
        },
        py::arg("errors"), "Mine (pattern, position, count) from (gold, predicted) lemma pairs.");

    m.def(
        "plan_counts",
        [](const std::string& scenario, const std::string& registry) {
            const auto p = scenario::plan(scenario::parse_scenario(scenario), corpus::load_registry(registry));
            return py::make_tuple(p.runs.size(), p.evaluation_count());
        },
        py::arg("scenario"), py::arg("registry"), "Return (runs, evaluations) for one scenario.");

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "medlat");
            std::vector<const char*> argv;
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command line tool in-process; returns (exit_code, stdout, stderr).");
}
