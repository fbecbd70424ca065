#include "medlat/corpus.h"

#include "medlat/error.h"
#include "medlat/kv_config.h"
#include "medlat/text.h"

#include <algorithm>
#include <cmath>
#include <fnmatch.h>

namespace medlat::corpus {

namespace fs = std::filesystem;

std::string to_string(DatasetKind kind) {
    return kind == DatasetKind::ud_treebank ? "ud_treebank" : "efontes_genre";
}

DatasetKind parse_kind(std::string_view s) {
    if (s == "ud_treebank") return DatasetKind::ud_treebank;
    if (s == "efontes_genre") return DatasetKind::efontes_genre;
    throw Error("InvalidDatasetKind", "'" + std::string(s) + "'");
}

void Registry::add(DatasetDescriptor d) {
    if (d.name.empty() || d.name.find_first_of(":/\t\n ") != std::string::npos) {
        throw Error("InvalidDatasetName", "'" + d.name + "' (must be non-empty, no ':', '/', whitespace)");
    }
    if (find(d.name)) throw Error("DuplicateDataset", d.name);
    datasets_.push_back(std::move(d));
}

const DatasetDescriptor* Registry::find(std::string_view name) const {
    for (const auto& d : datasets_) {
        if (d.name == name) return &d;
    }
    return nullptr;
}

const DatasetDescriptor& Registry::at(std::string_view name) const {
    if (const auto* d = find(name)) return *d;
    throw Error("UnknownDataset", std::string(name));
}

std::vector<std::string> Registry::names(DatasetKind kind) const {
    std::vector<std::string> out;
    for (const auto& d : datasets_) {
        if (d.kind == kind) out.push_back(d.name);
    }
    return out;
}

std::vector<fs::path> Registry::resolve_paths(const DatasetDescriptor& d) const {
    std::vector<fs::path> out;
    for (const auto& pattern : d.paths) {
        fs::path p(pattern);
        if (p.is_relative()) p = base_dir_ / p;
        const std::string leaf = p.filename().string();
        if (leaf.find_first_of("*?[") == std::string::npos) {
            out.push_back(p);
            continue;
        }
        std::vector<fs::path> matched;
        const fs::path dir = p.parent_path();
        if (fs::is_directory(dir)) {
            for (const auto& entry : fs::directory_iterator(dir)) {
                if (!entry.is_regular_file()) continue;
                if (fnmatch(leaf.c_str(), entry.path().filename().c_str(), 0) == 0) matched.push_back(entry.path());
            }
        }
        std::sort(matched.begin(), matched.end());
        out.insert(out.end(), matched.begin(), matched.end());
    }
    return out;
}

Registry parse_registry(const std::string& text, const fs::path& base_dir) {
    const KvFile kv = parse_kv(text, base_dir / "<registry>");
    if (!kv.root().entries.empty()) {
        throw Error("ConfigSyntax", "registry entries must appear under a [dataset] header");
    }
    Registry registry(base_dir);
    for (std::size_t i = 1; i < kv.sections.size(); ++i) {
        const auto& section = kv.sections[i];
        DatasetDescriptor d;
        d.name = section.name;
        const auto kind = section.get("kind");
        if (!kind) throw Error("ConfigSyntax", "dataset " + d.name + " lacks 'kind'");
        d.kind = parse_kind(*kind);
        if (const auto paths = section.get("paths")) d.paths = text::split_list(*paths);
        if (const auto declared = section.get("declared")) {
            std::vector<std::string> parts;
            for (const auto& p : text::split(*declared, ' ')) {
                if (!p.empty()) parts.push_back(p);
            }
            if (parts.size() != 3) {
                throw Error("ConfigSyntax", "dataset " + d.name + ": declared = TOKENS SENTENCES AVG");
            }
            CorpusStats s;
            try {
                s.tokens = std::stoll(parts[0]);
                s.sentences = std::stoll(parts[1]);
            } catch (const std::exception&) {
                throw Error("ConfigSyntax", "dataset " + d.name + ": non-numeric declared counts");
            }
            s.avg_tokens_per_sentence = Decimal2::parse(parts[2]);
            d.declared_stats = s;
        }
        for (const auto& [key, value] : section.entries) {
            if (key != "kind" && key != "paths" && key != "declared") {
                throw Error("ConfigSyntax", "dataset " + d.name + ": unknown key '" + key + "'");
            }
        }
        registry.add(std::move(d));
    }
    return registry;
}

Registry load_registry(const fs::path& path) {
    return parse_registry(read_file(path), path.has_parent_path() ? path.parent_path() : fs::path("."));
}

CorpusStats compute_stats(const conllu::Document& doc) {
    CorpusStats s;
    s.sentences = static_cast<std::int64_t>(doc.sentences.size());
    s.tokens = static_cast<std::int64_t>(doc.token_count());
    if (s.sentences > 0) s.avg_tokens_per_sentence = Decimal2::ratio(s.tokens, s.sentences);
    return s;
}

CorpusStats combine(const CorpusStats& a, const CorpusStats& b) {
    CorpusStats s;
    s.tokens = a.tokens + b.tokens;
    s.sentences = a.sentences + b.sentences;
    if (s.sentences > 0) s.avg_tokens_per_sentence = Decimal2::ratio(s.tokens, s.sentences);
    return s;
}

StatsVerdict validate_stats(const CorpusStats& declared, double tolerance) {
    if (!(tolerance > 0)) throw Error("InvalidArgument", "tolerance must be > 0");
    StatsVerdict v;
    if (declared.sentences == 0) {
        if (declared.tokens > 0) throw Error("DivisionByZero", "tokens > 0 with zero sentences");
        v.deviation = std::abs(declared.avg_tokens_per_sentence.value());
    } else {
        v.expected_avg = Decimal2::ratio(declared.tokens, declared.sentences);
        const double exact = static_cast<double>(declared.tokens) / static_cast<double>(declared.sentences);
        v.deviation = std::abs(declared.avg_tokens_per_sentence.value() - exact);
    }
    v.consistent = !(v.deviation > tolerance);
    return v;
}

std::vector<SplitPlan> make_cv_splits(const std::vector<std::string>& genres, double validation_fraction) {
    if (genres.size() < 2) throw Error("TooFewDatasets", "cross-validation needs at least 2 genres");
    if (!(validation_fraction > 0 && validation_fraction < 1)) {
        throw Error("InvalidArgument", "validation_fraction must lie in (0, 1)");
    }
    std::vector<SplitPlan> plans;
    for (const auto& test : genres) {
        SplitPlan p;
        p.test_dataset = test;
        p.validation_fraction = validation_fraction;
        for (const auto& g : genres) {
            if (g != test) p.train_datasets.push_back(g);
        }
        plans.push_back(std::move(p));
    }
    return plans;
}

TrainValidation carve_validation(const conllu::Document& doc, double fraction) {
    TrainValidation out;
    out.train.source_name = doc.source_name;
    out.train.provenance = doc.provenance;
    out.validation.source_name = doc.source_name + "#validation";
    if (!(fraction > 0)) {
        out.train.sentences = doc.sentences;
        return out;
    }
    if (fraction >= 1) throw Error("InvalidArgument", "validation fraction must be < 1");
    const auto k = static_cast<std::size_t>(std::llround(1.0 / fraction));
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
        auto& target = (k > 0 && i % k == k - 1) ? out.validation : out.train;
        target.sentences.push_back(doc.sentences[i]);
    }
    out.train.provenance.push_back("validation: every " + std::to_string(k) + "th sentence held out");
    return out;
}

conllu::Document load_dataset(const Registry& registry, std::string_view name, conllu::ParseOptions options) {
    const auto& d = registry.at(name);
    const auto files = registry.resolve_paths(d);
    if (files.empty()) throw Error("MissingData", "dataset " + d.name + " has no files");
    std::vector<conllu::Document> parts;
    for (const auto& f : files) {
        std::string content;
        try {
            content = read_file(f);
        } catch (const Error& e) {
            throw e.annotated(d.name);
        }
        try {
            auto doc = conllu::parse(content, d.name, options);
            doc.provenance.insert(doc.provenance.begin(), "loaded " + f.string());
            parts.push_back(std::move(doc));
        } catch (const Error& e) {
            throw e.annotated(f.string());
        }
    }
    return conllu::concatenate(parts, d.name);
}

} // namespace medlat::corpus
