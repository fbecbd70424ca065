#include "medlat/lemmatizer.h"

#include "medlat/error.h"
#include "medlat/text.h"

#include <algorithm>
#include <charconv>

namespace medlat::lemmatizer {

namespace {

std::string escape(std::string_view s) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (c == '%' || c == '|' || c == ':' || c == ',' || u < 0x20) {
            out += '%';
            out += hex[u >> 4];
            out += hex[u & 0xF];
        } else {
            out += c;
        }
    }
    return out;
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

std::string unescape(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '%') {
            out += s[i];
            continue;
        }
        if (i + 2 >= s.size()) throw Error("InvalidScript", "truncated escape");
        const int hi = hex_value(s[i + 1]);
        const int lo = hex_value(s[i + 2]);
        if (hi < 0 || lo < 0) throw Error("InvalidScript", "bad escape in '" + std::string(s) + "'");
        out += static_cast<char>(hi * 16 + lo);
        i += 2;
    }
    return out;
}

std::size_t parse_size(std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw Error("InvalidScript", "bad number '" + std::string(s) + "'");
    return v;
}

// "<n>:<text>" -> (n, text)
std::pair<std::size_t, std::string> parse_count_text(std::string_view s) {
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) throw Error("InvalidScript", "missing ':' in '" + std::string(s) + "'");
    return {parse_size(s.substr(0, colon)), unescape(s.substr(colon + 1))};
}

} // namespace

LemmaQuery LemmaQuery::parse(std::string_view s) {
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) throw Error("InvalidQuery", "'" + std::string(s) + "' is not form:UPOS");
    if (s.find(':', colon + 1) != std::string_view::npos) {
        throw Error("InvalidQuery", "'" + std::string(s) + "' contains more than one ':'");
    }
    LemmaQuery q{std::string(s.substr(0, colon)), std::string(s.substr(colon + 1))};
    if (q.form.empty()) throw Error("InvalidQuery", "empty form in '" + std::string(s) + "'");
    if (!conllu::is_valid_upos(q.upos) || q.upos == "_") {
        throw Error("InvalidQuery", "unknown UPOS '" + q.upos + "'");
    }
    return q;
}

bool EditScript::is_identity() const {
    return strip_prefix_len == 0 && prefix_add.empty() && strip_suffix_len == 0 && suffix_add.empty() &&
           interior_edits.empty();
}

std::string EditScript::str() const {
    std::string out = "P" + std::to_string(strip_prefix_len) + ":" + escape(prefix_add) + "|S" +
                      std::to_string(strip_suffix_len) + ":" + escape(suffix_add);
    for (const auto& e : interior_edits) {
        out += "|I" + std::to_string(e.offset) + ":" + escape(e.old_text) + ":" + escape(e.new_text);
    }
    return out;
}

EditScript EditScript::parse(std::string_view s) {
    const auto parts = text::split(s, '|');
    if (parts.size() < 2 || parts[0].empty() || parts[0][0] != 'P' || parts[1].empty() || parts[1][0] != 'S') {
        throw Error("InvalidScript", "'" + std::string(s) + "'");
    }
    EditScript script;
    std::tie(script.strip_prefix_len, script.prefix_add) = parse_count_text(std::string_view(parts[0]).substr(1));
    std::tie(script.strip_suffix_len, script.suffix_add) = parse_count_text(std::string_view(parts[1]).substr(1));
    for (std::size_t i = 2; i < parts.size(); ++i) {
        const std::string_view p = parts[i];
        if (p.empty() || p[0] != 'I') throw Error("InvalidScript", "'" + std::string(s) + "'");
        const auto a = p.find(':');
        const auto b = p.find(':', a == std::string_view::npos ? a : a + 1);
        if (a == std::string_view::npos || b == std::string_view::npos) {
            throw Error("InvalidScript", "'" + std::string(s) + "'");
        }
        script.interior_edits.push_back(
            {parse_size(p.substr(1, a - 1)), unescape(p.substr(a + 1, b - a - 1)), unescape(p.substr(b + 1))});
    }
    return script;
}

EditScript derive_edit_script(std::string_view form, std::string_view lemma) {
    const std::u32string f = text::decode(form);
    const std::u32string l = text::decode(lemma);
    std::size_t p = 0;
    while (p < f.size() && p < l.size() && f[p] == l[p]) ++p;
    std::size_t s = 0;
    while (s < f.size() - p && s < l.size() - p && f[f.size() - 1 - s] == l[l.size() - 1 - s]) ++s;

    const std::u32string_view fmid = std::u32string_view(f).substr(p, f.size() - p - s);
    const std::u32string_view lmid = std::u32string_view(l).substr(p, l.size() - p - s);

    EditScript script;
    if (fmid.empty() && lmid.empty()) return script;
    if (s == 0) {
        script.strip_suffix_len = fmid.size();
        script.suffix_add = text::encode(lmid);
    } else if (p == 0) {
        script.strip_prefix_len = fmid.size();
        script.prefix_add = text::encode(lmid);
    } else {
        script.interior_edits.push_back({p, text::encode(fmid), text::encode(lmid)});
    }
    return script;
}

std::optional<std::string> try_apply_edit_script(const EditScript& script, std::string_view form) {
    const std::u32string f = text::decode(form);
    if (script.strip_prefix_len > f.size() || script.strip_suffix_len > f.size() - script.strip_prefix_len) {
        return std::nullopt;
    }
    const std::u32string prefix_add = text::decode(script.prefix_add);
    const std::u32string suffix_add = text::decode(script.suffix_add);
    std::u32string current = prefix_add;
    current.append(f, script.strip_prefix_len, f.size() - script.strip_prefix_len - script.strip_suffix_len);
    current += suffix_add;
    if (script.interior_edits.empty()) return text::encode(current);

    // interior offsets are in the coordinates of `current` and must stay inside the residue
    const std::size_t lo = prefix_add.size();
    const std::size_t hi = current.size() - suffix_add.size();
    std::u32string out;
    std::size_t cursor = 0;
    for (const auto& e : script.interior_edits) {
        const std::u32string old_text = text::decode(e.old_text);
        if (e.offset < lo || e.offset < cursor || e.offset + old_text.size() > hi) return std::nullopt;
        if (current.compare(e.offset, old_text.size(), old_text) != 0) return std::nullopt;
        out.append(current, cursor, e.offset - cursor);
        out += text::decode(e.new_text);
        cursor = e.offset + old_text.size();
    }
    out.append(current, cursor, std::u32string::npos);
    return text::encode(out);
}

std::string apply_edit_script(const EditScript& script, std::string_view form) {
    if (auto r = try_apply_edit_script(script, form)) return *r;
    throw Error("ScriptIncompatible", "script " + script.str() + " does not fit '" + std::string(form) + "'");
}

ConfigMetadata reference_lemmatizer_config() {
    return {{"batch_size", "128"},
            {"epochs", "5"},
            {"input_sequence_length", "48"},
            {"output_sequence_length", "24"},
            {"learning_rate", "0.001"}};
}

LemmatizerModel::LemmatizerModel() : config_(reference_lemmatizer_config()) {}

void LemmatizerModel::rebuild_pooled() {
    pooled_.clear();
    for (const auto& [key, counts] : scripts_) {
        auto& pool = pooled_[key.first];
        for (const auto& [script, n] : counts) pool[script] += n;
    }
}

std::optional<std::pair<std::string, long>> LemmatizerModel::lookup(const std::string& form,
                                                                     const std::string& upos) const {
    const auto it = lexicon_.find({form, upos});
    if (it == lexicon_.end() || it->second.empty()) return std::nullopt;
    // map order makes the first maximum the lexicographically smallest lemma
    const auto best = std::max_element(it->second.begin(), it->second.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
    return *best;
}

std::vector<std::pair<EditScript, long>> LemmatizerModel::ranked_scripts(const std::string& suffix,
                                                                         const std::string& upos) const {
    const Counts* counts = nullptr;
    if (upos.empty()) {
        if (auto it = pooled_.find(suffix); it != pooled_.end()) counts = &it->second;
    } else if (auto it = scripts_.find({suffix, upos}); it != scripts_.end()) {
        counts = &it->second;
    }
    std::vector<std::pair<std::string, long>> ranked;
    if (counts) ranked.assign(counts->begin(), counts->end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::pair<EditScript, long>> out;
    out.reserve(ranked.size());
    for (const auto& [s, n] : ranked) out.emplace_back(EditScript::parse(s), n);
    return out;
}

LemmatizerModel train_lemmatizer(const conllu::Document& corpus, const LemmatizerModel* base,
                                 std::vector<std::string> datasets) {
    if (!base && corpus.token_count() == 0) {
        throw Error("EmptyCorpus", "training corpus '" + corpus.source_name + "' has no tokens");
    }
    LemmatizerModel model = base ? *base : LemmatizerModel();
    for (const auto& s : corpus.sentences) {
        for (const auto& t : s.tokens) {
            if (t.upos == "SYM" || t.lemma == "_") continue;
            const std::string form = text::lowercase(t.form);
            const std::string lemma = text::lowercase(t.lemma);
            model.lexicon_[{form, t.upos}][lemma] += 1;
            const std::string script = derive_edit_script(form, lemma).str();
            const std::size_t len = text::length(form);
            for (std::size_t k = 1; k <= kMaxSuffixKey && k <= len; ++k) {
                model.scripts_[{text::suffix(form, k), t.upos}][script] += 1;
            }
        }
    }
    model.rebuild_pooled();
    TrainingStage stage;
    stage.datasets = datasets.empty() ? std::vector<std::string>{corpus.source_name} : std::move(datasets);
    stage.epochs = 1;
    stage.was_continued = base != nullptr;
    model.provenance_.push_back(std::move(stage));
    return model;
}

std::string lemmatize(const LemmatizerModel& model, const LemmaQuery& query) {
    if (query.upos == "SYM") return "_";
    const std::string form = text::lowercase(query.form);
    if (auto hit = model.lookup(form, query.upos)) return hit->first;

    const std::size_t len = text::length(form);
    for (const std::string& upos : {query.upos, std::string()}) {
        for (std::size_t k = std::min(len, kMaxSuffixKey); k >= 1; --k) {
            const auto ranked = model.ranked_scripts(text::suffix(form, k), upos);
            if (ranked.empty()) continue;
            if (auto out = try_apply_edit_script(ranked.front().first, form)) return *out;
        }
    }
    return form;
}

conllu::Document lemmatize_document(const LemmatizerModel& model, const conllu::Document& doc) {
    conllu::Document out = doc;
    for (auto& s : out.sentences) {
        for (auto& t : s.tokens) t.lemma = lemmatize(model, LemmaQuery{t.form, t.upos});
    }
    return out;
}

namespace {
constexpr std::string_view kMagic = "medlat-lemmatizer 1";

std::size_t expect_count(const std::vector<std::string>& f, std::string_view keyword) {
    if (f.size() != 2 || f[0] != keyword) throw Error("ModelFormat", "expected '" + std::string(keyword) + " N'");
    return parse_size(f[1]);
}
} // namespace

// medlat-lemmatizer 1
// config N    key TAB value
// stages N    epochs TAB continued TAB seed TAB datasets
// lexicon N   form TAB upos TAB lemma TAB count
// scripts N   suffix TAB upos TAB script TAB count
// end
std::string format_lemmatizer(const LemmatizerModel& model) {
    std::string out(kMagic);
    out += "\nconfig\t" + std::to_string(model.config_metadata().size()) + "\n";
    for (const auto& [k, v] : model.config_metadata()) out += k + "\t" + v + "\n";
    out += "stages\t" + std::to_string(model.provenance().size()) + "\n";
    for (const auto& s : model.provenance()) {
        out += std::to_string(s.epochs) + "\t" + (s.was_continued ? "1" : "0") + "\t" + std::to_string(s.seed) + "\t" +
               text::join(s.datasets, ",") + "\n";
    }
    auto dump = [&out](std::string_view name, const std::map<LemmatizerModel::Key, LemmatizerModel::Counts>& table) {
        std::size_t n = 0;
        for (const auto& [key, counts] : table) n += counts.size();
        out += std::string(name) + "\t" + std::to_string(n) + "\n";
        for (const auto& [key, counts] : table) {
            for (const auto& [value, count] : counts) {
                out += key.first + "\t" + key.second + "\t" + value + "\t" + std::to_string(count) + "\n";
            }
        }
    };
    dump("lexicon", model.lexicon());
    dump("scripts", model.scripts());
    out += "end\n";
    return out;
}

LemmatizerModel parse_lemmatizer(std::string_view input) {
    auto lines = text::split(input, '\n');
    std::size_t i = 0;
    auto next = [&]() -> const std::string& {
        if (i >= lines.size()) throw Error("ModelFormat", "unexpected end of lemmatizer model");
        return lines[i++];
    };
    if (next() != kMagic) throw Error("ModelFormat", "not a medlat lemmatizer model (or unsupported version)");
    LemmatizerModel model;
    model.config_.clear();
    for (std::size_t k = 0, n = expect_count(text::split(next(), '\t'), "config"); k < n; ++k) {
        auto f = text::split(next(), '\t');
        if (f.size() != 2) throw Error("ModelFormat", "bad config line");
        model.config_.emplace_back(f[0], f[1]);
    }
    for (std::size_t k = 0, n = expect_count(text::split(next(), '\t'), "stages"); k < n; ++k) {
        auto f = text::split(next(), '\t');
        if (f.size() != 4) throw Error("ModelFormat", "bad stage line");
        TrainingStage s;
        s.epochs = static_cast<int>(parse_size(f[0]));
        s.was_continued = f[1] == "1";
        s.seed = parse_size(f[2]);
        s.datasets = text::split_list(f[3]);
        model.provenance_.push_back(std::move(s));
    }
    auto load = [&](std::string_view name, std::map<LemmatizerModel::Key, LemmatizerModel::Counts>& table) {
        for (std::size_t k = 0, n = expect_count(text::split(next(), '\t'), name); k < n; ++k) {
            auto f = text::split(next(), '\t');
            if (f.size() != 4) throw Error("ModelFormat", "bad " + std::string(name) + " line");
            table[{f[0], f[1]}][f[2]] = static_cast<long>(parse_size(f[3]));
        }
    };
    load("lexicon", model.lexicon_);
    load("scripts", model.scripts_);
    if (next() != "end") throw Error("ModelFormat", "expected 'end'");
    model.rebuild_pooled();
    return model;
}

} // namespace medlat::lemmatizer
