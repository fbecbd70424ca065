#include "medlat/conllu.h"

#include "medlat/error.h"
#include "medlat/text.h"

#include <algorithm>
#include <charconv>

namespace medlat::conllu {

namespace {

std::string line_ref(int line_no) { return "line " + std::to_string(line_no); }

bool has_control(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; });
}

} // namespace

bool is_valid_upos(std::string_view tag) {
    if (tag == "_") return true;
    return std::find(std::begin(kUposTags), std::end(kUposTags), tag) != std::end(kUposTags);
}

Feats canonical(Feats feats) {
    std::stable_sort(feats.begin(), feats.end(),
                     [](const Feature& a, const Feature& b) { return a.first < b.first; });
    return feats;
}

Feats parse_feats(std::string_view s) {
    Feats feats;
    if (s.empty() || s == "_") return feats;
    for (const auto& item : text::split(s, '|')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
            throw Error("MalformedFeats", "feature '" + item + "' is not Key=Value");
        }
        feats.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    feats = canonical(std::move(feats));
    for (std::size_t i = 1; i < feats.size(); ++i) {
        if (feats[i].first == feats[i - 1].first) {
            throw Error("MalformedFeats", "duplicate feature key '" + feats[i].first + "'");
        }
    }
    return feats;
}

std::string feats_to_string(const Feats& feats) {
    if (feats.empty()) return "_";
    std::string out;
    for (std::size_t i = 0; i < feats.size(); ++i) {
        if (i) out += '|';
        out += feats[i].first;
        out += '=';
        out += feats[i].second;
    }
    return out;
}

std::optional<std::string> Sentence::sent_id() const {
    constexpr std::string_view key = "sent_id";
    for (const auto& c : comments) {
        auto body = text::trim(std::string_view(c).substr(1));
        if (body.substr(0, key.size()) != key) continue;
        body = text::trim(body.substr(key.size()));
        if (body.empty() || body.front() != '=') continue;
        return std::string(text::trim(body.substr(1)));
    }
    return std::nullopt;
}

std::size_t Document::token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.tokens.size();
    return n;
}

Document parse(std::string_view input, std::string source_name, ParseOptions options) {
    Document doc;
    doc.source_name = std::move(source_name);

    Sentence current;
    bool in_tokens = false;
    int comment_start_line = 0;
    std::size_t dropped = 0;

    auto finish_sentence = [&](int line_no) {
        if (current.tokens.empty()) {
            if (!current.comments.empty()) {
                throw Error("MalformedLine", line_ref(comment_start_line) + ": comment block without tokens");
            }
            return;
        }
        for (std::size_t i = 0; i < current.tokens.size(); ++i) {
            if (current.tokens[i].id != static_cast<int>(i + 1)) {
                throw Error("NonConsecutiveIds", "sentence " + std::to_string(doc.sentences.size()) + " (ending before " +
                                                     line_ref(line_no) + ")");
            }
        }
        doc.sentences.push_back(std::move(current));
        current = Sentence{};
        in_tokens = false;
    };

    int line_no = 0;
    std::size_t pos = 0;
    while (pos < input.size()) {
        std::size_t end = input.find('\n', pos);
        if (end == std::string_view::npos) end = input.size();
        std::string_view line = input.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (line.empty()) {
            finish_sentence(line_no);
            continue;
        }
        if (line.front() == '#') {
            if (in_tokens) throw Error("MalformedLine", line_ref(line_no) + ": comment inside token block");
            if (current.comments.empty()) comment_start_line = line_no;
            current.comments.emplace_back(line);
            continue;
        }

        auto fields = text::split(line, '\t');
        if (fields.size() != 10) {
            throw Error("MalformedLine",
                        line_ref(line_no) + ": expected 10 tab-separated fields, found " + std::to_string(fields.size()));
        }
        const std::string& id_field = fields[0];
        if (id_field.find('-') != std::string::npos || id_field.find('.') != std::string::npos) {
            if (options.drop_multiword) {
                ++dropped;
                continue;
            }
            throw Error("UnsupportedToken", line_ref(line_no) + ": multiword range or empty node '" + id_field + "'");
        }
        Token tok;
        {
            const char* first = id_field.data();
            const char* last = first + id_field.size();
            auto [ptr, ec] = std::from_chars(first, last, tok.id);
            if (ec != std::errc{} || ptr != last || tok.id < 1) {
                throw Error("MalformedLine", line_ref(line_no) + ": bad token id '" + id_field + "'");
            }
        }
        if (fields[1].empty()) throw Error("MalformedLine", line_ref(line_no) + ": empty form");
        if (!is_valid_upos(fields[3])) {
            throw Error("InvalidUpos", line_ref(line_no) + ": '" + fields[3] + "'");
        }
        for (std::size_t k = 2; k < fields.size(); ++k) {
            if (fields[k].empty()) throw Error("MalformedLine", line_ref(line_no) + ": empty column " + std::to_string(k + 1));
        }
        try {
            tok.ufeats = parse_feats(fields[5]);
        } catch (const Error& e) {
            throw Error("MalformedLine", line_ref(line_no) + ": " + e.detail());
        }
        tok.form = std::move(fields[1]);
        tok.lemma = std::move(fields[2]);
        tok.upos = std::move(fields[3]);
        tok.xpos = std::move(fields[4]);
        tok.head = std::move(fields[6]);
        tok.deprel = std::move(fields[7]);
        tok.deps = std::move(fields[8]);
        tok.misc = std::move(fields[9]);
        current.tokens.push_back(std::move(tok));
        in_tokens = true;
    }
    finish_sentence(line_no + 1);

    if (dropped > 0) {
        doc.provenance.push_back("dropped " + std::to_string(dropped) + " multiword/empty-node lines");
    }
    return doc;
}

std::string serialize(const Sentence& sentence) {
    std::string out;
    for (const auto& c : sentence.comments) {
        out += c;
        out += '\n';
    }
    for (const auto& t : sentence.tokens) {
        out += std::to_string(t.id);
        for (const std::string* col : {&t.form, &t.lemma, &t.upos, &t.xpos}) {
            out += '\t';
            out += *col;
        }
        out += '\t';
        out += feats_to_string(t.ufeats);
        for (const std::string* col : {&t.head, &t.deprel, &t.deps, &t.misc}) {
            out += '\t';
            out += *col;
        }
        out += '\n';
    }
    out += '\n';
    return out;
}

std::string serialize(const Document& doc) {
    std::string out;
    for (const auto& s : doc.sentences) out += serialize(s);
    return out;
}

std::vector<Violation> validate(const Document& doc) {
    std::vector<Violation> out;
    for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
        const auto& sentence = doc.sentences[si];
        if (sentence.tokens.empty()) out.push_back({si, 0, "EmptySentence"});
        for (std::size_t ti = 0; ti < sentence.tokens.size(); ++ti) {
            const auto& t = sentence.tokens[ti];
            if (t.id != static_cast<int>(ti + 1)) out.push_back({si, t.id, "NonConsecutiveIds"});
            if (t.form.empty()) out.push_back({si, t.id, "EmptyForm"});
            if (!is_valid_upos(t.upos)) out.push_back({si, t.id, "InvalidUpos"});
            for (std::size_t k = 0; k < t.ufeats.size(); ++k) {
                const auto& [key, value] = t.ufeats[k];
                if (key.empty() || value.empty() || key.find_first_of("=|") != std::string::npos ||
                    value.find('|') != std::string::npos) {
                    out.push_back({si, t.id, "MalformedFeat"});
                }
                if (k == 0) continue;
                const auto& prev = t.ufeats[k - 1].first;
                if (key == prev) {
                    out.push_back({si, t.id, "DuplicateFeatKey"});
                } else if (key < prev) {
                    out.push_back({si, t.id, "UnsortedFeats"});
                }
            }
            bool bad_chars = false;
            for (const std::string* col : {&t.form, &t.lemma, &t.upos, &t.xpos, &t.head, &t.deprel, &t.deps, &t.misc}) {
                bad_chars = bad_chars || has_control(*col);
            }
            for (const auto& [key, value] : t.ufeats) bad_chars = bad_chars || has_control(key) || has_control(value);
            if (bad_chars) out.push_back({si, t.id, "InvalidCharacter"});
        }
    }
    return out;
}

Document concatenate(std::span<const Document> docs, std::string source_name) {
    Document out;
    out.source_name = std::move(source_name);
    for (const auto& d : docs) {
        out.sentences.insert(out.sentences.end(), d.sentences.begin(), d.sentences.end());
        out.provenance.insert(out.provenance.end(), d.provenance.begin(), d.provenance.end());
    }
    return out;
}

} // namespace medlat::conllu
