#include "medlat/evaluation.h"

#include "medlat/error.h"
#include "medlat/text.h"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace medlat::evaluation {

std::string to_string(Field f) {
    switch (f) {
    case Field::upos: return "upos";
    case Field::ufeats: return "ufeats";
    case Field::lemma: return "lemma";
    }
    return "upos";
}

Field parse_field(std::string_view s) {
    if (s == "upos") return Field::upos;
    if (s == "ufeats") return Field::ufeats;
    if (s == "lemma") return Field::lemma;
    throw Error("InvalidField", "'" + std::string(s) + "' (expected upos, ufeats or lemma)");
}

std::vector<Field> parse_fields(std::string_view list) {
    std::vector<Field> out;
    for (const auto& item : text::split_list(list)) {
        const Field f = parse_field(item);
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
    if (out.empty()) throw Error("InvalidField", "no fields given");
    return out;
}

std::string field_value(const conllu::Token& token, Field field) {
    switch (field) {
    case Field::upos: return token.upos;
    case Field::ufeats: return conllu::feats_to_string(conllu::canonical(token.ufeats));
    case Field::lemma: return text::lowercase(token.lemma);
    }
    return {};
}

Decimal2 EvalReport::accuracy(Field f) const {
    const auto it = fields.find(f);
    if (it == fields.end()) throw Error("InvalidField", to_string(f) + " was not evaluated");
    return it->second.accuracy;
}

long EvalReport::errors(Field f) const {
    const auto it = fields.find(f);
    if (it == fields.end()) throw Error("InvalidField", to_string(f) + " was not evaluated");
    return token_count - it->second.matches;
}

void check_aligned(const conllu::Document& gold, const conllu::Document& predicted) {
    if (gold.sentences.size() != predicted.sentences.size()) {
        throw Error("AlignmentMismatch", "gold has " + std::to_string(gold.sentences.size()) +
                                             " sentences, predicted " + std::to_string(predicted.sentences.size()));
    }
    for (std::size_t si = 0; si < gold.sentences.size(); ++si) {
        const auto& g = gold.sentences[si].tokens;
        const auto& p = predicted.sentences[si].tokens;
        if (g.size() != p.size()) {
            throw Error("AlignmentMismatch", "sentence " + std::to_string(si) + ": gold has " +
                                                 std::to_string(g.size()) + " tokens, predicted " +
                                                 std::to_string(p.size()));
        }
        for (std::size_t ti = 0; ti < g.size(); ++ti) {
            if (g[ti].form != p[ti].form) {
                throw Error("AlignmentMismatch", "sentence " + std::to_string(si) + " token " +
                                                     std::to_string(ti + 1) + ": '" + g[ti].form + "' vs '" +
                                                     p[ti].form + "'");
            }
        }
    }
}

EvalReport evaluate(const conllu::Document& gold, const conllu::Document& predicted, const std::vector<Field>& fields,
                    EvalOptions options) {
    check_aligned(gold, predicted);
    EvalReport report;
    for (Field f : fields) report.fields[f] = {};
    for (std::size_t si = 0; si < gold.sentences.size(); ++si) {
        const auto& g = gold.sentences[si].tokens;
        const auto& p = predicted.sentences[si].tokens;
        for (std::size_t ti = 0; ti < g.size(); ++ti) {
            if (options.exclude_sym && g[ti].upos == "SYM") continue;
            ++report.token_count;
            for (Field f : fields) {
                std::string gv = field_value(g[ti], f);
                std::string pv = field_value(p[ti], f);
                if (gv == pv) {
                    ++report.fields[f].matches;
                } else {
                    report.mismatches.push_back({si, g[ti].id, f, std::move(gv), std::move(pv)});
                }
            }
        }
    }
    for (auto& [f, score] : report.fields) {
        score.accuracy = report.token_count == 0 ? Decimal2::from_hundredths(10000)
                                                 : Decimal2::ratio(score.matches, report.token_count, 100);
    }
    return report;
}

std::map<std::string, EvalReport> evaluate_by_genre(const GenrePairs& pairs, const std::vector<Field>& fields,
                                                    EvalOptions options) {
    std::map<std::string, EvalReport> out;
    for (const auto& [genre, docs] : pairs) {
        try {
            out.emplace(genre, evaluate(docs.first, docs.second, fields, options));
        } catch (const Error& e) {
            throw e.annotated("genre " + genre);
        }
    }
    return out;
}

std::string format_table(const std::map<std::string, EvalReport>& reports, const std::vector<Field>& fields) {
    std::size_t width = 5;
    for (const auto& [genre, r] : reports) width = std::max(width, genre.size());
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(width)) << "genre" << std::right << std::setw(9) << "tokens";
    for (Field f : fields) out << std::setw(9) << to_string(f);
    out << '\n';
    for (const auto& [genre, r] : reports) {
        out << std::left << std::setw(static_cast<int>(width)) << genre << std::right << std::setw(9) << r.token_count;
        for (Field f : fields) out << std::setw(9) << r.accuracy(f).str();
        out << '\n';
    }
    return out.str();
}

std::string format_rows(const std::map<std::string, EvalReport>& reports, const std::vector<Field>& fields) {
    std::string out;
    for (const auto& [genre, r] : reports) {
        for (Field f : fields) {
            out += genre + "\t" + to_string(f) + "\t" + std::to_string(r.token_count) + "\t" +
                   std::to_string(r.fields.at(f).matches) + "\t" + r.accuracy(f).str() + "\n";
        }
    }
    return out;
}

} // namespace medlat::evaluation
