#pragma once

#include "medlat/conllu.h"
#include "medlat/decimal.h"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace medlat::evaluation {

enum class Field { upos, ufeats, lemma };

std::string to_string(Field f);
Field parse_field(std::string_view s);
// "upos,ufeats,lemma" -> fields in the given order, duplicates removed.
std::vector<Field> parse_fields(std::string_view list);

// The compared value: UPOS, canonical UFeats string, or lowercased lemma.
std::string field_value(const conllu::Token& token, Field field);

struct Mismatch {
    std::size_t sentence_index = 0;
    int token_id = 0;
    Field field = Field::upos;
    std::string gold;
    std::string predicted;
};

struct FieldScore {
    long matches = 0;
    // 100 * matches / token_count, rounded half-up; 100.00 for an empty corpus.
    Decimal2 accuracy;
};

struct EvalReport {
    long token_count = 0;
    std::map<Field, FieldScore> fields;
    std::vector<Mismatch> mismatches;

    Decimal2 accuracy(Field f) const;
    long errors(Field f) const;
};

struct EvalOptions {
    // Leave tokens whose gold UPOS is SYM out of all counts.
    bool exclude_sym = false;
};

// Throws AlignmentMismatch when sentence counts, token counts or forms differ.
void check_aligned(const conllu::Document& gold, const conllu::Document& predicted);

EvalReport evaluate(const conllu::Document& gold, const conllu::Document& predicted, const std::vector<Field>& fields,
                    EvalOptions options = {});

using GenrePairs = std::map<std::string, std::pair<conllu::Document, conllu::Document>>;

// Independent evaluation per genre; errors carry the genre name.
std::map<std::string, EvalReport> evaluate_by_genre(const GenrePairs& pairs, const std::vector<Field>& fields,
                                                    EvalOptions options = {});

// Aligned text table, one row per genre (or a single "all" row).
std::string format_table(const std::map<std::string, EvalReport>& reports, const std::vector<Field>& fields);
// "genre TAB field TAB tokens TAB matches TAB accuracy" rows, no header.
std::string format_rows(const std::map<std::string, EvalReport>& reports, const std::vector<Field>& fields);

} // namespace medlat::evaluation
