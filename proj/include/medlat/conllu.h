#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace medlat::conllu {

// The seventeen UD part-of-speech tags.
inline constexpr std::string_view kUposTags[] = {
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
};

// True for one of kUposTags or the unannotated "_".
bool is_valid_upos(std::string_view tag);

using Feature = std::pair<std::string, std::string>;

// Morphological features in canonical form: keys strictly increasing.
using Feats = std::vector<Feature>;

// "Case=Nom|Number=Sing" -> sorted feats. "_" and "" give an empty list.
// Throws Error("MalformedFeats") on a pair without '=' or a duplicate key.
Feats parse_feats(std::string_view s);
// Inverse of parse_feats; "_" when empty.
std::string feats_to_string(const Feats& feats);
// Sorted by key; keeps duplicates so validate() can report them.
Feats canonical(Feats feats);

struct Token {
    int id = 1;
    std::string form;
    std::string lemma = "_";
    std::string upos = "_";
    std::string xpos = "_";
    Feats ufeats;
    std::string head = "_";
    std::string deprel = "_";
    std::string deps = "_";
    std::string misc = "_";

    bool operator==(const Token&) const = default;
};

struct Sentence {
    std::vector<Token> tokens;
    // Verbatim comment lines including the leading '#'.
    std::vector<std::string> comments;

    // Value of a "# sent_id = ..." comment, if present.
    std::optional<std::string> sent_id() const;

    bool operator==(const Sentence&) const = default;
};

struct Document {
    std::vector<Sentence> sentences;
    std::string source_name;
    // Ingestion notes: files loaded, lines dropped by preprocessing.
    std::vector<std::string> provenance;

    std::size_t token_count() const;

    bool operator==(const Document&) const = default;
};

struct ParseOptions {
    // Drop multiword-token ranges ("3-4") and empty nodes ("3.1") instead of
    // rejecting them. The number of dropped lines is noted in provenance.
    bool drop_multiword = false;
};

// Errors (kind): MalformedLine, NonConsecutiveIds, UnsupportedToken, InvalidUpos.
// The detail names the 1-based line number (or sentence index for ids).
Document parse(std::string_view text, std::string source_name, ParseOptions options = {});

// LF line endings, comments before tokens, one blank line after every sentence.
std::string serialize(const Document& doc);
std::string serialize(const Sentence& sentence);

struct Violation {
    std::size_t sentence_index = 0;
    int token_id = 0; // 0 for sentence-level violations
    std::string rule;

    bool operator==(const Violation&) const = default;
};

// Rules: EmptySentence, NonConsecutiveIds, EmptyForm, InvalidUpos,
// DuplicateFeatKey, UnsortedFeats, MalformedFeat, InvalidCharacter.
std::vector<Violation> validate(const Document& doc);

// Sentences of all documents in order; provenance concatenated.
Document concatenate(std::span<const Document> docs, std::string source_name);

} // namespace medlat::conllu
