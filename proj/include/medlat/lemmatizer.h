#pragma once

#include "medlat/provenance.h"

#include "medlat/conllu.h"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace medlat::lemmatizer {

// Lemmatizer input: the word plus its (predicted) UPOS, written "form:UPOS".
struct LemmaQuery {
    std::string form;
    std::string upos;

    std::string str() const { return form + ":" + upos; }

    // Exactly one ':' is allowed, so forms containing ':' are rejected
    // (InvalidQuery), as are unknown UPOS tags.
    static LemmaQuery parse(std::string_view s);
};

struct InteriorEdit {
    std::size_t offset = 0; // code points from the start of the string
    std::string old_text;
    std::string new_text;

    bool operator==(const InteriorEdit&) const = default;
};

// Positional transformation of a form into its lemma. Lengths and offsets
// count code points.
struct EditScript {
    std::size_t strip_prefix_len = 0;
    std::string prefix_add;
    std::size_t strip_suffix_len = 0;
    std::string suffix_add;
    std::vector<InteriorEdit> interior_edits;

    bool is_identity() const;
    // Canonical text form, e.g. "P0:|S2:o"; also the tie-break order of scripts.
    std::string str() const;
    static EditScript parse(std::string_view s);

    bool operator==(const EditScript&) const = default;
};

// Longest common prefix and suffix are kept; the remainder becomes a suffix
// rewrite (change at the end), a prefix rewrite (change at the start) or one
// interior replacement.
EditScript derive_edit_script(std::string_view form, std::string_view lemma);

// Prefix, then suffix, then interior edits. Throws ScriptIncompatible.
std::string apply_edit_script(const EditScript& script, std::string_view form);
// Same, without throwing.
std::optional<std::string> try_apply_edit_script(const EditScript& script, std::string_view form);

inline constexpr std::size_t kMaxSuffixKey = 5;

// Reference seq2seq hyperparameters for the lemmatization task; metadata only.
ConfigMetadata reference_lemmatizer_config();

class LemmatizerModel {
public:
    LemmatizerModel();

    using Counts = std::map<std::string, long>;
    using Key = std::pair<std::string, std::string>; // (form or suffix, upos)

    const std::map<Key, Counts>& lexicon() const { return lexicon_; }
    const std::map<Key, Counts>& scripts() const { return scripts_; }
    const std::vector<TrainingStage>& provenance() const { return provenance_; }
    const ConfigMetadata& config_metadata() const { return config_; }

    // Most frequent lemma for a lowercase form and upos (ties: smallest lemma).
    std::optional<std::pair<std::string, long>> lookup(const std::string& form, const std::string& upos) const;

    // Scripts seen for a suffix key, by descending count then script text.
    // An empty upos pools all tags.
    std::vector<std::pair<EditScript, long>> ranked_scripts(const std::string& suffix, const std::string& upos) const;

    bool operator==(const LemmatizerModel&) const = default;

private:
    friend LemmatizerModel train_lemmatizer(const conllu::Document&, const LemmatizerModel*, std::vector<std::string>);
    friend LemmatizerModel parse_lemmatizer(std::string_view);
    void rebuild_pooled();

    std::map<Key, Counts> lexicon_;
    std::map<Key, Counts> scripts_;
    std::map<std::string, Counts> pooled_;
    std::vector<TrainingStage> provenance_;
    ConfigMetadata config_;
};

// Counts (form, upos, lemma) triples and suffix-keyed edit scripts; SYM tokens
// and tokens without a lemma are skipped. With a base model the counts are
// added to the base counts. Throws EmptyCorpus when there is neither a token
// nor a base model.
LemmatizerModel train_lemmatizer(const conllu::Document& corpus, const LemmatizerModel* base = nullptr,
                                 std::vector<std::string> datasets = {});

// SYM -> "_"; lexicon; longest suffix key with the same upos; longest suffix
// key with any upos; the lowercased form itself.
std::string lemmatize(const LemmatizerModel& model, const LemmaQuery& query);

// Copy of `doc` with every lemma replaced by the model's prediction from the
// token's form and the UPOS already in the document.
conllu::Document lemmatize_document(const LemmatizerModel& model, const conllu::Document& doc);

std::string format_lemmatizer(const LemmatizerModel& model);
LemmatizerModel parse_lemmatizer(std::string_view text);

} // namespace medlat::lemmatizer
