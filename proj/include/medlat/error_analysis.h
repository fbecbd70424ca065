#pragma once

#include "medlat/conllu.h"
#include "medlat/evaluation.h"
#include "medlat/position.h"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace medlat::analysis {

struct AlignOp {
    enum class Kind { match, sub, del, ins };
    Kind kind = Kind::match;
    char32_t gold = 0; // unset for ins
    char32_t pred = 0; // unset for del

    bool operator==(const AlignOp&) const = default;
};

// Minimum edit alignment with unit costs. Among minimal alignments the
// left-to-right walk prefers match, then sub, then del, then ins.
std::vector<AlignOp> align_chars(std::string_view gold, std::string_view pred);
// Number of non-match operations.
std::size_t alignment_cost(const std::vector<AlignOp>& ops);
// "=a ~u/v -h +s" style rendering, for diagnostics.
std::string format_alignment(const std::vector<AlignOp>& ops);

// Each maximal run of non-match operations becomes one pattern whose position
// is taken from gold indices: initial if the run starts at gold index 0, final
// if it reaches the gold end, middle otherwise. Throws IdenticalStrings.
std::vector<ConfusionPattern> extract_patterns(std::string_view gold, std::string_view pred);

// Aggregates patterns over (gold lemma, predicted lemma) pairs. Ordered by
// position (initial, middle, final), then count descending, then pattern text.
// Identical pairs are ignored.
std::vector<ConfusionPattern> mine_confusions(const std::vector<std::pair<std::string, std::string>>& errors);

// At most k patterns per position, keeping the mine_confusions order.
std::vector<ConfusionPattern> top_k_per_position(const std::vector<ConfusionPattern>& patterns, std::size_t k);

// Lowercased (gold, predicted) lemma pairs that differ. Tokens with gold UPOS
// SYM are skipped unless include_sym. Throws AlignmentMismatch.
std::vector<std::pair<std::string, std::string>> collect_lemma_errors(const conllu::Document& gold,
                                                                       const conllu::Document& predicted,
                                                                       bool include_sym = false);

// Off-diagonal (gold UPOS, predicted UPOS) counts.
struct PosConfusionMatrix {
    std::map<std::pair<std::string, std::string>, long> counts;

    long total() const;
    long errors_for_gold(const std::string& gold_upos) const;
    // Share of gold_upos errors that were predicted as pred_upos; nullopt when gold_upos has no errors.
    std::optional<double> share(const std::string& gold_upos, const std::string& pred_upos) const;
};

PosConfusionMatrix pos_confusions(const conllu::Document& gold, const conllu::Document& predicted);

struct GenreShare {
    long errors = 0;
    std::optional<double> share; // undefined when there are no errors at all
};

struct GenreErrorDistribution {
    std::map<std::string, GenreShare> genres;
    long total = 0;

    bool shares_defined() const { return total > 0; }
};

// Throws InvalidArgument for an empty map.
GenreErrorDistribution genre_distribution(const std::map<std::string, evaluation::EvalReport>& reports,
                                          evaluation::Field field);

// Text renderings: aligned tables for people, TAB rows for machines.
std::string format_confusion_table(const std::vector<ConfusionPattern>& patterns, std::size_t top_k);
std::string format_confusion_rows(const std::vector<ConfusionPattern>& patterns, std::size_t top_k);
std::string format_pos_table(const PosConfusionMatrix& m, std::size_t top_k);
std::string format_pos_rows(const PosConfusionMatrix& m);
std::string format_genre_table(const GenreErrorDistribution& d);
std::string format_genre_rows(const GenreErrorDistribution& d);

} // namespace medlat::analysis
