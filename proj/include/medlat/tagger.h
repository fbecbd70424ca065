#pragma once

#include "medlat/conllu.h"
#include "medlat/provenance.h"

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace medlat::tagger {

enum class TagTask { upos, ufeats };

std::string to_string(TagTask task);
TagTask parse_task(std::string_view s);

// The label a token carries for a task: its UPOS, or its canonical UFeats string.
std::string gold_tag(const conllu::Token& token, TagTask task);

inline constexpr std::string_view kBoundary = "<s>";

// Binary feature strings for one token, sorted and deduplicated.
// `prev_tag` is the gold tag of the previous token at training time and the
// predicted one at decoding time. Throws IndexOutOfRange.
std::vector<std::string> extract_features(const conllu::Sentence& sentence, std::size_t index,
                                          std::string_view prev_tag = kBoundary);

using FeatureVector = std::vector<std::uint32_t>;

using medlat::ConfigMetadata;
using medlat::TrainingStage;

// Reference fine-tuning hyperparameters for the tagging tasks, kept as
// metadata on every model; the perceptron does not use them.
ConfigMetadata reference_tagger_config();

struct TrainOptions;

class TaggerModel {
public:
    explicit TaggerModel(TagTask task = TagTask::upos);

    TagTask task() const { return task_; }
    const std::vector<std::string>& tagset() const { return tags_; }
    const std::vector<std::string>& feature_vocabulary() const { return features_; }
    const std::vector<TrainingStage>& provenance() const { return provenance_; }
    const ConfigMetadata& config_metadata() const { return config_; }

    // Known features only, as sorted ids.
    FeatureVector features(const conllu::Sentence& sentence, std::size_t index, std::string_view prev_tag) const;
    std::vector<double> scores(const FeatureVector& fv) const;
    double weight(std::uint32_t feature_id, std::uint32_t tag_index) const;
    // Highest score; ties go to the lexicographically smallest tag.
    std::size_t best_tag(const std::vector<double>& scores) const;

    std::size_t nonzero_weights() const;

    bool operator==(const TaggerModel&) const = default;

private:
    friend class Trainer;
    friend TaggerModel parse_model(std::string_view);
    friend TaggerModel train(const conllu::Document&, TagTask, const TrainOptions&, const TaggerModel*);

    std::uint32_t add_tag(const std::string& tag);
    std::uint32_t add_feature(const std::string& feature);

    TagTask task_;
    std::vector<std::string> tags_;
    std::unordered_map<std::string, std::uint32_t> tag_index_;
    std::vector<std::string> features_;
    std::unordered_map<std::string, std::uint32_t> feature_index_;
    // Per feature id: (tag index, weight), sorted by tag index, zero weights omitted.
    std::vector<std::vector<std::pair<std::uint32_t, double>>> weights_;
    std::vector<TrainingStage> provenance_;
    ConfigMetadata config_;
};

struct TrainOptions {
    int epochs = 10;
    std::uint64_t seed = 1;
    // Names recorded in provenance; defaults to the corpus source name.
    std::vector<std::string> datasets;
};

// Averaged perceptron with greedy left-to-right decoding. Starts from `base`
// when given (staged training), else from zero weights.
// Errors: EmptyCorpus, TaskMismatch, InvalidArgument (negative epochs).
TaggerModel train(const conllu::Document& corpus, TagTask task, const TrainOptions& options,
                  const TaggerModel* base = nullptr);

std::vector<std::string> tag(const TaggerModel& model, const conllu::Sentence& sentence);

// Copy of `doc` with the task's column overwritten by predictions.
conllu::Document tag_document(const TaggerModel& model, const conllu::Document& doc);

// Line-based text format, see format_model.
std::string format_model(const TaggerModel& model);
TaggerModel parse_model(std::string_view text);

} // namespace medlat::tagger
