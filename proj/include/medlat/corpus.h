#pragma once

#include "medlat/conllu.h"
#include "medlat/decimal.h"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace medlat::corpus {

enum class DatasetKind { ud_treebank, efontes_genre };

std::string to_string(DatasetKind kind);
DatasetKind parse_kind(std::string_view s);

struct CorpusStats {
    std::int64_t tokens = 0;
    std::int64_t sentences = 0;
    Decimal2 avg_tokens_per_sentence;

    bool operator==(const CorpusStats&) const = default;
};

struct DatasetDescriptor {
    std::string name;
    DatasetKind kind = DatasetKind::efontes_genre;
    // Globs as written in the registry, relative to the registry file.
    std::vector<std::string> paths;
    std::optional<CorpusStats> declared_stats;
};

// Ordered, immutable-after-load catalogue of datasets. Order is file order and
// drives the order of cross-validation folds and scenario runs.
class Registry {
public:
    Registry() = default;
    explicit Registry(std::filesystem::path base_dir) : base_dir_(std::move(base_dir)) {}

    // Errors: DuplicateDataset, InvalidDatasetName.
    void add(DatasetDescriptor d);

    const std::vector<DatasetDescriptor>& datasets() const { return datasets_; }
    const DatasetDescriptor* find(std::string_view name) const;
    // Throws UnknownDataset.
    const DatasetDescriptor& at(std::string_view name) const;

    std::vector<std::string> names(DatasetKind kind) const;
    std::vector<std::string> genres() const { return names(DatasetKind::efontes_genre); }
    std::vector<std::string> ud_treebanks() const { return names(DatasetKind::ud_treebank); }

    // Expands a dataset's globs (sorted within each glob, globs in order).
    std::vector<std::filesystem::path> resolve_paths(const DatasetDescriptor& d) const;

    const std::filesystem::path& base_dir() const { return base_dir_; }

private:
    std::filesystem::path base_dir_;
    std::vector<DatasetDescriptor> datasets_;
};

// Registry file:
//   [NAME]
//   kind = ud_treebank | efontes_genre
//   paths = glob, glob          (optional; relative to the file)
//   declared = TOKENS SENTENCES AVG   (optional)
Registry parse_registry(const std::string& text, const std::filesystem::path& base_dir);
Registry load_registry(const std::filesystem::path& path);

CorpusStats compute_stats(const conllu::Document& doc);
// Field-wise sum with the average recomputed.
CorpusStats combine(const CorpusStats& a, const CorpusStats& b);

struct StatsVerdict {
    bool consistent = true;
    Decimal2 expected_avg; // recomputed, rounded half-up
    double deviation = 0.0; // |declared - tokens/sentences|
};

// Throws DivisionByZero when sentences == 0 and tokens > 0; InvalidArgument for tolerance <= 0.
StatsVerdict validate_stats(const CorpusStats& declared, double tolerance = 0.05);

struct SplitPlan {
    std::string test_dataset;
    std::vector<std::string> train_datasets;
    double validation_fraction = 0.1;

    bool operator==(const SplitPlan&) const = default;
};

// One fold per genre, in input order. Errors: TooFewDatasets, InvalidArgument.
std::vector<SplitPlan> make_cv_splits(const std::vector<std::string>& genres, double validation_fraction = 0.1);

struct TrainValidation {
    conllu::Document train;
    conllu::Document validation;
};

// Every k-th sentence (k = round(1 / fraction)) goes to validation.
TrainValidation carve_validation(const conllu::Document& doc, double fraction);

// Concatenation of the dataset's files in path order.
// Errors: UnknownDataset, MissingData (no files matched), parse errors annotated with the file path.
conllu::Document load_dataset(const Registry& registry, std::string_view name,
                              conllu::ParseOptions options = {});

} // namespace medlat::corpus
