#include "medlat/tagger.h"

#include "medlat/error.h"
#include "medlat/text.h"

#include <algorithm>
#include <charconv>
#include <random>

namespace medlat::tagger {

std::string to_string(TagTask task) { return task == TagTask::upos ? "upos" : "ufeats"; }

TagTask parse_task(std::string_view s) {
    if (s == "upos") return TagTask::upos;
    if (s == "ufeats") return TagTask::ufeats;
    throw Error("InvalidTask", "'" + std::string(s) + "' (expected upos or ufeats)");
}

std::string gold_tag(const conllu::Token& token, TagTask task) {
    if (task == TagTask::upos) return token.upos;
    return conllu::feats_to_string(conllu::canonical(token.ufeats));
}

ConfigMetadata reference_tagger_config() {
    return {{"batch_size", "12"}, {"epochs", "10"}, {"learning_rate", "2e-5"}, {"sequence_length", "256"}};
}

std::vector<std::string> extract_features(const conllu::Sentence& sentence, std::size_t index,
                                          std::string_view prev_tag) {
    if (index >= sentence.tokens.size()) {
        throw Error("IndexOutOfRange", "token index " + std::to_string(index) + " of " +
                                           std::to_string(sentence.tokens.size()));
    }
    const std::u32string cps = text::decode(sentence.tokens[index].form);
    std::u32string lower = cps;
    for (auto& c : lower) c = text::to_lower(c);

    std::vector<std::string> f;
    f.emplace_back("b");
    f.push_back("w=" + text::encode(lower));
    for (std::size_t k = 1; k <= 4 && k <= lower.size(); ++k) {
        f.push_back("p" + std::to_string(k) + "=" + text::encode(std::u32string_view(lower).substr(0, k)));
        f.push_back("s" + std::to_string(k) + "=" + text::encode(std::u32string_view(lower).substr(lower.size() - k)));
    }
    bool has_digit = false;
    bool has_cased = false;
    bool has_lower = false;
    for (char32_t c : cps) {
        has_digit = has_digit || (c >= U'0' && c <= U'9');
        has_cased = has_cased || text::is_upper(c) || text::is_lower(c);
        has_lower = has_lower || text::is_lower(c);
    }
    if (has_digit) f.emplace_back("digit");
    if (!cps.empty() && text::is_upper(cps[0])) f.emplace_back("cap");
    if (has_cased && !has_lower) f.emplace_back("allcaps");
    f.push_back("pw=" + (index == 0 ? std::string(kBoundary) : text::lowercase(sentence.tokens[index - 1].form)));
    f.push_back("nw=" + (index + 1 == sentence.tokens.size() ? std::string("</s>")
                                                             : text::lowercase(sentence.tokens[index + 1].form)));
    f.push_back("pt=" + std::string(prev_tag));
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

TaggerModel::TaggerModel(TagTask task) : task_(task), config_(reference_tagger_config()) {}

std::uint32_t TaggerModel::add_tag(const std::string& tag) {
    auto [it, inserted] = tag_index_.emplace(tag, static_cast<std::uint32_t>(tags_.size()));
    if (inserted) tags_.push_back(tag);
    return it->second;
}

std::uint32_t TaggerModel::add_feature(const std::string& feature) {
    auto [it, inserted] = feature_index_.emplace(feature, static_cast<std::uint32_t>(features_.size()));
    if (inserted) {
        features_.push_back(feature);
        weights_.emplace_back();
    }
    return it->second;
}

FeatureVector TaggerModel::features(const conllu::Sentence& sentence, std::size_t index,
                                    std::string_view prev_tag) const {
    FeatureVector fv;
    for (const auto& s : extract_features(sentence, index, prev_tag)) {
        if (auto it = feature_index_.find(s); it != feature_index_.end()) fv.push_back(it->second);
    }
    std::sort(fv.begin(), fv.end());
    return fv;
}

std::vector<double> TaggerModel::scores(const FeatureVector& fv) const {
    std::vector<double> s(tags_.size(), 0.0);
    for (auto f : fv) {
        for (const auto& [t, w] : weights_[f]) s[t] += w;
    }
    return s;
}

double TaggerModel::weight(std::uint32_t feature_id, std::uint32_t tag_index) const {
    if (feature_id >= weights_.size()) return 0.0;
    for (const auto& [t, w] : weights_[feature_id]) {
        if (t == tag_index) return w;
    }
    return 0.0;
}

std::size_t TaggerModel::best_tag(const std::vector<double>& scores) const {
    std::size_t best = 0;
    for (std::size_t t = 1; t < scores.size(); ++t) {
        if (scores[t] > scores[best] || (scores[t] == scores[best] && tags_[t] < tags_[best])) best = t;
    }
    return best;
}

std::size_t TaggerModel::nonzero_weights() const {
    std::size_t n = 0;
    for (const auto& row : weights_) n += row.size();
    return n;
}

// Lazy-averaged perceptron state. Each (feature, tag) cell keeps its current
// weight, the running sum of past weights and the step of its last change.
class Trainer {
public:
    Trainer(TaggerModel& model) : model_(model) {
        cells_.resize(model_.weights_.size());
        for (std::size_t f = 0; f < model_.weights_.size(); ++f) {
            for (const auto& [t, w] : model_.weights_[f]) cells_[f].push_back({t, w, 0.0, 0});
        }
    }

    std::uint32_t feature_id(const std::string& s) {
        const auto id = model_.add_feature(s);
        if (id >= cells_.size()) cells_.resize(id + 1);
        return id;
    }

    std::size_t predict(const FeatureVector& fv) {
        scores_.assign(model_.tags_.size(), 0.0);
        for (auto f : fv) {
            for (const auto& c : cells_[f]) scores_[c.tag] += c.weight;
        }
        return model_.best_tag(scores_);
    }

    void update(const FeatureVector& fv, std::uint32_t tag, double delta) {
        for (auto f : fv) {
            auto& row = cells_[f];
            auto it = std::find_if(row.begin(), row.end(), [tag](const Cell& c) { return c.tag == tag; });
            if (it == row.end()) {
                row.push_back({tag, 0.0, 0.0, step_});
                it = row.end() - 1;
            }
            it->total += static_cast<double>(step_ - it->stamp) * it->weight;
            it->stamp = step_;
            it->weight += delta;
        }
    }

    void tick() { ++step_; }

    // Writes averaged weights back into the model, dropping zero cells and
    // features left without weights.
    void finish() {
        std::vector<std::vector<std::pair<std::uint32_t, double>>> averaged(cells_.size());
        for (std::size_t f = 0; f < cells_.size(); ++f) {
            for (auto& c : cells_[f]) {
                double w = c.weight;
                if (step_ > 0) {
                    c.total += static_cast<double>(step_ - c.stamp) * c.weight;
                    w = c.total / static_cast<double>(step_);
                }
                if (w != 0.0) averaged[f].emplace_back(c.tag, w);
            }
            std::sort(averaged[f].begin(), averaged[f].end());
        }
        std::vector<std::string> features;
        std::vector<std::vector<std::pair<std::uint32_t, double>>> weights;
        for (std::size_t f = 0; f < averaged.size(); ++f) {
            if (averaged[f].empty()) continue;
            features.push_back(model_.features_[f]);
            weights.push_back(std::move(averaged[f]));
        }
        model_.features_ = std::move(features);
        model_.weights_ = std::move(weights);
        model_.feature_index_.clear();
        for (std::size_t f = 0; f < model_.features_.size(); ++f) {
            model_.feature_index_.emplace(model_.features_[f], static_cast<std::uint32_t>(f));
        }
    }

private:
    struct Cell {
        std::uint32_t tag;
        double weight;
        double total;
        std::int64_t stamp;
    };

    TaggerModel& model_;
    std::vector<std::vector<Cell>> cells_;
    std::vector<double> scores_;
    std::int64_t step_ = 0;
};

TaggerModel train(const conllu::Document& corpus, TagTask task, const TrainOptions& options, const TaggerModel* base) {
    if (corpus.token_count() == 0) throw Error("EmptyCorpus", "training corpus '" + corpus.source_name + "' has no tokens");
    if (base && base->task() != task) {
        throw Error("TaskMismatch", "base model is " + to_string(base->task()) + ", requested " + to_string(task));
    }
    if (options.epochs < 0) throw Error("InvalidArgument", "epochs must be >= 0");

    TaggerModel model = base ? *base : TaggerModel(task);

    // New tags are appended in sorted order so the tag index is independent of corpus order.
    // A zero-epoch continuation adds none: a weightless tag could win a tie at
    // score 0 and change what the base model predicts.
    const bool grow_tagset = base == nullptr || options.epochs > 0;
    std::vector<std::string> new_tags;
    for (const auto& s : corpus.sentences) {
        for (const auto& t : s.tokens) new_tags.push_back(gold_tag(t, task));
    }
    std::sort(new_tags.begin(), new_tags.end());
    new_tags.erase(std::unique(new_tags.begin(), new_tags.end()), new_tags.end());
    if (grow_tagset) {
        for (const auto& t : new_tags) model.add_tag(t);
    }

    Trainer trainer(model);

    struct Instance {
        FeatureVector fv;
        std::uint32_t gold;
    };
    std::vector<std::vector<Instance>> data;
    data.reserve(corpus.sentences.size());
    for (const auto& s : corpus.sentences) {
        std::vector<Instance> sent;
        std::string prev(kBoundary);
        for (std::size_t i = 0; i < s.tokens.size(); ++i) {
            Instance inst;
            for (const auto& f : extract_features(s, i, prev)) inst.fv.push_back(trainer.feature_id(f));
            std::sort(inst.fv.begin(), inst.fv.end());
            prev = gold_tag(s.tokens[i], task);
            const auto it = model.tag_index_.find(prev);
            inst.gold = it == model.tag_index_.end() ? 0 : it->second; // only when no epochs run
            sent.push_back(std::move(inst));
        }
        data.push_back(std::move(sent));
    }

    std::mt19937_64 rng(options.seed);
    std::vector<std::size_t> order(data.size());
    for (int epoch = 0; epoch < options.epochs; ++epoch) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
        for (auto si : order) {
            for (const auto& inst : data[si]) {
                const auto guess = trainer.predict(inst.fv);
                if (guess != inst.gold) {
                    trainer.update(inst.fv, inst.gold, 1.0);
                    trainer.update(inst.fv, static_cast<std::uint32_t>(guess), -1.0);
                }
                trainer.tick();
            }
        }
    }
    trainer.finish();

    TrainingStage stage;
    stage.datasets = options.datasets.empty() ? std::vector<std::string>{corpus.source_name} : options.datasets;
    stage.epochs = options.epochs;
    stage.was_continued = base != nullptr;
    stage.seed = options.seed;
    model.provenance_.push_back(std::move(stage));
    return model;
}

std::vector<std::string> tag(const TaggerModel& model, const conllu::Sentence& sentence) {
    std::vector<std::string> out;
    out.reserve(sentence.tokens.size());
    if (model.tagset().empty()) {
        out.assign(sentence.tokens.size(), "_");
        return out;
    }
    std::string prev(kBoundary);
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
        const auto best = model.best_tag(model.scores(model.features(sentence, i, prev)));
        prev = model.tagset()[best];
        out.push_back(prev);
    }
    return out;
}

conllu::Document tag_document(const TaggerModel& model, const conllu::Document& doc) {
    conllu::Document out = doc;
    for (auto& s : out.sentences) {
        const auto tags = tag(model, s);
        for (std::size_t i = 0; i < tags.size(); ++i) {
            if (model.task() == TagTask::upos) {
                s.tokens[i].upos = tags[i];
            } else {
                s.tokens[i].ufeats = conllu::parse_feats(tags[i]);
            }
        }
    }
    return out;
}

namespace {

constexpr std::string_view kMagic = "medlat-tagger 1";

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    std::string_view next() {
        if (pos_ > text_.size()) throw Error("ModelFormat", "unexpected end of model file");
        std::size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos) end = text_.size();
        std::string_view line = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        ++line_no_;
        return line;
    }

    std::vector<std::string> fields() { return text::split(next(), '\t'); }

    std::size_t count(std::string_view keyword) {
        const auto f = fields();
        if (f.size() != 2 || f[0] != keyword) fail("expected '" + std::string(keyword) + " N'");
        return to_size(f[1]);
    }

    std::size_t to_size(std::string_view s) {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) fail("bad integer '" + std::string(s) + "'");
        return v;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error("ModelFormat", "line " + std::to_string(line_no_) + ": " + what);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_no_ = 0;
};

} // namespace

// medlat-tagger 1
// task <upos|ufeats>
// config N        then N lines  key TAB value
// stages N        then N lines  epochs TAB continued(0/1) TAB seed TAB dataset,dataset
// tags N          then N lines  tag
// features N      then N lines  feature string
// weights N       then N lines  feature-id TAB tag-index TAB weight
// end
std::string format_model(const TaggerModel& model) {
    std::string out(kMagic);
    out += "\ntask\t" + to_string(model.task()) + "\n";
    out += "config\t" + std::to_string(model.config_metadata().size()) + "\n";
    for (const auto& [k, v] : model.config_metadata()) out += k + "\t" + v + "\n";
    out += "stages\t" + std::to_string(model.provenance().size()) + "\n";
    for (const auto& s : model.provenance()) {
        out += std::to_string(s.epochs) + "\t" + (s.was_continued ? "1" : "0") + "\t" + std::to_string(s.seed) + "\t" +
               text::join(s.datasets, ",") + "\n";
    }
    out += "tags\t" + std::to_string(model.tagset().size()) + "\n";
    for (const auto& t : model.tagset()) out += t + "\n";
    out += "features\t" + std::to_string(model.feature_vocabulary().size()) + "\n";
    for (const auto& f : model.feature_vocabulary()) out += f + "\n";
    out += "weights\t" + std::to_string(model.nonzero_weights()) + "\n";
    for (std::uint32_t f = 0; f < model.feature_vocabulary().size(); ++f) {
        for (std::uint32_t t = 0; t < model.tagset().size(); ++t) {
            const double w = model.weight(f, t);
            if (w != 0.0) out += std::to_string(f) + "\t" + std::to_string(t) + "\t" + format_double(w) + "\n";
        }
    }
    out += "end\n";
    return out;
}

TaggerModel parse_model(std::string_view input) {
    LineReader in(input);
    if (in.next() != kMagic) in.fail("not a medlat tagger model (or unsupported version)");
    auto task_line = in.fields();
    if (task_line.size() != 2 || task_line[0] != "task") in.fail("expected 'task'");
    TaggerModel model(parse_task(task_line[1]));
    model.config_.clear();
    for (std::size_t i = 0, n = in.count("config"); i < n; ++i) {
        auto f = in.fields();
        if (f.size() != 2) in.fail("config entry needs key and value");
        model.config_.emplace_back(f[0], f[1]);
    }
    for (std::size_t i = 0, n = in.count("stages"); i < n; ++i) {
        auto f = in.fields();
        if (f.size() != 4) in.fail("stage needs 4 fields");
        TrainingStage s;
        s.epochs = static_cast<int>(in.to_size(f[0]));
        s.was_continued = f[1] == "1";
        s.seed = in.to_size(f[2]);
        s.datasets = text::split_list(f[3]);
        model.provenance_.push_back(std::move(s));
    }
    for (std::size_t i = 0, n = in.count("tags"); i < n; ++i) model.add_tag(std::string(in.next()));
    for (std::size_t i = 0, n = in.count("features"); i < n; ++i) model.add_feature(std::string(in.next()));
    for (std::size_t i = 0, n = in.count("weights"); i < n; ++i) {
        auto f = in.fields();
        if (f.size() != 3) in.fail("weight needs 3 fields");
        const auto fid = in.to_size(f[0]);
        const auto tid = in.to_size(f[1]);
        if (fid >= model.features_.size() || tid >= model.tags_.size()) in.fail("weight index out of range");
        double w = 0.0;
        auto [ptr, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), w);
        if (ec != std::errc{}) in.fail("bad weight");
        model.weights_[fid].emplace_back(static_cast<std::uint32_t>(tid), w);
    }
    for (auto& row : model.weights_) std::sort(row.begin(), row.end());
    if (in.next() != "end") in.fail("expected 'end'");
    return model;
}

} // namespace medlat::tagger
