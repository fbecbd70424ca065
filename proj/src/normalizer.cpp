#include "medlat/normalizer.h"

#include "medlat/error.h"
#include "medlat/text.h"

#include <algorithm>
#include <tuple>

namespace medlat::normalizer {

void Ruleset::add(RewriteRule rule) {
    if (rule.pattern.empty()) throw Error("InvalidRule", rule.rule_id + ": empty pattern");
    if (rule.pattern == rule.replacement) throw Error("InvalidRule", rule.rule_id + ": pattern equals replacement");
    if (rule.rule_id.empty()) throw Error("InvalidRule", "empty rule id");
    if (find(rule.rule_id)) throw Error("DuplicateRuleId", rule.rule_id);
    rules_.push_back(std::move(rule));
}

const RewriteRule* Ruleset::find(std::string_view rule_id) const {
    for (const auto& r : rules_) {
        if (r.rule_id == rule_id) return &r;
    }
    return nullptr;
}

const RewriteRule* Ruleset::find_enabled(std::string_view pattern, std::string_view replacement) const {
    for (const auto& r : rules_) {
        if (r.enabled && r.pattern == pattern && r.replacement == replacement) return &r;
    }
    return nullptr;
}

std::string apply_rule(const RewriteRule& rule, std::string_view word) {
    const std::string w(word);
    if (rule.exceptions.count(w)) return w;
    if (!rule.lexicon.empty() && !rule.lexicon.count(w)) return w;

    const std::size_t n = word.size();
    const std::size_t m = rule.pattern.size();
    std::string out;
    out.reserve(n + 8);
    std::size_t i = 0;
    while (i < n) {
        if (i + m <= n && word.compare(i, m, rule.pattern) == 0) {
            const bool at_start = i == 0;
            const bool at_end = i + m == n;
            bool ok = false;
            switch (rule.position) {
            case Position::anywhere: ok = true; break;
            case Position::initial: ok = at_start; break;
            case Position::final: ok = at_end; break;
            case Position::middle: ok = !at_start && !at_end; break;
            }
            if (ok) {
                out += rule.replacement;
                i += m;
                continue;
            }
        }
        out += word[i];
        ++i;
    }
    return out;
}

std::string apply_rules(const Ruleset& rules, std::string_view word) {
    const bool capital = text::starts_upper(word);
    std::string current = text::lowercase(word);
    for (const auto& rule : rules.rules()) {
        if (rule.enabled) current = apply_rule(rule, current);
    }
    return capital ? text::capitalize(current) : current;
}

Ruleset mine_rules(const std::vector<ConfusionPattern>& confusions, long min_count) {
    if (min_count < 1) throw Error("InvalidArgument", "min_count must be >= 1");
    std::vector<ConfusionPattern> kept;
    for (const auto& p : confusions) {
        if (p.count >= min_count && !p.pred_sub.empty() && p.pred_sub != p.gold_sub) kept.push_back(p);
    }
    std::stable_sort(kept.begin(), kept.end(), [](const ConfusionPattern& a, const ConfusionPattern& b) {
        if (a.count != b.count) return a.count > b.count;
        return std::tie(a.position, a.gold_sub, a.pred_sub) < std::tie(b.position, b.gold_sub, b.pred_sub);
    });
    Ruleset rules("mined");
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const auto& p = kept[i];
        RewriteRule r;
        r.rule_id = "mined" + std::to_string(i + 1) + "_" + p.pred_sub + "_" + (p.gold_sub.empty() ? "0" : p.gold_sub) +
                    "_" + to_string(p.position);
        r.pattern = p.pred_sub;
        r.replacement = p.gold_sub;
        r.position = p.position;
        rules.add(std::move(r));
    }
    return rules;
}

Ruleset parse_ruleset(std::string_view input, std::string name) {
    Ruleset rules(std::move(name));
    int line_no = 0;
    for (auto line : text::split(input, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty() || line.front() == '#') continue;
        auto cols = text::split(line, '\t');
        if (cols.size() == 4) cols.emplace_back();
        if (cols.size() != 5) {
            throw Error("InvalidRule", "line " + std::to_string(line_no) + ": expected 5 tab-separated columns");
        }
        RewriteRule r;
        r.rule_id = cols[0];
        if (!r.rule_id.empty() && r.rule_id.front() == '!') {
            r.enabled = false;
            r.rule_id.erase(0, 1);
        }
        r.pattern = cols[1];
        r.replacement = cols[2];
        try {
            r.position = parse_position(cols[3]);
        } catch (const Error& e) {
            throw Error("InvalidRule", "line " + std::to_string(line_no) + ": " + e.detail());
        }
        for (const auto& w : text::split_list(cols[4])) {
            if (w.front() == '+') {
                if (w.size() > 1) r.lexicon.insert(w.substr(1));
            } else {
                r.exceptions.insert(w);
            }
        }
        try {
            rules.add(std::move(r));
        } catch (const Error& e) {
            throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.detail());
        }
    }
    return rules;
}

std::string format_ruleset(const Ruleset& rules) {
    std::string out = "# ruleset: " + rules.name() + "\n";
    for (const auto& r : rules.rules()) {
        std::vector<std::string> words(r.exceptions.begin(), r.exceptions.end());
        for (const auto& w : r.lexicon) words.push_back("+" + w);
        out += (r.enabled ? "" : "!") + r.rule_id + '\t' + r.pattern + '\t' + r.replacement + '\t' +
               to_string(r.position) + '\t' + text::join(words, ",") + '\n';
    }
    return out;
}

conllu::Document normalize_lemmas(const Ruleset& rules, const conllu::Document& doc) {
    conllu::Document out = doc;
    for (auto& s : out.sentences) {
        for (auto& t : s.tokens) {
            if (t.upos == "SYM" || t.lemma == "_") continue;
            t.lemma = apply_rules(rules, t.lemma);
        }
    }
    out.provenance.push_back("lemmas normalized with ruleset " + rules.name());
    return out;
}

conllu::Document augment_variants(const Ruleset& rules, const conllu::Document& doc) {
    conllu::Document out = doc;
    for (const auto& s : doc.sentences) {
        conllu::Sentence variant = s;
        bool changed = false;
        for (auto& t : variant.tokens) {
            if (t.upos == "SYM" || t.upos == "PUNCT") continue;
            std::string rewritten = apply_rules(rules, t.form);
            if (text::lowercase(rewritten) != text::lowercase(t.form)) {
                t.form = std::move(rewritten);
                changed = true;
            }
        }
        if (!changed) continue;
        variant.comments.clear();
        if (auto id = s.sent_id()) variant.comments.push_back("# sent_id = " + *id + "-variant");
        out.sentences.push_back(std::move(variant));
    }
    out.provenance.push_back("augmented with ruleset " + rules.name());
    return out;
}

} // namespace medlat::normalizer
