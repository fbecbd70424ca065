#pragma once

#include "medlat/conllu.h"
#include "medlat/position.h"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace medlat::normalizer {

using medlat::ConfusionPattern;
using medlat::Position;

// Rewrites `pattern` to `replacement` wherever the match satisfies `position`:
// initial = starts at index 0, final = ends at the last index, middle = neither.
struct RewriteRule {
    std::string rule_id;
    std::string pattern;
    std::string replacement;
    Position position = Position::anywhere;
    // Whole words the rule never touches.
    std::set<std::string> exceptions;
    // When non-empty, the rule only touches these whole words.
    std::set<std::string> lexicon;
    bool enabled = true;

    bool operator==(const RewriteRule&) const = default;
};

class Ruleset {
public:
    Ruleset() = default;
    explicit Ruleset(std::string name) : name_(std::move(name)) {}

    // Errors: DuplicateRuleId, InvalidRule (empty pattern, pattern == replacement).
    void add(RewriteRule rule);

    const std::string& name() const { return name_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    const RewriteRule* find(std::string_view rule_id) const;
    // First enabled rule rewriting pattern -> replacement, if any.
    const RewriteRule* find_enabled(std::string_view pattern, std::string_view replacement) const;
    bool empty() const { return rules_.empty(); }

private:
    std::string name_;
    std::vector<RewriteRule> rules_;
};

// Applies one rule in a single left-to-right pass (no re-scan of output).
std::string apply_rule(const RewriteRule& rule, std::string_view word);

// Applies enabled rules in order to the lowercased word; an initial capital
// on the input is restored on the output.
std::string apply_rules(const Ruleset& rules, std::string_view word);

// Orthographic conventions of the gold annotation: u for consonantal v, -ti-
// for the assibilated group, plus disabled word-specific rules for k/c,
// diphthongs and h.
Ruleset default_gold_ruleset();

// Lemmas with a legitimate word-internal "ci", exempt from the ci -> ti rule.
const std::vector<std::string>& ci_exceptions();

// One rule pred_sub -> gold_sub per pattern with count >= min_count, highest
// count first. Patterns with an empty predicted side cannot anchor a rule and
// are skipped.
Ruleset mine_rules(const std::vector<ConfusionPattern>& confusions, long min_count = 1);

// Rule file: one rule per line,
//   rule_id TAB pattern TAB replacement TAB position TAB exceptions
// exceptions are comma-separated; entries prefixed '+' form the lexicon gate.
// A leading '!' on rule_id marks a disabled rule. '#' lines are comments.
Ruleset parse_ruleset(std::string_view text, std::string name);
std::string format_ruleset(const Ruleset& rules);

// Rewrites the lemma column of every token (SYM tokens and "_" untouched).
conllu::Document normalize_lemmas(const Ruleset& rules, const conllu::Document& doc);

// Spelling-variant augmentation: for every sentence in which applying the
// rules to the forms changes something, appends a copy with rewritten forms
// (lemmas kept). Returns the original sentences followed by the variants.
conllu::Document augment_variants(const Ruleset& rules, const conllu::Document& doc);

} // namespace medlat::normalizer
