#include "medlat/error.h"
#include "medlat/normalizer.h"
#include "unit/test_support.h"

#include <doctest.h>

#include <random>

using namespace medlat;
using namespace medlat::normalizer;

TEST_CASE("default ruleset follows the gold conventions") {
    const auto rules = default_gold_ruleset();
    CHECK(apply_rules(rules, "video") == "uideo");
    CHECK(apply_rules(rules, "gracia") == "gratia");
    CHECK(apply_rules(rules, "Vladislaus") == "Uladislaus");
    CHECK(apply_rules(rules, "kinga") == "kinga");
    CHECK(apply_rules(rules, "daemon") == "daemon");
    CHECK(apply_rules(rules, "circa") == "circa");
    CHECK(apply_rules(rules, "cibus") == "cibus");

    const auto* vu = rules.find_enabled("v", "u");
    REQUIRE(vu);
    CHECK(vu->position == Position::anywhere);
    CHECK(vu->exceptions.empty());
    CHECK(rules.find_enabled("k", "c") == nullptr);
    CHECK(rules.find_enabled("e", "ae") == nullptr);
    CHECK(rules.find_enabled("ci", "ti") != nullptr);
}

TEST_CASE("disabled word-specific rules stay off") {
    const auto rules = default_gold_ruleset();
    for (const auto& r : rules.rules()) {
        if (r.pattern == "k" || r.pattern == "h" || r.replacement == "ae" || r.replacement == "oe") {
            CHECK_FALSE(r.enabled);
            CHECK_FALSE(r.lexicon.empty());
        }
    }
}

TEST_CASE("empty ruleset is the identity") {
    const Ruleset empty("empty");
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const auto w = testing::random_word(rng, 1, 12);
        CHECK(apply_rules(empty, w) == w);
    }
}

TEST_CASE("position constraints") {
    RewriteRule r{"r", "a", "o", Position::initial, {}, {}, true};
    CHECK(apply_rule(r, "ara") == "ora");
    r.position = Position::final;
    CHECK(apply_rule(r, "ara") == "aro");
    r.position = Position::middle;
    CHECK(apply_rule(r, "aaa") == "aoa");
    r.position = Position::anywhere;
    CHECK(apply_rule(r, "aaa") == "ooo");
}

TEST_CASE("single pass never re-scans its own output") {
    const RewriteRule r{"c_ti", "c", "tic", Position::anywhere, {}, {}, true};
    CHECK(apply_rule(r, "cc") == "tictic");
}

TEST_CASE("exception words are fixed points of their rule") {
    const auto rules = default_gold_ruleset();
    for (const auto& r : rules.rules()) {
        if (!r.enabled) continue;
        for (const auto& w : r.exceptions) CHECK_MESSAGE(apply_rule(r, w) == w, std::string(r.rule_id + " " + w));
    }
}

TEST_CASE("lexicon gate limits a rule to listed words") {
    RewriteRule r{"kc", "k", "c", Position::initial, {}, {"karitas"}, true};
    CHECK(apply_rule(r, "karitas") == "caritas");
    CHECK(apply_rule(r, "kinga") == "kinga");
}

TEST_CASE("ruleset construction errors") {
    Ruleset rs("x");
    rs.add({"a", "v", "u", Position::anywhere, {}, {}, true});
    CHECK_THROWS_WITH_AS(rs.add({"a", "x", "y", Position::anywhere, {}, {}, true}), doctest::Contains("DuplicateRuleId"),
                         Error);
    CHECK_THROWS_WITH_AS(rs.add({"b", "", "y", Position::anywhere, {}, {}, true}), doctest::Contains("InvalidRule"),
                         Error);
    CHECK_THROWS_WITH_AS(rs.add({"c", "y", "y", Position::anywhere, {}, {}, true}), doctest::Contains("InvalidRule"),
                         Error);
}

TEST_CASE("mine_rules") {
    const auto one = mine_rules({{"u", "v", Position::initial, 289}});
    REQUIRE(one.rules().size() == 1);
    CHECK(one.rules()[0].pattern == "v");
    CHECK(one.rules()[0].replacement == "u");
    CHECK(one.rules()[0].position == Position::initial);
    CHECK(mine_rules({}).empty());
    CHECK(mine_rules({{"u", "v", Position::initial, 2}, {"t", "c", Position::middle, 1}}, 5).empty());

    const auto ordered = mine_rules({{"t", "c", Position::middle, 2}, {"u", "v", Position::initial, 5}});
    REQUIRE(ordered.rules().size() == 2);
    CHECK(ordered.rules()[0].pattern == "v");
    CHECK(ordered.rules()[1].pattern == "c");
}

TEST_CASE("ruleset file round trip") {
    const auto rules = default_gold_ruleset();
    const auto text = format_ruleset(rules);
    const auto back = parse_ruleset(text, rules.name());
    CHECK(back.rules() == rules.rules());
    CHECK_THROWS_WITH_AS(parse_ruleset("x\tv\tu\tsomewhere\t\n", "bad"), doctest::Contains("InvalidRule"), Error);
}

TEST_CASE("normalize_lemmas and augment_variants") {
    conllu::Document doc;
    conllu::Sentence s;
    s.comments = {"# sent_id = s1"};
    s.tokens = {testing::tok(1, "Video", "video", "VERB"), testing::tok(2, "CD", "_", "SYM"),
                testing::tok(3, "gracia", "gracia", "NOUN")};
    doc.sentences.push_back(s);
    const auto rules = default_gold_ruleset();

    const auto norm = normalize_lemmas(rules, doc);
    CHECK(norm.sentences[0].tokens[0].lemma == "uideo");
    CHECK(norm.sentences[0].tokens[1].lemma == "_");
    CHECK(norm.sentences[0].tokens[2].lemma == "gratia");
    CHECK(norm.sentences[0].tokens[0].form == "Video");

    const auto aug = augment_variants(rules, doc);
    REQUIRE(aug.sentences.size() == 2);
    CHECK(aug.sentences[1].tokens[0].form == "Uideo");
    CHECK(aug.sentences[1].tokens[0].lemma == "video");
    CHECK(aug.sentences[1].sent_id() == std::optional<std::string>("s1-variant"));
}
