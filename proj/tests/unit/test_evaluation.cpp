#include "medlat/error.h"
#include "medlat/evaluation.h"
#include "oracles/oracles.h"
#include "unit/test_support.h"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace medlat;
using namespace medlat::evaluation;

namespace {

conllu::Document doc_of(const std::vector<std::pair<std::string, std::string>>& form_upos) {
    conllu::Document d;
    conllu::Sentence s;
    int id = 1;
    for (const auto& [f, u] : form_upos) s.tokens.push_back(testing::tok(id++, f, f, u));
    d.sentences.push_back(s);
    return d;
}

} // namespace

TEST_CASE("identical documents score 100 everywhere") {
    const auto d = doc_of({{"a", "NOUN"}, {"b", "VERB"}});
    const auto r = evaluate(d, d, {Field::upos, Field::ufeats, Field::lemma});
    for (Field f : {Field::upos, Field::ufeats, Field::lemma}) {
        CHECK(r.accuracy(f).str() == "100.00");
        CHECK(r.errors(f) == 0);
    }
    CHECK(r.mismatches.empty());
}

TEST_CASE("half right") {
    const auto g = doc_of({{"a", "NOUN"}, {"b", "VERB"}});
    const auto p = doc_of({{"a", "NOUN"}, {"b", "ADJ"}});
    const auto r = evaluate(g, p, {Field::upos});
    CHECK(r.accuracy(Field::upos).str() == "50.00");
    REQUIRE(r.mismatches.size() == 1);
    CHECK(r.mismatches[0].token_id == 2);
    CHECK(r.mismatches[0].gold == "VERB");
    CHECK(r.mismatches[0].predicted == "ADJ");
}

TEST_CASE("lemma comparison ignores case, feats compare canonically") {
    auto g = doc_of({{"Adducam", "VERB"}});
    auto p = g;
    g.sentences[0].tokens[0].lemma = "Adduco";
    p.sentences[0].tokens[0].lemma = "adduco";
    g.sentences[0].tokens[0].ufeats = {{"Mood", "Ind"}, {"Number", "Sing"}};
    p.sentences[0].tokens[0].ufeats = {{"Number", "Sing"}, {"Mood", "Ind"}};
    const auto r = evaluate(g, p, {Field::lemma, Field::ufeats});
    CHECK(r.accuracy(Field::lemma).str() == "100.00");
    CHECK(r.accuracy(Field::ufeats).str() == "100.00");
}

TEST_CASE("misalignment is an error") {
    const auto g = doc_of({{"a", "NOUN"}, {"b", "VERB"}});
    CHECK_THROWS_WITH_AS(evaluate(g, doc_of({{"a", "NOUN"}}), {Field::upos}), doctest::Contains("AlignmentMismatch"),
                         Error);
    CHECK_THROWS_WITH_AS(evaluate(g, doc_of({{"a", "NOUN"}, {"c", "VERB"}}), {Field::upos}),
                         doctest::Contains("AlignmentMismatch"), Error);
    conllu::Document two = g;
    two.sentences.push_back(g.sentences[0]);
    CHECK_THROWS_WITH_AS(evaluate(g, two, {Field::upos}), doctest::Contains("AlignmentMismatch"), Error);
}

TEST_CASE("exclude_sym leaves SYM tokens out") {
    auto g = doc_of({{"CD", "SYM"}, {"b", "VERB"}});
    auto p = g;
    p.sentences[0].tokens[0].lemma = "xx";
    const auto all = evaluate(g, p, {Field::lemma});
    CHECK(all.accuracy(Field::lemma).str() == "50.00");
    const auto no_sym = evaluate(g, p, {Field::lemma}, {true});
    CHECK(no_sym.token_count == 1);
    CHECK(no_sym.accuracy(Field::lemma).str() == "100.00");
}

TEST_CASE("by genre") {
    const auto g1 = doc_of({{"a", "NOUN"}, {"b", "VERB"}});
    const auto p2 = doc_of({{"a", "NOUN"}, {"b", "ADJ"}});
    GenrePairs pairs{{"Annals", {g1, g1}}, {"Science", {g1, p2}}};
    const auto r = evaluate_by_genre(pairs, {Field::upos});
    CHECK(r.at("Annals").accuracy(Field::upos).str() == "100.00");
    CHECK(r.at("Science").accuracy(Field::upos).str() == "50.00");
    CHECK(evaluate_by_genre({}, {Field::upos}).empty());
    GenrePairs bad{{"Normative", {g1, doc_of({{"a", "NOUN"}})}}};
    CHECK_THROWS_WITH_AS(evaluate_by_genre(bad, {Field::upos}), doctest::Contains("Normative"), Error);
}

TEST_CASE("field parsing") {
    CHECK(parse_fields("upos, lemma,upos") == std::vector<Field>{Field::upos, Field::lemma});
    CHECK_THROWS_WITH_AS(parse_field("xpos"), doctest::Contains("InvalidField"), Error);
}

TEST_CASE("randomized fixtures agree with the counting oracle, and permutation invariance") {
    std::mt19937_64 rng(99);
    const std::vector<std::string> tags{"NOUN", "VERB", "ADJ", "ADV", "SYM"};
    for (int trial = 0; trial < 30; ++trial) {
        conllu::Document g, p;
        const int sentences = 1 + static_cast<int>(rng() % 40);
        for (int s = 0; s < sentences; ++s) {
            conllu::Sentence gs, ps;
            const int n = 1 + static_cast<int>(rng() % 25);
            for (int i = 1; i <= n; ++i) {
                const auto form = testing::random_word(rng, 1, 6);
                gs.tokens.push_back(testing::tok(i, form, testing::random_word(rng, 1, 2, "ab"), tags[rng() % 5]));
                ps.tokens.push_back(testing::tok(i, form, testing::random_word(rng, 1, 2, "ab"), tags[rng() % 5]));
            }
            g.sentences.push_back(gs);
            p.sentences.push_back(ps);
        }
        const auto r = evaluate(g, p, {Field::upos, Field::lemma});
        long n = 0, mu = 0, ml = 0;
        for (std::size_t s = 0; s < g.sentences.size(); ++s) {
            for (std::size_t i = 0; i < g.sentences[s].tokens.size(); ++i) {
                ++n;
                mu += g.sentences[s].tokens[i].upos == p.sentences[s].tokens[i].upos;
                ml += g.sentences[s].tokens[i].lemma == p.sentences[s].tokens[i].lemma;
            }
        }
        REQUIRE(r.token_count == n);
        REQUIRE(r.accuracy(Field::upos).hundredths() == oracle::percent_hundredths(mu, n));
        REQUIRE(r.accuracy(Field::lemma).hundredths() == oracle::percent_hundredths(ml, n));
        REQUIRE(static_cast<long>(r.errors(Field::upos)) == n - mu);

        std::vector<std::size_t> order(g.sentences.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        conllu::Document g2, p2;
        for (auto i : order) {
            g2.sentences.push_back(g.sentences[i]);
            p2.sentences.push_back(p.sentences[i]);
        }
        const auto r2 = evaluate(g2, p2, {Field::upos, Field::lemma});
        REQUIRE(r2.accuracy(Field::upos) == r.accuracy(Field::upos));
        REQUIRE(r2.accuracy(Field::lemma) == r.accuracy(Field::lemma));
    }
}

TEST_CASE("formatting") {
    const auto g = doc_of({{"a", "NOUN"}, {"b", "VERB"}});
    std::map<std::string, EvalReport> reports{{"all", evaluate(g, g, {Field::upos})}};
    CHECK(format_rows(reports, {Field::upos}) == "all\tupos\t2\t2\t100.00\n");
    CHECK(format_table(reports, {Field::upos}).find("100.00") != std::string::npos);
}
