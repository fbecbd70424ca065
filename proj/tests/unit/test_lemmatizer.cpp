#include "medlat/error.h"
#include "medlat/evaluation.h"
#include "medlat/kv_config.h"
#include "medlat/lemmatizer.h"
#include "medlat/text.h"
#include "unit/test_support.h"

#include <doctest.h>

#include <random>

using namespace medlat;
using namespace medlat::lemmatizer;

namespace {

conllu::Document doc_of(const std::vector<std::tuple<std::string, std::string, std::string>>& triples) {
    conllu::Document d;
    conllu::Sentence s;
    int id = 1;
    for (const auto& [form, lemma, upos] : triples) s.tokens.push_back(testing::tok(id++, form, lemma, upos));
    d.sentences.push_back(s);
    return d;
}

} // namespace

TEST_CASE("derive_edit_script examples") {
    const auto a = derive_edit_script("adducam", "adduco");
    CHECK(a.strip_prefix_len == 0);
    CHECK(a.strip_suffix_len == 2);
    CHECK(a.suffix_add == "o");
    CHECK(a.interior_edits.empty());
    CHECK(apply_edit_script(a, "adducam") == "adduco");
    CHECK(apply_edit_script(a, "laudam") == "laudo");

    CHECK(derive_edit_script("rex", "rex").is_identity());
    CHECK(apply_edit_script(derive_edit_script("rex", "rex"), "templum") == "templum");

    const auto c = derive_edit_script("civitatem", "civitas");
    CHECK(c.strip_suffix_len == 3);
    CHECK(c.suffix_add == "s");
    CHECK(apply_edit_script(c, "civitatem") == "civitas");
}

TEST_CASE("prefix and interior scripts") {
    const auto p = derive_edit_script("uideo", "video");
    CHECK(p.strip_prefix_len == 1);
    CHECK(p.prefix_add == "v");
    const auto i = derive_edit_script("gracia", "gratia");
    REQUIRE(i.interior_edits.size() == 1);
    CHECK(i.interior_edits[0].offset == 3);
    CHECK(apply_edit_script(i, "gracia") == "gratia");
}

TEST_CASE("incompatible scripts") {
    EditScript s;
    s.strip_suffix_len = 9;
    CHECK_THROWS_WITH_AS(apply_edit_script(s, "rex"), doctest::Contains("ScriptIncompatible"), Error);
    CHECK_FALSE(try_apply_edit_script(s, "rex").has_value());
}

TEST_CASE("edit script text round trip") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 2000; ++i) {
        const auto f = testing::random_word(rng, 1, 10, "ab:|%c");
        const auto l = testing::random_word(rng, 1, 10, "ab:|%c");
        const auto s = derive_edit_script(f, l);
        REQUIRE(EditScript::parse(s.str()) == s);
    }
}

TEST_CASE("inverse property on random strings") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20000; ++i) {
        const auto f = testing::random_word(rng, 1, 20);
        const auto l = testing::random_word(rng, 1, 20);
        REQUIRE(apply_edit_script(derive_edit_script(f, l), f) == l);
    }
}

TEST_CASE("inverse property on every fixture pair") {
    for (const auto& entry : std::filesystem::directory_iterator(testing::fixtures() / "conllu")) {
        const auto doc = conllu::parse(read_file(entry.path()), "f");
        for (const auto& s : doc.sentences) {
            for (const auto& t : s.tokens) {
                if (t.lemma == "_") continue;
                const auto f = text::lowercase(t.form);
                const auto l = text::lowercase(t.lemma);
                REQUIRE(apply_edit_script(derive_edit_script(f, l), f) == l);
            }
        }
    }
}

TEST_CASE("LemmaQuery wire format") {
    const auto q = LemmaQuery::parse("adducam:VERB");
    CHECK(q.form == "adducam");
    CHECK(q.upos == "VERB");
    CHECK(q.str() == "adducam:VERB");
    for (const char* bad : {"adducam", "a:b:VERB", ":VERB", "adducam:VB", "adducam:_"}) {
        CHECK_THROWS_WITH_AS(LemmaQuery::parse(bad), doctest::Contains("InvalidQuery"), Error);
    }
}

TEST_CASE("cascade") {
    const auto m = train_lemmatizer(doc_of({{"adducam", "adduco", "VERB"},
                                            {"rosam", "rosa", "NOUN"},
                                            {"aquam", "aqua", "NOUN"},
                                            {"CD", "_", "SYM"}}));
    CHECK(lemmatize(m, {"CD", "SYM"}) == "_");
    CHECK(lemmatize(m, {"adducam", "VERB"}) == "adduco");
    CHECK(lemmatize(m, {"Adducam", "VERB"}) == "adduco");
    CHECK(lemmatize(m, {"portam", "NOUN"}) == "porta");
    CHECK(lemmatize(m, {"laudam", "VERB"}) == "laudo");
    CHECK(lemmatize(m, {"xyz", "ADV"}) == "xyz");
    CHECK(lemmatize(m, {"QVID", "PRON"}) == "qvid");
}

TEST_CASE("SYM tokens never enter the model") {
    const auto m = train_lemmatizer(doc_of({{"CD", "_", "SYM"}, {"1amXI", "_", "SYM"}}));
    CHECK(m.lexicon().empty());
    CHECK(m.scripts().empty());
    CHECK(lemmatize(m, {"CD", "SYM"}) == "_");
}

TEST_CASE("lexicon ties break to the smallest lemma") {
    const auto m = train_lemmatizer(doc_of({{"est", "sum", "AUX"}, {"est", "edo", "AUX"}}));
    CHECK(lemmatize(m, {"est", "AUX"}) == "edo");
}

TEST_CASE("staged training adds counts") {
    const auto a = doc_of({{"adducam", "adduco", "VERB"}});
    const auto base = train_lemmatizer(a, nullptr, {"A"});
    const auto both = train_lemmatizer(a, &base, {"B"});
    const auto hit = both.lookup("adducam", "VERB");
    REQUIRE(hit);
    CHECK(hit->first == "adduco");
    CHECK(hit->second == 2);
    REQUIRE(both.provenance().size() == 2);
    CHECK(both.provenance()[1].was_continued);

    const conllu::Document empty;
    const auto same = train_lemmatizer(empty, &base, {"none"});
    CHECK(same.lexicon() == base.lexicon());
    CHECK(same.scripts() == base.scripts());
    CHECK_THROWS_WITH_AS(train_lemmatizer(empty), doctest::Contains("EmptyCorpus"), Error);
}

TEST_CASE("memorization on a tie-free fixture") {
    const auto corpus = conllu::parse(read_file(testing::fixtures() / "mini" / "efontes" / "biography.conllu"), "b");
    const auto m = train_lemmatizer(corpus);
    const auto report = evaluation::evaluate(corpus, lemmatize_document(m, corpus), {evaluation::Field::lemma});
    CHECK(report.accuracy(evaluation::Field::lemma) >= Decimal2::parse("99"));
}

TEST_CASE("ranked scripts order by count then text") {
    const auto m = train_lemmatizer(doc_of({{"rosam", "rosa", "NOUN"}, {"aquam", "aqua", "NOUN"}, {"dam", "dare", "NOUN"}}));
    const auto ranked = m.ranked_scripts("m", "NOUN");
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0].second == 2);
    CHECK(ranked[1].second == 1);
    CHECK(m.ranked_scripts("m", "").size() == 2);
}

TEST_CASE("model file round trip") {
    const auto corpus = conllu::parse(read_file(testing::fixtures() / "mini" / "efontes" / "annals.conllu"), "a");
    const auto m = train_lemmatizer(corpus, nullptr, {"Annals"});
    const auto back = parse_lemmatizer(format_lemmatizer(m));
    CHECK(back == m);
    CHECK(back.config_metadata() == reference_lemmatizer_config());
    CHECK_THROWS_WITH_AS(parse_lemmatizer("medlat-tagger 1\n"), doctest::Contains("ModelFormat"), Error);
}
