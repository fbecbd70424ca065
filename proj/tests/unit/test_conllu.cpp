#include "medlat/conllu.h"
#include "medlat/error.h"
#include "medlat/kv_config.h"
#include "unit/test_support.h"

#include <doctest.h>

#include <random>

using namespace medlat;
using namespace medlat::conllu;

namespace {

const std::string kTwo =
    "1\tAnima\tanima\tNOUN\t_\tCase=Nom|Number=Sing\t2\tnsubj\t_\t_\n"
    "2\torat\toro\tVERB\t_\t_\t0\troot\t_\tSpaceAfter=No\n"
    "\n";

std::string error_kind(const std::string& text) {
    try {
        parse(text, "t");
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

} // namespace

TEST_CASE("minimal document") {
    const auto doc = parse(kTwo, "t");
    REQUIRE(doc.sentences.size() == 1);
    CHECK(doc.sentences[0].tokens.size() == 2);
    CHECK(doc.sentences[0].tokens[1].misc == "SpaceAfter=No");
    CHECK(doc.source_name == "t");
    CHECK(serialize(doc) == kTwo);
}

TEST_CASE("empty input") {
    CHECK(parse("", "t").sentences.empty());
    CHECK(serialize(parse("", "t")).empty());
}

TEST_CASE("feats are canonicalized at parse") {
    const auto doc = parse("1\tx\tx\tNOUN\t_\tNumber=Sing|Case=Nom\t_\t_\t_\t_\n\n", "t");
    const Feats want{{"Case", "Nom"}, {"Number", "Sing"}};
    CHECK(doc.sentences[0].tokens[0].ufeats == want);
    CHECK(feats_to_string({}) == "_");
    CHECK(parse_feats("_").empty());
}

TEST_CASE("parse errors name their kind") {
    CHECK(error_kind("1\tx\tx\tNOUN\t_\t_\t_\t_\t_\n\n") == "MalformedLine");
    CHECK(error_kind("1-2\tdel\t_\t_\t_\t_\t_\t_\t_\t_\n1\tde\tde\tADP\t_\t_\t_\t_\t_\t_\n\n") == "UnsupportedToken");
    CHECK(error_kind("1\tx\tx\tNOUN\t_\t_\t_\t_\t_\t_\n1.1\ty\ty\tNOUN\t_\t_\t_\t_\t_\t_\n\n") == "UnsupportedToken");
    CHECK(error_kind("1\tx\tx\tNN\t_\t_\t_\t_\t_\t_\n\n") == "InvalidUpos");
    CHECK(error_kind("1\tx\tx\tNOUN\t_\t_\t_\t_\t_\t_\n3\ty\ty\tNOUN\t_\t_\t_\t_\t_\t_\n\n") == "NonConsecutiveIds");
    CHECK(error_kind("2\tx\tx\tNOUN\t_\t_\t_\t_\t_\t_\n\n") == "NonConsecutiveIds");
    CHECK(error_kind("1\t\tx\tNOUN\t_\t_\t_\t_\t_\t_\n\n") == "MalformedLine");
    CHECK(error_kind("1\tx\tx\tNOUN\t_\tCase\t_\t_\t_\t_\n\n") == "MalformedLine");
    CHECK(error_kind("1\tx\tx\tNOUN\t_\tCase=Nom|Case=Acc\t_\t_\t_\t_\n\n") == "MalformedLine");
}

TEST_CASE("error detail carries the line number") {
    try {
        parse("# c\n1\tx\tx\tNOUN\t_\t_\t_\t_\t_\n\n", "t");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.detail()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("multiword lines can be dropped with provenance") {
    const std::string text =
        "1-2\tdel\t_\t_\t_\t_\t_\t_\t_\t_\n1\tde\tde\tADP\t_\t_\t_\t_\t_\t_\n2\tel\tille\tDET\t_\t_\t_\t_\t_\t_\n\n";
    const auto doc = parse(text, "t", ParseOptions{true});
    CHECK(doc.sentences[0].tokens.size() == 2);
    REQUIRE_FALSE(doc.provenance.empty());
    CHECK(doc.provenance.back().find("1") != std::string::npos);
}

TEST_CASE("comments precede tokens and keep their order") {
    const std::string text = "# sent_id = s1\n# text = Anima orat\n" + kTwo;
    const auto doc = parse(text, "t");
    CHECK(doc.sentences[0].comments.size() == 2);
    CHECK(doc.sentences[0].sent_id() == std::optional<std::string>("s1"));
    CHECK(serialize(doc) == text);
}

TEST_CASE("CRLF input serializes with LF") {
    std::string crlf;
    for (char c : kTwo) {
        if (c == '\n') crlf += '\r';
        crlf += c;
    }
    CHECK(serialize(parse(crlf, "t")) == kTwo);
}

TEST_CASE("validate finds injected violations") {
    auto doc = parse(kTwo, "t");
    CHECK(validate(doc).empty());

    auto dup = doc;
    dup.sentences[0].tokens[0].ufeats = {{"Case", "Nom"}, {"Case", "Acc"}};
    const auto v1 = validate(dup);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].rule == "DuplicateFeatKey");
    CHECK(v1[0].token_id == 1);

    auto bad = doc;
    bad.sentences[0].tokens[1].upos = "NN";
    const auto v2 = validate(bad);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].rule == "InvalidUpos");

    auto unsorted = doc;
    unsorted.sentences[0].tokens[0].ufeats = {{"Number", "Sing"}, {"Case", "Nom"}};
    CHECK(validate(unsorted).at(0).rule == "UnsortedFeats");

    auto empty_form = doc;
    empty_form.sentences[0].tokens[0].form.clear();
    CHECK(validate(empty_form).at(0).rule == "EmptyForm");

    auto gap = doc;
    gap.sentences[0].tokens[1].id = 5;
    CHECK(validate(gap).at(0).rule == "NonConsecutiveIds");

    auto empty_sentence = doc;
    empty_sentence.sentences.push_back({});
    CHECK(validate(empty_sentence).at(0).rule == "EmptySentence");

    auto tab = doc;
    tab.sentences[0].tokens[0].lemma = "a\tb";
    CHECK(validate(tab).at(0).rule == "InvalidCharacter");
}

TEST_CASE("every canonical fixture round-trips and validates clean") {
    int n = 0;
    for (const auto& entry : std::filesystem::directory_iterator(testing::fixtures() / "conllu")) {
        const auto text = read_file(entry.path());
        const auto doc = parse(text, entry.path().filename().string());
        CHECK_MESSAGE(serialize(doc) == text, entry.path().string());
        CHECK(validate(doc).empty());
        ++n;
    }
    CHECK(n >= 20);
}

TEST_CASE("parse . serialize . parse == parse on shuffled feats") {
    std::mt19937_64 rng(3);
    const std::vector<std::string> keys{"Case", "Gender", "Mood", "Number", "Person", "Tense"};
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        const int sentences = 1 + static_cast<int>(rng() % 4);
        for (int s = 0; s < sentences; ++s) {
            if (rng() % 2) text += "# sent_id = r" + std::to_string(s) + "\n";
            const int n = 1 + static_cast<int>(rng() % 6);
            for (int i = 1; i <= n; ++i) {
                auto ks = keys;
                std::shuffle(ks.begin(), ks.end(), rng);
                ks.resize(rng() % 4);
                std::string feats;
                for (const auto& k : ks) feats += (feats.empty() ? "" : "|") + k + "=V" + std::to_string(rng() % 3);
                if (feats.empty()) feats = "_";
                text += std::to_string(i) + "\t" + testing::random_word(rng, 1, 8) + "\t_\tNOUN\t_\t" + feats +
                        "\t_\t_\t_\t_\n";
            }
            text += "\n";
        }
        const auto once = parse(text, "r");
        const auto twice = parse(serialize(once), "r");
        REQUIRE(once.sentences == twice.sentences);
        REQUIRE(validate(once).empty());
    }
}

TEST_CASE("concatenate keeps order") {
    const auto a = parse(kTwo, "a");
    const auto b = parse("1\tet\tet\tCCONJ\t_\t_\t_\t_\t_\t_\n\n", "b");
    std::vector<Document> parts{a, b};
    const auto c = concatenate(parts, "ab");
    REQUIRE(c.sentences.size() == 2);
    CHECK(c.sentences[1].tokens[0].form == "et");
    CHECK(c.token_count() == 3);
}
