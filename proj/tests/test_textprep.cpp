#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "textprep/cleanup.hpp"
#include "textprep/corpus.hpp"
#include "textprep/lexicons.hpp"
#include "util/status.hpp"
#include "util/textutil.hpp"

using namespace chainsent;

namespace {

const std::string kData = CHAINSENT_DATA_DIR;

struct Bundles {
    TokenSet vocab;
    FinancialLexicon lexicon;
    AbbreviationMap abbr;
};

const Bundles &bundles() {
    static Bundles b{load_token_set(kData + "/english_vocab.txt"),
                     load_financial_lexicon(kData + "/financial_lexicon.txt"),
                     load_abbreviations(kData + "/abbreviations.tsv")};
    return b;
}

CorpusOptions full_options() {
    CorpusOptions opt;
    opt.vocab = &bundles().vocab;
    opt.lexicon = &bundles().lexicon;
    opt.abbreviations = &bundles().abbr;
    return opt;
}

} // namespace

// ---------------------------------------------------------------- rule level

TEST_CASE("byte string wrappers unwrap repeatedly") {
    CHECK(*clean_text("b'Hello World'") == "hello world");
    CHECK(*clean_text("b\"pump and dump\"") == "pump and dump");
    CHECK(!clean_text("b''").has_value()); // nothing left after unwrapping
    CHECK(*clean_text("b'b'nested''") == "nested");
}

TEST_CASE("whitespace collapses to single spaces") {
    CHECK(*clean_text("  a \t b\n\nc  ") == "a b c");
    CHECK(!clean_text("   ").has_value());
}

TEST_CASE("control characters become separators") {
    std::string s = "left";
    s += '\x01';
    s += "right";
    CHECK(*clean_text(s) == "left right");
}

TEST_CASE("json shaped strings lose their structural characters") {
    CHECK(*clean_text(R"({"msg": "see you at the cafe"})") ==
          "msg see you at the cafe");
    // non json text keeps its braces until punctuation removal
    CHECK(*clean_text("use {braces} wisely") == "use braces wisely");
}

TEST_CASE("hex blob tokens disappear") {
    CHECK(!clean_text("0x4a3f9c2d8b7e65a1f0c9d8e7b6a54321").has_value());
    CHECK(*clean_text("send to 0x4a3f9c2d8b7e65a1f0c9d8e7b6a54321 today") ==
          "send to today");
    // shorter hex-ish tokens stay
    CHECK(*clean_text("0xabcd is short") == "0xabcd is short");
}

TEST_CASE("base64 padding tails reject the whole text") {
    CHECK(!clean_text("aGVsbG8gd29ybGQ==").has_value());
    CHECK(!clean_text("anything at all==").has_value());
    CHECK(clean_text("equals = fine").has_value());
}

TEST_CASE("url tokens are deleted") {
    CHECK(*clean_text("visit https://example.com for details") ==
          "visit for details");
    CHECK(*clean_text("see www.example.com now") == "see now");
    CHECK(*clean_text("WWW.SHOUT.COM hello world") == "hello world");
    CHECK(!clean_text("https://t.co/abc123").has_value());
}

TEST_CASE("punctuation is deleted in place except apostrophes and hyphens") {
    CHECK(*clean_text("wait... what?!") == "wait what");
    CHECK(*clean_text("don't re-enter") == "don't re-enter");
    CHECK(!clean_text("!!! ???").has_value());
}

TEST_CASE("digit runs flanked by letters vanish") {
    CHECK(*clean_text("nice we4ther today") == "nice wether today");
    CHECK(*clean_text("took 100 trips") == "took 100 trips"); // not flanked
    CHECK(*clean_text("route 66 ends") == "route 66 ends");
    CHECK(*clean_text("ab12cd 7x") == "abcd 7x");
}

TEST_CASE("overlong unbroken runs reject the text") {
    std::string run(26, 'a');
    CHECK(!clean_text("ok " + run).has_value());
    std::string edge(25, 'a');
    CHECK(clean_text("ok " + edge).has_value());
    // multibyte letters count once: 26 two-byte codepoints still reject
    std::string utf8run;
    for (int i = 0; i < 26; ++i) utf8run += "\xc3\xa9";
    CHECK(!clean_text("ok " + utf8run).has_value());
    std::string utf8edge;
    for (int i = 0; i < 25; ++i) utf8edge += "\xc3\xa9";
    CHECK(clean_text("ok " + utf8edge).has_value());
}

TEST_CASE("tiny or numeric leftovers reject the text") {
    CHECK(!clean_text("x").has_value());
    CHECK(!clean_text("42").has_value());
    CHECK(!clean_text("1 2 3 4 5").has_value());
    CHECK(clean_text("1 2 3 go").has_value());
    CHECK(clean_text("ok").has_value());
}

TEST_CASE("cleaning lowercases ascii only") {
    CHECK(*clean_text("MiXeD CaSe") == "mixed case");
}

TEST_CASE("cleaning is idempotent on its own output") {
    for (const char *raw :
         {"b'Hello World'", "Time to buy the dip... 2021 will moon",
          "GM everyone  have a GREAT day", R"({"msg": "see you at the cafe"})",
          "visit https://example.com for details"}) {
        auto once = clean_text(raw);
        REQUIRE(once.has_value());
        auto twice = clean_text(*once);
        REQUIRE(twice.has_value());
        CHECK(*once == *twice);
    }
}

TEST_CASE("minimal cleanup keeps case and punctuation") {
    auto kept = clean_text_minimal("  b'Time to BUY the dip... NOW!'  ");
    REQUIRE(kept.has_value());
    CHECK(*kept == "Time to BUY the dip... NOW!");
    CHECK(!clean_text_minimal("7").has_value());
    CHECK(!clean_text_minimal("123 456").has_value());
    CHECK(!clean_text_minimal("b''").has_value());
    // URLs and long runs survive the light pass
    CHECK(clean_text_minimal("https://t.co/abc123").has_value());
}

// ------------------------------------------------------------ lexicon layer

TEST_CASE("abbreviations expand whole space separated chunks only") {
    const auto &abbr = bundles().abbr;
    CHECK(expand_abbreviations("hodl your coins", abbr) == "hold your coins");
    CHECK(expand_abbreviations("gm everyone", abbr) ==
          "good morning everyone");
    CHECK(expand_abbreviations("fomo is real", abbr) ==
          "fear of missing out is real");
    // no partial matches inside larger words
    CHECK(expand_abbreviations("gmail is fine", abbr) == "gmail is fine");
    CHECK(expand_abbreviations("", abbr) == "");
}

TEST_CASE("expansion output never contains further expandable keys") {
    const auto &abbr = bundles().abbr;
    for (const auto &[key, phrase] : abbr.entries) {
        for (const auto &word : tokenize_words(phrase)) {
            CHECK(abbr.entries.find(word) == abbr.entries.end());
        }
    }
}

TEST_CASE("unknown words drop out while finance terms always survive") {
    const auto &b = bundles();
    auto kept = remove_oov({"btc", "zzzqqq", "good", "hodl"}, b.vocab,
                           b.lexicon);
    REQUIRE(kept.size() == 3);
    CHECK(kept[0] == "btc");
    CHECK(kept[1] == "good");
    CHECK(kept[2] == "hodl"); // lexicon entry even though not dictionary english
}

TEST_CASE("finance match needs at least one lexicon token") {
    const auto &lex = bundles().lexicon;
    CHECK(financial_match({"buy", "now"}, lex));
    CHECK(financial_match({"hello", "btc"}, lex));
    CHECK(!financial_match({"hello", "world"}, lex));
    CHECK(!financial_match({}, lex));
}

TEST_CASE("abbreviation files reject malformed rows") {
    std::string path = "abbr_reject_test.tsv";
    {
        std::ofstream f(path);
        f << "only_one_column\n";
    }
    CHECK_THROWS_AS(load_abbreviations(path), Error);
    {
        std::ofstream f(path);
        f << "key\t\n"; // empty phrase
    }
    CHECK_THROWS_AS(load_abbreviations(path), Error);
    std::remove(path.c_str());
}

// ----------------------------------------------------- full record pipeline

namespace {

struct FixtureCase {
    const char *raw;
    const char *cleaned;  // nullptr = the record is dropped
    bool financial;
};

// Twenty raw payloads exercising every rule: eleven survive, four of the
// survivors match the finance lexicon, nine are rejected outright.
const FixtureCase kFixture[] = {
    {"signal for today is 100 % btc", "signal for today is 100 btc", true},
    {"HODL your coins!", "hold your coins", true},
    {"b\"pump and dump warning\"", "pump and dump warning", true},
    {"Time to buy the dip... 2021 will moon",
     "time to buy the dip 2021 will moon", true},
    {"b'Hello World'", "hello world", false},
    {"happy birthday alice", "happy birthday alice", false},
    {"GM everyone have a great day",
     "good morning everyone have a great day", false},
    {"In loving tribute to Hal", "in loving tribute to hal", false},
    {R"({"msg": "see you at the cafe"})", "msg see you at the cafe", false},
    {"visit https://example.com for details", "visit for details", false},
    {"nice we4ther today", "nice wether today", false},
    {"aGVsbG8gd29ybGQ==", nullptr, false},
    {"SWAP:ETH.ETH:0xff6763c12c4cc54b2fd4115690d7792ecb78bd55:242384111",
     nullptr, false},
    {"42", nullptr, false},
    {"x", nullptr, false},
    {"0x4a3f9c2d8b7e65a1f0c9d8e7b6a54321", nullptr, false},
    {"https://t.co/abc123", nullptr, false},
    {"!!! ???", nullptr, false},
    {"1 2 3 4 5", nullptr, false},
    {"b''", nullptr, false},
};

} // namespace

TEST_CASE("the twenty payload fixture lands exactly as derived by hand") {
    auto opt = full_options();
    int kept = 0, financial = 0;
    for (const auto &c : kFixture) {
        CAPTURE(c.raw);
        CleanText row;
        bool fin = false;
        bool ok = clean_record(Chain::Btc, c.raw, 1612170900, opt, row, fin);
        if (c.cleaned == nullptr) {
            CHECK(!ok);
            continue;
        }
        REQUIRE(ok);
        CHECK(row.text == c.cleaned);
        CHECK(fin == c.financial);
        kept += 1;
        financial += fin ? 1 : 0;
    }
    CHECK(kept == 11);
    CHECK(financial == 4);
}

TEST_CASE("kept tokens reflect expansion and vocabulary filtering") {
    auto opt = full_options();
    CleanText row;
    bool fin = false;

    REQUIRE(clean_record(Chain::Btc, "signal for today is 100 % btc",
                         1612170900, opt, row, fin));
    CHECK(row.tokens ==
          std::vector<std::string>{"signal", "for", "today", "is", "btc"});

    REQUIRE(clean_record(Chain::Eth, "HODL your coins!", 1612170900, opt, row,
                         fin));
    CHECK(row.tokens == std::vector<std::string>{"hold", "your", "coins"});
    CHECK(row.chain == Chain::Eth);

    REQUIRE(clean_record(Chain::Btc, "Time to buy the dip... 2021 will moon",
                         1612170900, opt, row, fin));
    CHECK(row.tokens == std::vector<std::string>{"time", "to", "buy", "the",
                                                 "dip", "will", "moon"});
}

TEST_CASE("rows with no surviving tokens stay in the corpus as non finance") {
    auto opt = full_options();
    CleanText row;
    bool fin = true;
    // both words clean fine but neither is known vocabulary
    REQUIRE(clean_record(Chain::Btc, "zzxqj vvwpk", 1612170900, opt, row, fin));
    CHECK(row.tokens.empty());
    CHECK(!fin);
}

TEST_CASE("minimal records keep original casing but match the same lexicon") {
    CorpusOptions opt;
    opt.minimal = true;
    opt.lexicon = &bundles().lexicon;
    CleanText row;
    bool fin = false;
    REQUIRE(clean_record(Chain::Btc, "  BUY the DIP now!  ", 1612170900, opt,
                         row, fin));
    CHECK(row.text == "BUY the DIP now!");
    CHECK(fin); // lowercased tokens hit "buy" and "dip"

    // slang matches directly in the light pass since nothing expands
    REQUIRE(clean_record(Chain::Eth, "gm wagmi lfg", 1612170900, opt, row,
                         fin));
    CHECK(fin);
}

TEST_CASE("expanded slang loses lexicon hits the light pass still sees") {
    // The same message can be finance-tagged raw but not after expansion,
    // because expansion rewrites the matching token into plain words.
    auto opt = full_options();
    CleanText row;
    bool fin = true;
    REQUIRE(clean_record(Chain::Eth, "gm wagmi lfg", 1612170900, opt, row,
                         fin));
    CHECK(row.text == "good morning we are all gonna make it lets go");
    CHECK(!fin);
}

TEST_CASE("corpus files round trip through their line format") {
    CleanText row;
    row.chain = Chain::Eth;
    row.text = "buy the dip";
    row.tokens = {"buy", "the", "dip"};
    row.block_timestamp = 1612170900;
    auto line = clean_text_to_json(row);
    auto back = clean_text_from_json(line, 1);
    CHECK(back.chain == Chain::Eth);
    CHECK(back.text == row.text);
    CHECK(back.tokens == row.tokens);
    CHECK(back.block_timestamp == row.block_timestamp);
}

TEST_CASE("corpus building writes full and finance filtered outputs") {
    std::string in_path = "corpus_build_test_in.ndjson";
    std::string all_path = "corpus_build_test_all.ndjson";
    std::string fin_path = "corpus_build_test_fin.ndjson";
    {
        std::ofstream f(in_path);
        f << R"({"chain":"btc","text":"buy btc now","block_timestamp":"2021-02-01T09:00:00Z","method":"op_return","source_hash":"a"})"
          << "\n";
        f << R"({"chain":"btc","text":"hello world","block_timestamp":"2021-02-01T10:00:00Z","method":"op_return","source_hash":"b"})"
          << "\n";
        f << "not json at all\n";
        f << R"({"chain":"btc","text":"x","block_timestamp":"2021-02-01T11:00:00Z","method":"op_return","source_hash":"c"})"
          << "\n";
    }
    auto opt = full_options();
    auto counts = build_corpora(in_path, all_path, fin_path, opt);
    CHECK(counts.input == 3);     // undecodable line skipped
    CHECK(counts.corpus == 2);    // "x" fails the length gate
    CHECK(counts.financial == 1); // only the btc line

    std::ifstream fin(fin_path);
    std::string line;
    int fin_lines = 0;
    while (std::getline(fin, line)) fin_lines += 1;
    CHECK(fin_lines == 1);

    std::remove(in_path.c_str());
    std::remove(all_path.c_str());
    std::remove(fin_path.c_str());
}
