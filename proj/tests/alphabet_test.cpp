#include <doctest.h>

#include "support/test_util.hpp"
#include "tracecount/alphabet.hpp"
#include "tracecount/errors.hpp"

using namespace tracecount;
using namespace testutil;

TEST_CASE("alphabet basic accessors") {
    auto alpha = exampleAlphabet();
    CHECK(alpha->size() == 3);
    CHECK(alpha->symbol("a") == 0);
    CHECK(alpha->symbol("b") == 1);
    CHECK(alpha->symbol("c") == 2);
    CHECK(alpha->letter(0) == "a");
    CHECK(alpha->isIndependent(0, 1));
    CHECK(alpha->isIndependent(1, 0));
    CHECK(alpha->isIndependent(1, 2));
    CHECK(alpha->isDependent(0, 2));
    CHECK(alpha->isDependent(0, 0));
    CHECK(alpha->isDependent(1, 1));
}

TEST_CASE("alphabet width") {
    // {a,b,c} with (a,b),(b,c) independent: largest independent subset has
    // size 2 ({a,b} or {b,c}).
    CHECK(exampleAlphabet()->width() == 2);
    // No independence: width 1.
    CHECK(makeAlphabet(3, {})->width() == 1);
    // Full independence over 3 letters: width 3.
    CHECK(makeAlphabet(3, {{"a", "b"}, {"a", "c"}, {"b", "c"}})->width() == 3);
    // Single letter: width 1.
    CHECK(makeAlphabet(1, {})->width() == 1);
}

TEST_CASE("alphabet independent pairs listing") {
    auto alpha = exampleAlphabet();
    auto pairs = alpha->independentPairs();
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0] == std::pair<Symbol, Symbol>{0, 1});
    CHECK(pairs[1] == std::pair<Symbol, Symbol>{1, 2});
}

TEST_CASE("alphabet validation") {
    CHECK_THROWS_AS(ConcurrentAlphabet({"a", "a"}, {}), ValidationError);
    CHECK_THROWS_AS(ConcurrentAlphabet({"a", "b"}, {{"a", "z"}}), ValidationError);
    CHECK_THROWS_AS(ConcurrentAlphabet({"a", "b"}, {{"a", "a"}}), ValidationError);
    CHECK_THROWS_AS(exampleAlphabet()->symbol("z"), ParseError);
}

TEST_CASE("word parse and format round-trip") {
    auto alpha = exampleAlphabet();
    Word w = alpha->parseWord("bacc");
    CHECK(w == Word{1, 0, 2, 2});
    CHECK(alpha->formatWord(w) == "bacc");
    CHECK(alpha->parseWord("").empty());
    CHECK_THROWS_AS(alpha->parseWord("abz"), ParseError);
    CHECK_THROWS_AS(alpha->checkWord(Word{0, 3}), ValidationError);
    alpha->checkWord(Word{0, 1, 2});
}

TEST_CASE("multi-character letter names reject parseWord") {
    ConcurrentAlphabet alpha({"aa", "b"}, {});
    CHECK_THROWS_AS(alpha.parseWord("aab"), ParseError);
    CHECK(alpha.symbol("aa") == 0);
}
