#include <doctest.h>

#include <algorithm>

#include "support/test_util.hpp"
#include "tracecount/errors.hpp"
#include "tracecount/trace_core.hpp"

using namespace tracecount;
using namespace testutil;

TEST_CASE("trace order of abcc") {
    auto alpha = exampleAlphabet();
    auto dag = traceOrder(*alpha, alpha->parseWord("abcc"));
    CHECK(dag.occurrences == std::vector<int>{1, 1, 2});
    // b is independent of both neighbours, so only a->c1->c2 remains.
    std::set<std::pair<LabelledIndex, LabelledIndex>> expected{
        {{0, 1}, {2, 1}}, {{2, 1}, {2, 2}}};
    CHECK(dag.covers == expected);
}

TEST_CASE("equivalence via trace order") {
    auto alpha = exampleAlphabet();
    auto w = [&](const char* s) { return alpha->parseWord(s); };
    CHECK(equivalent(*alpha, w("abcc"), w("bacc")));
    // b commutes with both a and c, so it floats freely through the word.
    CHECK(equivalent(*alpha, w("abcc"), w("acbc")));
    CHECK_FALSE(equivalent(*alpha, w("abcc"), w("ccba")));
    CHECK_FALSE(equivalent(*alpha, w("ab"), w("abb")));
    CHECK(equivalent(*alpha, w(""), w("")));
    // Swapping dependent letters changes the class.
    CHECK_FALSE(equivalent(*alpha, w("ac"), w("ca")));
}

TEST_CASE("equivalence matches permutation closure on random words") {
    Rng rng(2024);
    for (int it = 0; it < 200; ++it) {
        auto alpha = randomAlphabet(rng);
        Word w1 = randomWord(rng, *alpha, 6);
        Word w2 = randomWord(rng, *alpha, 6);
        auto cls = enumerateClass(*alpha, w1);
        CHECK(equivalent(*alpha, w1, w2) == (cls.count(w2) > 0));
    }
}

TEST_CASE("insertLetter worked example") {
    auto alpha = exampleAlphabet();
    auto [word, pos] = insertLetter(*alpha, alpha->parseWord("abcc"), alpha->symbol("b"));
    CHECK(word == alpha->parseWord("abbcc"));
    CHECK(pos == 2);
}

TEST_CASE("insertLetter edge cases") {
    auto alpha = exampleAlphabet();
    // Append when nothing greater is reachable.
    auto [w1, p1] = insertLetter(*alpha, alpha->parseWord("ab"), alpha->symbol("c"));
    CHECK(w1 == alpha->parseWord("abc"));
    CHECK(p1 == 2);
    // Into the empty word.
    auto [w2, p2] = insertLetter(*alpha, Word{}, alpha->symbol("b"));
    CHECK(w2 == alpha->parseWord("b"));
    CHECK(p2 == 0);
    // Blocked by a dependent letter: c cannot move past a.
    auto [w3, p3] = insertLetter(*alpha, alpha->parseWord("ba"), alpha->symbol("c"));
    CHECK(w3 == alpha->parseWord("bac"));
    CHECK(p3 == 2);
}

TEST_CASE("normalForm worked example") {
    auto alpha = exampleAlphabet();
    CHECK(normalForm(*alpha, alpha->parseWord("bacc")) == alpha->parseWord("abcc"));
    CHECK(normalForm(*alpha, alpha->parseWord("abcc")) == alpha->parseWord("abcc"));
    CHECK(normalForm(*alpha, Word{}).empty());
}

TEST_CASE("normalForm equals class minimum on random words") {
    Rng rng(7);
    for (int it = 0; it < 500; ++it) {
        auto alpha = randomAlphabet(rng);
        Word w = randomWord(rng, *alpha, 7);
        Word nf = normalForm(*alpha, w);
        CHECK(nf == bruteNormalForm(*alpha, w));
        CHECK(equivalent(*alpha, nf, w));
    }
}

TEST_CASE("enumerateClass worked example and guard") {
    auto alpha = exampleAlphabet();
    auto cls = enumerateClass(*alpha, alpha->parseWord("abcc"));
    std::set<Word> expected{alpha->parseWord("abcc"), alpha->parseWord("bacc"),
                            alpha->parseWord("acbc"), alpha->parseWord("accb")};
    CHECK(cls == expected);
    CHECK_THROWS_AS(enumerateClass(*alpha, Word(11, 0)), BudgetError);
}

TEST_CASE("concatTraces is representative independent") {
    auto alpha = exampleAlphabet();
    auto t1 = enumerateClass(*alpha, alpha->parseWord("ab"));
    auto t2 = enumerateClass(*alpha, alpha->parseWord("c"));
    auto cat = concatTraces(*alpha, t1, t2);
    // [ab]·[c] = [abc] = {abc, bac, acb? no: a,c dependent} -> closure of abc.
    CHECK(cat == enumerateClass(*alpha, alpha->parseWord("abc")));
}
