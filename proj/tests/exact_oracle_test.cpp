#include <doctest.h>

#include "support/test_util.hpp"
#include "tracecount/errors.hpp"
#include "tracecount/exact_oracle.hpp"
#include "tracecount/membership.hpp"

using namespace tracecount;
using namespace testutil;

TEST_CASE("exact counts on small worked instances") {
    // {abcabc, aabbcc, aaaaaa} under full independence: the first two words
    // share one class (two of each letter), the third is its own class.
    auto alpha = makeAlphabet(3, {{"a", "b"}, {"a", "c"}, {"b", "c"}});
    Nfa A = wordListNfa(alpha, {"abcabc", "aabbcc", "aaaaaa"});
    CHECK(countExactNf(A, 6) == 2);
    CHECK(countExactEnum(A, 6) == 2);
    CHECK(countExactNf(A, 5) == 0);
    CHECK(countExactEnum(A, 5) == 0);
}

TEST_CASE("exact counts on the worked-example automaton") {
    Nfa A = figureNfa();
    long long nf = countExactNf(A, 4);
    CHECK(nf == countExactEnum(A, 4));
    CHECK(nf >= 1);
    // [abcc] intersects the slice, so it contributes one class.
    CHECK(memberAccepted(A, A.alphabet->parseWord("abcc")));
}

TEST_CASE("exact count with no independence is the word count") {
    auto alpha = makeAlphabet(2, {});
    Nfa A = wordListNfa(alpha, {"ab", "ba", "aa"});
    CHECK(countExactNf(A, 2) == 3);
    CHECK(countExactEnum(A, 2) == 3);
}

TEST_CASE("the two exact counters agree on random instances") {
    Rng rng(31337);
    for (int it = 0; it < 150; ++it) {
        auto alpha = randomAlphabet(rng, 3);
        Nfa A = randomNfa(rng, alpha, 5);
        int n = static_cast<int>(rng.next() % 6);
        CHECK(countExactNf(A, n) == countExactEnum(A, n));
    }
}

TEST_CASE("exact counter budget") {
    auto alpha = makeAlphabet(3, {{"a", "b"}, {"a", "c"}, {"b", "c"}});
    Nfa A;
    A.alphabet = alpha;
    A.numStates = 1;
    A.initial = 0;
    A.finals = {0};
    for (Symbol s = 0; s < 3; ++s) {
        A.transitions.push_back({0, s, 0});
    }
    ExactBudget tiny{10};
    CHECK_THROWS_AS(countExactNf(A, 8, tiny), BudgetError);
    CHECK_THROWS_AS(countExactEnum(A, 8, tiny), BudgetError);
}

TEST_CASE("canonical run of the worked example") {
    Nfa A = figureNfa();
    UnrolledNfa U = unroll(A, 4);
    auto alpha = A.alphabet;
    CanonicalRun run = canonicalRun(U, alpha->parseWord("bacc"), U.finalState);
    CHECK(run.word == alpha->parseWord("abcc"));
    REQUIRE(run.transitionIdx.size() == 4);
    // The canonical run threads qI -a-> q2 -b-> q5 -c-> q9 -c-> qF.
    std::vector<int> sources;
    for (int idx : run.transitionIdx) {
        sources.push_back(U.transitions[static_cast<std::size_t>(idx)].from);
    }
    CHECK(sources == std::vector<int>{0, 2, 5, 9});
    CHECK(U.transitions[static_cast<std::size_t>(run.transitionIdx.back())].to == U.finalState);
}

TEST_CASE("canonical run rejects traces outside the state language") {
    Nfa A = figureNfa();
    UnrolledNfa U = unroll(A, 4);
    CHECK_THROWS_AS(canonicalRun(U, A.alphabet->parseWord("bbbb"), U.finalState),
                    ValidationError);
    CHECK_THROWS_AS(canonicalRun(U, A.alphabet->parseWord("ab"), U.finalState),
                    ValidationError);
}

TEST_CASE("canonical runs are constant on a class and consistent per state") {
    Rng rng(4242);
    int done = 0;
    while (done < 60) {
        auto alpha = randomAlphabet(rng, 3);
        Nfa A = randomNfa(rng, alpha, 5);
        int n = 1 + static_cast<int>(rng.next() % 4);
        UnrolledNfa U = unroll(A, n);
        if (U.empty()) {
            continue;
        }
        Word w = randomWord(rng, *alpha, n, n);
        if (!memberUnrolled(U, U.finalState, w,
                            std::vector<bool>(U.transitions.size(), false))) {
            continue;
        }
        CanonicalRun base = canonicalRun(U, w, U.finalState);
        for (const Word& v : enumerateClass(*alpha, w)) {
            CanonicalRun other = canonicalRun(U, v, U.finalState);
            CHECK(other.word == base.word);
            CHECK(other.transitionIdx == base.transitionIdx);
        }
        CHECK(equivalent(*alpha, base.word, w));
        ++done;
    }
}
