#include <doctest.h>

#include "support/test_util.hpp"
#include "tracecount/membership.hpp"

using namespace tracecount;
using namespace testutil;

TEST_CASE("membership on the cycle acceptor with full independence") {
    Nfa A = abcCycleNfa({{"a", "b"}, {"a", "c"}, {"b", "c"}});
    auto alpha = A.alphabet;
    // Any permutation of abc is equivalent to abc, which is accepted.
    CHECK(memberAccepted(A, alpha->parseWord("cab")));
    CHECK(memberAccepted(A, alpha->parseWord("bca")));
    CHECK(memberAccepted(A, alpha->parseWord("")));
    CHECK_FALSE(memberAccepted(A, alpha->parseWord("aab")));
    CHECK_FALSE(memberAccepted(A, alpha->parseWord("ab")));
    // Per-state queries.
    CHECK(member(A, 1, alpha->parseWord("a")));
    CHECK(member(A, 2, alpha->parseWord("ba")));
    CHECK_FALSE(member(A, 2, alpha->parseWord("bb")));
}

TEST_CASE("membership without independence is verbatim reachability") {
    Nfa A = figureNfa();
    auto alphaFree = makeAlphabet(3, {});
    Nfa B = A;
    B.alphabet = alphaFree;
    CHECK(memberAccepted(B, alphaFree->parseWord("abcc")));
    // bacc reaches qF verbatim (qI -b-> q1 -a-> q6 -c-> q9 -c-> qF).
    CHECK(memberAccepted(B, alphaFree->parseWord("bacc")));
    CHECK_FALSE(memberAccepted(B, alphaFree->parseWord("acbc")));
}

TEST_CASE("membership agrees with brute force on random instances") {
    Rng rng(1234);
    for (int it = 0; it < 400; ++it) {
        auto alpha = randomAlphabet(rng);
        Nfa A = randomNfa(rng, alpha);
        Word w = randomWord(rng, *alpha, 6);
        int q = static_cast<int>(rng.next() % static_cast<std::uint64_t>(A.numStates));
        CHECK(member(A, q, w) == bruteMember(A, q, w));
    }
}

TEST_CASE("membership visit count respects the configuration bound") {
    Rng rng(55);
    for (int it = 0; it < 100; ++it) {
        auto alpha = randomAlphabet(rng);
        Nfa A = randomNfa(rng, alpha);
        Word w = randomWord(rng, *alpha, 6);
        MemberStats stats;
        member(A, 0, w, &stats);
        long long bound = A.numStates;
        std::vector<int> counts(static_cast<std::size_t>(alpha->size()), 0);
        for (Symbol s : w) {
            ++counts[static_cast<std::size_t>(s)];
        }
        for (int c : counts) {
            bound *= c + 1;
        }
        CHECK(stats.visitedConfigs <= bound);
        CHECK(stats.visitedConfigs >= 1);
    }
}

TEST_CASE("membership on the unrolled automaton with removed transitions") {
    Nfa A = figureNfa();
    UnrolledNfa U = unroll(A, 4);
    auto alpha = A.alphabet;
    std::vector<bool> removed(U.transitions.size(), false);
    CHECK(memberUnrolled(U, U.finalState, alpha->parseWord("abcc"), removed));
    CHECK(memberUnrolled(U, 9, alpha->parseWord("abc"), removed));
    // Remove every transition into state 9 (unrolled copy of q9): abc no
    // longer reaches it.
    for (int idx : U.incoming[9]) {
        removed[static_cast<std::size_t>(idx)] = true;
    }
    CHECK_FALSE(memberUnrolled(U, 9, alpha->parseWord("abc"), removed));
    CHECK(memberUnrolled(U, U.finalState, alpha->parseWord("abca"), removed));
}
