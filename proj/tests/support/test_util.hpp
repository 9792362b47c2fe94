#ifndef TRACECOUNT_TESTS_TEST_UTIL_HPP
#define TRACECOUNT_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tracecount/alphabet.hpp"
#include "tracecount/automata.hpp"
#include "tracecount/rng.hpp"
#include "tracecount/trace_core.hpp"

namespace testutil {

using namespace tracecount;

using AlphabetPtr = std::shared_ptr<const ConcurrentAlphabet>;

/// Alphabet over the first `letters` names of a,b,c,d with the given
/// independent pairs (by name).
inline AlphabetPtr makeAlphabet(int letters,
                                const std::vector<std::pair<std::string, std::string>>& pairs) {
    static const std::vector<std::string> names{"a", "b", "c", "d"};
    return std::make_shared<ConcurrentAlphabet>(
        std::vector<std::string>(names.begin(), names.begin() + letters), pairs);
}

/// The running-example alphabet: a,b,c with (a,b) and (b,c) independent.
inline AlphabetPtr exampleAlphabet() {
    return makeAlphabet(3, {{"a", "b"}, {"b", "c"}});
}

/// Random alphabet with 1..maxLetters letters and each pair independently
/// independent with probability 1/2.
inline AlphabetPtr randomAlphabet(Rng& rng, int maxLetters = 4, int minLetters = 1) {
    int k = minLetters + static_cast<int>(rng.next() % static_cast<std::uint64_t>(
                                              maxLetters - minLetters + 1));
    std::vector<std::pair<std::string, std::string>> pairs;
    static const std::vector<std::string> names{"a", "b", "c", "d"};
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            if (rng.next() & 1u) {
                pairs.push_back({names[static_cast<std::size_t>(i)],
                                 names[static_cast<std::size_t>(j)]});
            }
        }
    }
    return makeAlphabet(k, pairs);
}

inline Word randomWord(Rng& rng, const ConcurrentAlphabet& alpha, int maxLen, int minLen = 0) {
    int len = minLen + static_cast<int>(rng.next() % static_cast<std::uint64_t>(
                                            maxLen - minLen + 1));
    Word w;
    for (int i = 0; i < len; ++i) {
        w.push_back(static_cast<Symbol>(rng.next() % static_cast<std::uint64_t>(alpha.size())));
    }
    return w;
}

/// Random connected-ish NFA: `numStates` states, initial 0, random finals
/// (at least one), transition density via `transitionsPerState` attempts.
inline Nfa randomNfa(Rng& rng, AlphabetPtr alpha, int maxStates = 6,
                     int transitionsPerState = 3) {
    Nfa A;
    A.alphabet = alpha;
    A.numStates = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(maxStates));
    A.initial = 0;
    std::set<int> finals;
    int numFinals = 1 + static_cast<int>(rng.next() % 2);
    for (int i = 0; i < numFinals; ++i) {
        finals.insert(static_cast<int>(rng.next() % static_cast<std::uint64_t>(A.numStates)));
    }
    A.finals.assign(finals.begin(), finals.end());
    std::set<Transition> transitions;
    for (int q = 0; q < A.numStates; ++q) {
        for (int i = 0; i < transitionsPerState; ++i) {
            Symbol s = static_cast<Symbol>(rng.next() % static_cast<std::uint64_t>(alpha->size()));
            int to = static_cast<int>(rng.next() % static_cast<std::uint64_t>(A.numStates));
            transitions.insert({q, s, to});
        }
    }
    A.transitions.assign(transitions.begin(), transitions.end());
    return A;
}

/// Brute-force normal form: lexicographic minimum of the full class.
inline Word bruteNormalForm(const ConcurrentAlphabet& alpha, const Word& w) {
    auto cls = enumerateClass(alpha, w);
    return *std::min_element(cls.begin(), cls.end());
}

/// Brute-force predictive membership: some class member reaches q verbatim.
inline bool bruteMember(const Nfa& A, int q, const Word& w) {
    for (const Word& v : enumerateClass(*A.alphabet, w)) {
        auto reached = A.run(v);
        if (std::binary_search(reached.begin(), reached.end(), q)) {
            return true;
        }
    }
    return false;
}

/// Acceptor of a finite word set (trie), all words over `alpha`.
inline Nfa wordListNfa(AlphabetPtr alpha, const std::vector<std::string>& words) {
    Nfa A;
    A.alphabet = alpha;
    A.numStates = 1;
    A.initial = 0;
    std::set<int> finals;
    std::map<std::pair<int, Symbol>, int> step;
    for (const std::string& text : words) {
        Word w = alpha->parseWord(text);
        int cur = 0;
        for (Symbol s : w) {
            auto it = step.find({cur, s});
            if (it == step.end()) {
                int fresh = A.numStates++;
                A.transitions.push_back({cur, s, fresh});
                step[{cur, s}] = fresh;
                cur = fresh;
            } else {
                cur = it->second;
            }
        }
        finals.insert(cur);
    }
    A.finals.assign(finals.begin(), finals.end());
    std::sort(A.transitions.begin(), A.transitions.end());
    return A;
}

/// The 12-state worked-example automaton (independence (a,b),(b,c)).
inline Nfa figureNfa() {
    auto alpha = exampleAlphabet();
    Nfa A;
    A.alphabet = alpha;
    A.numStates = 12; // qI=0, q1..q10=1..10, qF=11
    A.initial = 0;
    A.finals = {11};
    auto sym = [&](const char* s) { return alpha->symbol(s); };
    A.transitions = {
        {0, sym("b"), 1},  {0, sym("a"), 2},  {0, sym("b"), 3},  {0, sym("c"), 4},
        {1, sym("b"), 5},  {1, sym("a"), 6},  {2, sym("b"), 5},  {2, sym("a"), 6},
        {3, sym("a"), 6},  {3, sym("b"), 7},  {4, sym("c"), 6},  {4, sym("c"), 7},
        {5, sym("b"), 8},  {5, sym("c"), 9},  {6, sym("a"), 8},  {6, sym("c"), 9},
        {6, sym("c"), 10}, {7, sym("a"), 10}, {8, sym("a"), 11}, {9, sym("c"), 11},
        {10, sym("b"), 11}, {10, sym("a"), 11},
    };
    std::sort(A.transitions.begin(), A.transitions.end());
    return A;
}

/// Cycle acceptor of (abc)* over a 3-letter alphabet with the given
/// independent pairs.
inline Nfa abcCycleNfa(const std::vector<std::pair<std::string, std::string>>& pairs) {
    auto alpha = makeAlphabet(3, pairs);
    Nfa A;
    A.alphabet = alpha;
    A.numStates = 3;
    A.initial = 0;
    A.finals = {0};
    A.transitions = {{0, alpha->symbol("a"), 1}, {1, alpha->symbol("b"), 2},
                     {2, alpha->symbol("c"), 0}};
    return A;
}

} // namespace testutil

#endif
