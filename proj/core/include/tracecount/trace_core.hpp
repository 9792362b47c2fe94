#ifndef TRACECOUNT_TRACE_CORE_HPP
#define TRACECOUNT_TRACE_CORE_HPP

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "tracecount/alphabet.hpp"

namespace tracecount {

/// Labelled occurrence (letter, i): the i-th occurrence of the letter,
/// 1-based.
using LabelledIndex = std::pair<Symbol, int>;

/// Trace partial order of a word, represented by its per-letter occurrence
/// counts and the covering (transitive-reduction) edges.  Two words are
/// equivalent iff their dags are equal.
struct TraceOrderDag {
    std::vector<int> occurrences; // per symbol rank
    std::set<std::pair<LabelledIndex, LabelledIndex>> covers;

    bool operator==(const TraceOrderDag&) const = default;
};

/// Builds the trace partial order of w: the transitive closure of
/// "position p precedes position q and their letters are dependent",
/// reduced to covering edges.
TraceOrderDag traceOrder(const ConcurrentAlphabet& alpha, const Word& w);

/// True iff [w1] = [w2], i.e. the trace partial orders coincide.
bool equivalent(const ConcurrentAlphabet& alpha, const Word& w1, const Word& w2);

/// Inserts a single letter into a word already in normal form, returning the
/// normal form of nfw·a together with the insertion position (0-based index
/// of `a` in the returned word).  The position is the maximal legal one: the
/// letter moves left only past independent letters and stops before the first
/// strictly greater letter it can reach.
std::pair<Word, std::size_t> insertLetter(const ConcurrentAlphabet& alpha, const Word& nfw,
                                          Symbol a);

/// Lexicographically least element of [w], built by iterated insertLetter.
Word normalForm(const ConcurrentAlphabet& alpha, const Word& w);

/// Full class [w] via BFS closure under adjacent independent transpositions.
/// Guarded: throws BudgetError when |w| > maxLen.
std::set<Word> enumerateClass(const ConcurrentAlphabet& alpha, const Word& w,
                              std::size_t maxLen = 10);

/// Class concatenation [t1]·[t2]; independent of representative choice.
std::set<Word> concatTraces(const ConcurrentAlphabet& alpha, const std::set<Word>& t1,
                            const std::set<Word>& t2, std::size_t maxLen = 10);

} // namespace tracecount

#endif
