#ifndef TRACECOUNT_EXACT_ORACLE_HPP
#define TRACECOUNT_EXACT_ORACLE_HPP

#include <vector>

#include "tracecount/automata.hpp"

namespace tracecount {

/// Enumeration guard for the exact counters, in elementary steps
/// (words visited during path enumeration).
struct ExactBudget {
    long long maxWords = 10'000'000;
};

/// Number of trace classes intersecting the length-n slice of L(A),
/// computed by enumerating normal-form words of length n (paths of the
/// normal-form acceptor) and keeping those whose class touches L(A).
/// Throws BudgetError when the enumeration guard is exceeded.
long long countExactNf(const Nfa& A, int n, const ExactBudget& budget = {});

/// The same count, computed independently: enumerate all words of the
/// length-n slice via unrolled-automaton paths, map each through its normal
/// form, and count distinct results.
long long countExactEnum(const Nfa& A, int n, const ExactBudget& budget = {});

/// Canonical run of a trace at a state of the unrolled automaton: at each
/// step, the first incoming transition in the fixed transition order that
/// can complete the trace.
struct CanonicalRun {
    std::vector<int> transitionIdx; // indices into U.transitions, in run order
    Word word;                      // the canonical word can(t, q)
};

/// Computes the canonical run of [rep] at state q; throws ValidationError if
/// the trace does not intersect the language of q.
CanonicalRun canonicalRun(const UnrolledNfa& U, const Word& rep, int q);

} // namespace tracecount

#endif
