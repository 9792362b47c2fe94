#ifndef TRACECOUNT_MEMBERSHIP_HPP
#define TRACECOUNT_MEMBERSHIP_HPP

#include <vector>

#include "tracecount/automata.hpp"

namespace tracecount {

/// Optional instrumentation for the membership search.
struct MemberStats {
    long long visitedConfigs = 0;
};

/// Predictive membership: true iff some word equivalent to w reaches q.
/// Implemented as a BFS over pairs (automaton state, per-letter consumed
/// counts), where the count vectors range over the downward-closed ideals of
/// the trace partial order of w.
bool member(const Nfa& A, int q, const Word& w, MemberStats* stats = nullptr);

/// Same search on an unrolled automaton with a subset of transitions removed
/// (removed[i] refers to U.transitions[i]).  Used by the estimator's
/// set-union step.
bool memberUnrolled(const UnrolledNfa& U, int q, const Word& w,
                    const std::vector<bool>& removed, MemberStats* stats = nullptr);

/// Convenience wrapper: true iff some word equivalent to w is accepted by A.
bool memberAccepted(const Nfa& A, const Word& w, MemberStats* stats = nullptr);

} // namespace tracecount

#endif
