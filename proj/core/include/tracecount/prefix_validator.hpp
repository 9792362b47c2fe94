#ifndef TRACECOUNT_PREFIX_VALIDATOR_HPP
#define TRACECOUNT_PREFIX_VALIDATOR_HPP

#include <set>
#include <utility>
#include <vector>

#include "tracecount/automata.hpp"
#include "tracecount/trace_core.hpp"

namespace tracecount {

/// True iff the trace dag of uPrime is a dag-prefix of the trace dag of u:
/// its vertex set is downward closed under u's trace order, and the two
/// orders agree on that vertex set.
bool isDagPrefix(const ConcurrentAlphabet& alpha, const Word& uPrime, const Word& u);

/// The border: labelled indices (b, j) of u by which uPrime can be extended
/// while remaining a dag-prefix of u.  Requires isDagPrefix(uPrime, u).
std::set<LabelledIndex> border(const ConcurrentAlphabet& alpha, const Word& uPrime,
                               const Word& u);

/// Splits a normal-form word x into (u-prefix, u-residual): the longest
/// prefix of x whose dag is a dag-prefix of u's dag, and the rest.
std::pair<Word, Word> uPrefixResidual(const ConcurrentAlphabet& alpha, const Word& u,
                                      const Word& x);

/// State of the prefix-validator automaton: the u-prefix of the normal form
/// of the word read so far, the first letter of its u-residual (-1 for the
/// empty residual), and the residual's letter set.
struct PvState {
    Word uPrefix;
    Symbol firstResidual = -1;
    std::set<Symbol> residualLetters;
};

struct PrefixValidator {
    Nfa dfa; // complete and deterministic; state i described by states[i]
    std::vector<PvState> states;
};

/// Builds the deterministic automaton accepting {w : nf(w) starts with u}.
/// u must be in normal form (validated).  State count is bounded by
/// width·|u|^width·|Σ|·2^|Σ|.
PrefixValidator buildPrefixValidator(std::shared_ptr<const ConcurrentAlphabet> alpha,
                                     const Word& u);

} // namespace tracecount

#endif
