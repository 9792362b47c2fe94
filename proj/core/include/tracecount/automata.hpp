#ifndef TRACECOUNT_AUTOMATA_HPP
#define TRACECOUNT_AUTOMATA_HPP

#include <memory>
#include <string>
#include <vector>

#include "tracecount/alphabet.hpp"

namespace tracecount {

struct Transition {
    int from = 0;
    Symbol sym = 0;
    int to = 0;

    auto operator<=>(const Transition&) const = default;
};

/// Nondeterministic finite automaton over a concurrent alphabet.  States are
/// dense indices 0..numStates-1; missing transitions reject (implicit sink).
struct Nfa {
    std::shared_ptr<const ConcurrentAlphabet> alphabet;
    int numStates = 0;
    int initial = 0;
    std::vector<int> finals; // sorted, unique
    std::vector<Transition> transitions;

    /// Structural validation; throws ValidationError on bad indices.
    void validate() const;

    /// True iff at most one (q, a, ·) transition per (q, a).
    bool deterministic() const;

    bool isFinal(int q) const;

    /// Per-state outgoing adjacency, grouped on demand.
    std::vector<std::vector<Transition>> outgoingBySource() const;

    /// States reached from the initial state by reading w.
    std::vector<int> run(const Word& w) const;

    /// True iff w is accepted verbatim.
    bool accepts(const Word& w) const;
};

/// Unrolled, leveled, pruned copy of an NFA for a fixed word length n.
/// States are dense indices assigned level-major, within a level by the
/// declaration order of the originating states; the transition list is
/// sorted by the fixed total order: lexicographic on (level, source index,
/// letter, target index), so transition index order coincides with the
/// order used by the estimator's set-union step.
struct UnrolledNfa {
    std::shared_ptr<const ConcurrentAlphabet> alphabet;
    int n = 0;
    int numStates = 0;
    int initial = 0;
    int finalState = -1; // merged final at level n; -1 iff the slice is empty
    std::vector<int> level;     // per state
    std::vector<int> origState; // originating NFA state; -1 for the merged final
    std::vector<Transition> transitions;
    std::vector<std::vector<int>> incoming; // transition indices per target, ascending
    std::vector<std::vector<int>> outgoing; // transition indices per source, ascending

    bool empty() const { return finalState < 0; }

    /// States of a given level, ascending.
    std::vector<int> statesAtLevel(int lvl) const;

    /// View of the unrolled automaton as a plain Nfa (single final state).
    Nfa asNfa() const;
};

/// Unrolls A to length n: level-i states recognize exactly L(q) ∩ Σ^i,
/// dead states are pruned in both directions, and all accepting level-n
/// states are merged into one synthetic final.
UnrolledNfa unroll(const Nfa& A, int n);

/// Deterministic automaton accepting exactly the normal-form words.  All
/// retained states are accepting (the language is prefix-closed); the
/// rejecting sink is implicit.  At most 2^|Σ| states.
Nfa nfDfa(std::shared_ptr<const ConcurrentAlphabet> alpha);

/// Product automaton recognizing L(A) ∩ L(D); D must be deterministic.
Nfa product(const Nfa& A, const Nfa& D);

/// DNF formula: terms are consistent sets of literals +v / -v (1-based
/// variable indices, sign is polarity).
struct Dnf {
    int numVars = 0;
    std::vector<std::vector<int>> terms;
};

/// Parses the text format: one term per line, literals "x3" / "!x3"
/// separated by whitespace; blank lines ignored.
Dnf parseDnf(const std::string& text);

/// Model count by exhaustive assignment enumeration (test oracle).
long long countDnfModels(const Dnf& formula);

/// Reduction automaton over Σ = {a,b,0,1,$} with independent pair (a,b):
/// accepts precisely the words a^i b a^(k-i-1) $ α where term i+1 is
/// satisfied by the assignment α ∈ {0,1}^numVars; the number of trace
/// classes of the accepted slice (length k+1+numVars) equals the model
/// count of the formula.
Nfa dnfToDfa(const Dnf& formula);

/// JSON (de)serialization of automata; letter order defines the
/// lexicographic order.  Format:
///   {"alphabet": [...], "independence": [[a,b],...], "states": [...],
///    "initial": s, "finals": [...], "transitions": [[q,a,q'],...]}
Nfa nfaFromJson(const std::string& text);
std::string nfaToJson(const Nfa& A);

} // namespace tracecount

#endif
