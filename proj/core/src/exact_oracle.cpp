#include "tracecount/exact_oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "tracecount/errors.hpp"
#include "tracecount/membership.hpp"
#include "tracecount/trace_core.hpp"

namespace tracecount {

namespace {

void charge(long long& spent, const ExactBudget& budget) {
    if (++spent > budget.maxWords) {
        throw BudgetError("exact-count enumeration guard exceeded");
    }
}

} // namespace

long long countExactNf(const Nfa& A, int n, const ExactBudget& budget) {
    A.validate();
    if (n < 0) {
        throw ValidationError("slice length must be nonnegative");
    }
    Nfa D = nfDfa(A.alphabet);
    auto out = D.outgoingBySource();
    long long spent = 0;
    long long count = 0;
    Word prefix;
    // DFS over normal-form words of length n; every state of D is live and
    // accepting, so every path is a normal form.
    std::function<void(int)> dfs = [&](int state) {
        charge(spent, budget);
        if (static_cast<int>(prefix.size()) == n) {
            if (memberAccepted(A, prefix)) {
                ++count;
            }
            return;
        }
        for (const Transition& t : out[static_cast<std::size_t>(state)]) {
            prefix.push_back(t.sym);
            dfs(t.to);
            prefix.pop_back();
        }
    };
    dfs(D.initial);
    return count;
}

long long countExactEnum(const Nfa& A, int n, const ExactBudget& budget) {
    A.validate();
    if (n < 0) {
        throw ValidationError("slice length must be nonnegative");
    }
    UnrolledNfa U = unroll(A, n);
    if (U.empty()) {
        return 0;
    }
    long long spent = 0;
    std::set<Word> normalForms;
    Word prefix;
    // DFS over distinct slice words: on-the-fly subset construction over the
    // unrolled states.
    std::function<void(const std::set<int>&)> dfs = [&](const std::set<int>& states) {
        charge(spent, budget);
        if (static_cast<int>(prefix.size()) == n) {
            // Pruning guarantees every surviving subset contains the final.
            normalForms.insert(normalForm(*A.alphabet, prefix));
            return;
        }
        std::map<Symbol, std::set<int>> successors;
        for (int q : states) {
            for (int ti : U.outgoing[static_cast<std::size_t>(q)]) {
                const Transition& t = U.transitions[static_cast<std::size_t>(ti)];
                successors[t.sym].insert(t.to);
            }
        }
        for (const auto& [sym, next] : successors) {
            prefix.push_back(sym);
            dfs(next);
            prefix.pop_back();
        }
    };
    dfs({U.initial});
    return static_cast<long long>(normalForms.size());
}

CanonicalRun canonicalRun(const UnrolledNfa& U, const Word& rep, int q) {
    if (q < 0 || q >= U.numStates) {
        throw ValidationError("canonicalRun: state index out of range");
    }
    if (static_cast<int>(rep.size()) != U.level[static_cast<std::size_t>(q)]) {
        throw ValidationError("canonicalRun: trace length does not match the state's level");
    }
    const ConcurrentAlphabet& alpha = *U.alphabet;

    // Reachability of a specific word to a specific state.
    auto reaches = [&](const Word& w, int target) {
        std::set<int> cur{U.initial};
        for (Symbol a : w) {
            std::set<int> next;
            for (int state : cur) {
                for (int ti : U.outgoing[static_cast<std::size_t>(state)]) {
                    const Transition& t = U.transitions[static_cast<std::size_t>(ti)];
                    if (t.sym == a) {
                        next.insert(t.to);
                    }
                }
            }
            cur = std::move(next);
            if (cur.empty()) {
                return false;
            }
        }
        return cur.count(target) > 0;
    };

    CanonicalRun result;
    std::function<void(int, const Word&)> build = [&](int state, const Word& traceRep) {
        if (traceRep.empty()) {
            if (state != U.initial) {
                throw ValidationError("canonicalRun: empty trace at a non-initial state");
            }
            return;
        }
        std::set<Word> cls = enumerateClass(alpha, traceRep);
        for (int ti : U.incoming[static_cast<std::size_t>(state)]) {
            const Transition& t = U.transitions[static_cast<std::size_t>(ti)];
            // {v in L(t.from) : v·sym in the trace}: candidates are the class
            // members ending with the transition letter, stripped of it.
            Word best;
            bool found = false;
            for (const Word& w : cls) {
                if (w.back() != t.sym) {
                    continue;
                }
                Word v(w.begin(), w.end() - 1);
                if (reaches(v, t.from) && (!found || v < best)) {
                    best = v;
                    found = true;
                }
            }
            if (found) {
                build(t.from, best);
                result.transitionIdx.push_back(ti);
                result.word.push_back(t.sym);
                return;
            }
        }
        throw ValidationError("canonicalRun: trace does not intersect the state's language");
    };
    build(q, rep);
    return result;
}

} // namespace tracecount
