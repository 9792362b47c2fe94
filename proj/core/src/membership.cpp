#include "tracecount/membership.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "tracecount/errors.hpp"
#include "tracecount/trace_core.hpp"

namespace tracecount {

namespace {

/// Shared BFS over (state, per-letter counts).  `forEachStep(state, fn)`
/// enumerates outgoing transitions; `isTarget(state)` tests the goal states
/// among which the full-count configuration must be reached.
template <typename ForEachStep, typename IsTarget>
bool memberCore(const ConcurrentAlphabet& alpha, const Word& w, int numStates, int initial,
                ForEachStep&& forEachStep, IsTarget&& isTarget, MemberStats* stats) {
    alpha.checkWord(w);
    const int k = alpha.size();
    std::vector<int> total(static_cast<std::size_t>(k), 0);
    for (Symbol a : w) {
        ++total[static_cast<std::size_t>(a)];
    }
    // Covering predecessors of each occurrence (a,i), from the trace order.
    TraceOrderDag dag = traceOrder(alpha, w);
    // preds[a][i-1] = list of (b, j) that must be consumed before the i-th a.
    std::vector<std::vector<std::vector<LabelledIndex>>> preds(static_cast<std::size_t>(k));
    for (Symbol a = 0; a < k; ++a) {
        preds[static_cast<std::size_t>(a)].resize(
            static_cast<std::size_t>(total[static_cast<std::size_t>(a)]));
    }
    for (const auto& [from, to] : dag.covers) {
        preds[static_cast<std::size_t>(to.first)][static_cast<std::size_t>(to.second) - 1]
            .push_back(from);
    }

    // Dense encoding of (state, counts) configurations.
    std::uint64_t radix = static_cast<std::uint64_t>(numStates);
    std::vector<std::uint64_t> stride(static_cast<std::size_t>(k));
    for (Symbol a = 0; a < k; ++a) {
        stride[static_cast<std::size_t>(a)] = radix;
        radix *= static_cast<std::uint64_t>(total[static_cast<std::size_t>(a)]) + 1;
    }
    auto encode = [&](int state, const std::vector<int>& counts) {
        std::uint64_t key = static_cast<std::uint64_t>(state);
        for (Symbol a = 0; a < k; ++a) {
            key += stride[static_cast<std::size_t>(a)] *
                   static_cast<std::uint64_t>(counts[static_cast<std::size_t>(a)]);
        }
        return key;
    };

    struct Config {
        int state;
        std::vector<int> counts;
    };
    std::deque<Config> frontier;
    std::unordered_set<std::uint64_t> visited;
    Config start{initial, std::vector<int>(static_cast<std::size_t>(k), 0)};
    visited.insert(encode(start.state, start.counts));
    const std::size_t n = w.size();
    auto isFull = [&](const Config& c) {
        return std::accumulate(c.counts.begin(), c.counts.end(), std::size_t{0},
                               [](std::size_t acc, int v) { return acc + static_cast<std::size_t>(v); }) == n;
    };
    if (isFull(start) && isTarget(start.state)) {
        if (stats) {
            stats->visitedConfigs = 1;
        }
        return true;
    }
    frontier.push_back(std::move(start));
    bool found = false;
    while (!frontier.empty() && !found) {
        Config cur = std::move(frontier.front());
        frontier.pop_front();
        forEachStep(cur.state, [&](Symbol a, int target) {
            if (found) {
                return;
            }
            int next = cur.counts[static_cast<std::size_t>(a)] + 1;
            if (next > total[static_cast<std::size_t>(a)]) {
                return;
            }
            // Downward-closure: every covering predecessor of (a, next) must
            // already be consumed.
            for (const auto& [b, j] : preds[static_cast<std::size_t>(a)]
                                           [static_cast<std::size_t>(next) - 1]) {
                if (j > cur.counts[static_cast<std::size_t>(b)]) {
                    return;
                }
            }
            Config succ{target, cur.counts};
            ++succ.counts[static_cast<std::size_t>(a)];
            if (!visited.insert(encode(succ.state, succ.counts)).second) {
                return;
            }
            if (isFull(succ) && isTarget(succ.state)) {
                found = true;
                return;
            }
            frontier.push_back(std::move(succ));
        });
    }
    if (stats) {
        stats->visitedConfigs = static_cast<long long>(visited.size());
    }
    return found;
}

} // namespace

bool member(const Nfa& A, int q, const Word& w, MemberStats* stats) {
    A.validate();
    if (q < 0 || q >= A.numStates) {
        throw ValidationError("member: state index out of range");
    }
    auto out = A.outgoingBySource();
    return memberCore(
        *A.alphabet, w, A.numStates, A.initial,
        [&](int state, auto&& fn) {
            for (const Transition& t : out[static_cast<std::size_t>(state)]) {
                fn(t.sym, t.to);
            }
        },
        [&](int state) { return state == q; }, stats);
}

bool memberUnrolled(const UnrolledNfa& U, int q, const Word& w,
                    const std::vector<bool>& removed, MemberStats* stats) {
    if (q < 0 || q >= U.numStates) {
        throw ValidationError("member: state index out of range");
    }
    return memberCore(
        *U.alphabet, w, U.numStates, U.initial,
        [&](int state, auto&& fn) {
            for (int ti : U.outgoing[static_cast<std::size_t>(state)]) {
                if (static_cast<std::size_t>(ti) < removed.size() &&
                    removed[static_cast<std::size_t>(ti)]) {
                    continue;
                }
                const Transition& t = U.transitions[static_cast<std::size_t>(ti)];
                fn(t.sym, t.to);
            }
        },
        [&](int state) { return state == q; }, stats);
}

bool memberAccepted(const Nfa& A, const Word& w, MemberStats* stats) {
    A.validate();
    auto out = A.outgoingBySource();
    return memberCore(
        *A.alphabet, w, A.numStates, A.initial,
        [&](int state, auto&& fn) {
            for (const Transition& t : out[static_cast<std::size_t>(state)]) {
                fn(t.sym, t.to);
            }
        },
        [&](int state) { return A.isFinal(state); }, stats);
}

} // namespace tracecount
