#include "tracecount/trace_core.hpp"

#include <algorithm>
#include <deque>

#include "tracecount/errors.hpp"

namespace tracecount {

TraceOrderDag traceOrder(const ConcurrentAlphabet& alpha, const Word& w) {
    alpha.checkWord(w);
    const std::size_t l = w.size();
    TraceOrderDag dag;
    dag.occurrences.assign(static_cast<std::size_t>(alpha.size()), 0);
    std::vector<int> occ(l);
    for (std::size_t p = 0; p < l; ++p) {
        occ[p] = ++dag.occurrences[static_cast<std::size_t>(w[p])];
    }
    // Full order: transitive closure of dependent position pairs.
    std::vector<std::vector<bool>> before(l, std::vector<bool>(l, false));
    for (std::size_t p = 0; p < l; ++p) {
        for (std::size_t q = p + 1; q < l; ++q) {
            if (alpha.isDependent(w[p], w[q])) {
                before[p][q] = true;
            }
        }
    }
    for (std::size_t m = 0; m < l; ++m) {
        for (std::size_t p = 0; p < m; ++p) {
            if (before[p][m]) {
                for (std::size_t q = m + 1; q < l; ++q) {
                    if (before[m][q]) {
                        before[p][q] = true;
                    }
                }
            }
        }
    }
    // Covering edges: p -> q with no intermediate m on a path.
    for (std::size_t p = 0; p < l; ++p) {
        for (std::size_t q = p + 1; q < l; ++q) {
            if (!before[p][q]) {
                continue;
            }
            bool covering = true;
            for (std::size_t m = p + 1; m < q && covering; ++m) {
                if (before[p][m] && before[m][q]) {
                    covering = false;
                }
            }
            if (covering) {
                dag.covers.insert({{w[p], occ[p]}, {w[q], occ[q]}});
            }
        }
    }
    return dag;
}

bool equivalent(const ConcurrentAlphabet& alpha, const Word& w1, const Word& w2) {
    if (w1.size() != w2.size()) {
        alpha.checkWord(w1);
        alpha.checkWord(w2);
        return false;
    }
    return traceOrder(alpha, w1) == traceOrder(alpha, w2);
}

std::pair<Word, std::size_t> insertLetter(const ConcurrentAlphabet& alpha, const Word& nfw,
                                          Symbol a) {
    alpha.checkWord(nfw);
    alpha.checkWord(Word{a});
    // The letter may move left only past independent letters: find the last
    // dependent position; insertion must happen strictly after it.
    std::size_t barrier = 0; // insertion index lower bound
    for (std::size_t p = nfw.size(); p-- > 0;) {
        if (alpha.isDependent(nfw[p], a)) {
            barrier = p + 1;
            break;
        }
    }
    // Among legal positions, the first letter strictly greater than `a`
    // marks the lexicographically least insertion point; otherwise append.
    std::size_t pos = nfw.size();
    for (std::size_t p = barrier; p < nfw.size(); ++p) {
        if (a < nfw[p]) {
            pos = p;
            break;
        }
    }
    Word out(nfw);
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), a);
    return {out, pos};
}

Word normalForm(const ConcurrentAlphabet& alpha, const Word& w) {
    Word nf;
    nf.reserve(w.size());
    for (Symbol a : w) {
        nf = insertLetter(alpha, nf, a).first;
    }
    return nf;
}

std::set<Word> enumerateClass(const ConcurrentAlphabet& alpha, const Word& w,
                              std::size_t maxLen) {
    alpha.checkWord(w);
    if (w.size() > maxLen) {
        throw BudgetError("enumerateClass length guard exceeded");
    }
    std::set<Word> seen{w};
    std::deque<Word> frontier{w};
    while (!frontier.empty()) {
        Word cur = std::move(frontier.front());
        frontier.pop_front();
        for (std::size_t p = 0; p + 1 < cur.size(); ++p) {
            if (alpha.isIndependent(cur[p], cur[p + 1])) {
                Word next(cur);
                std::swap(next[p], next[p + 1]);
                if (seen.insert(next).second) {
                    frontier.push_back(next);
                }
            }
        }
    }
    return seen;
}

std::set<Word> concatTraces(const ConcurrentAlphabet& alpha, const std::set<Word>& t1,
                            const std::set<Word>& t2, std::size_t maxLen) {
    if (t1.empty() || t2.empty()) {
        throw ValidationError("concatTraces requires nonempty classes");
    }
    Word joined(*t1.begin());
    joined.insert(joined.end(), t2.begin()->begin(), t2.begin()->end());
    return enumerateClass(alpha, joined, maxLen);
}

} // namespace tracecount
