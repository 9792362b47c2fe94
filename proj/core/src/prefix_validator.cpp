#include "tracecount/prefix_validator.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "tracecount/errors.hpp"

namespace tracecount {

namespace {

/// Full (strict) trace order of w over labelled indices.
std::set<std::pair<LabelledIndex, LabelledIndex>> fullOrder(const ConcurrentAlphabet& alpha,
                                                            const Word& w) {
    const std::size_t l = w.size();
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
    std::vector<int> occSeen(static_cast<std::size_t>(alpha.size()), 0);
    std::vector<LabelledIndex> label(l);
    for (std::size_t p = 0; p < l; ++p) {
        label[p] = {w[p], ++occSeen[static_cast<std::size_t>(w[p])]};
    }
    std::set<std::pair<LabelledIndex, LabelledIndex>> order;
    for (std::size_t p = 0; p < l; ++p) {
        for (std::size_t q = p + 1; q < l; ++q) {
            if (before[p][q]) {
                order.insert({label[p], label[q]});
            }
        }
    }
    return order;
}

std::vector<int> letterCounts(const ConcurrentAlphabet& alpha, const Word& w) {
    std::vector<int> counts(static_cast<std::size_t>(alpha.size()), 0);
    for (Symbol a : w) {
        ++counts[static_cast<std::size_t>(a)];
    }
    return counts;
}

} // namespace

bool isDagPrefix(const ConcurrentAlphabet& alpha, const Word& uPrime, const Word& u) {
    alpha.checkWord(uPrime);
    alpha.checkWord(u);
    auto cPrime = letterCounts(alpha, uPrime);
    auto cU = letterCounts(alpha, u);
    for (int a = 0; a < alpha.size(); ++a) {
        if (cPrime[static_cast<std::size_t>(a)] > cU[static_cast<std::size_t>(a)]) {
            return false;
        }
    }
    auto inPrime = [&](const LabelledIndex& v) {
        return v.second <= cPrime[static_cast<std::size_t>(v.first)];
    };
    auto orderU = fullOrder(alpha, u);
    auto orderPrime = fullOrder(alpha, uPrime);
    // Downward closure and order containment: every u-order edge into a
    // retained vertex must come from a retained vertex with the same edge.
    for (const auto& edge : orderU) {
        if (inPrime(edge.second)) {
            if (!inPrime(edge.first) || !orderPrime.count(edge)) {
                return false;
            }
        }
    }
    // Conversely the restricted order may not invent edges.
    for (const auto& edge : orderPrime) {
        if (!orderU.count(edge)) {
            return false;
        }
    }
    return true;
}

std::set<LabelledIndex> border(const ConcurrentAlphabet& alpha, const Word& uPrime,
                               const Word& u) {
    if (!isDagPrefix(alpha, uPrime, u)) {
        throw ValidationError("border requires a dag-prefix");
    }
    auto cPrime = letterCounts(alpha, uPrime);
    auto cU = letterCounts(alpha, u);
    std::set<LabelledIndex> out;
    for (Symbol b = 0; b < alpha.size(); ++b) {
        int j = cPrime[static_cast<std::size_t>(b)] + 1;
        if (j > cU[static_cast<std::size_t>(b)]) {
            continue;
        }
        Word extended(uPrime);
        extended.push_back(b);
        if (isDagPrefix(alpha, extended, u)) {
            out.insert({b, j});
        }
    }
    return out;
}

std::pair<Word, Word> uPrefixResidual(const ConcurrentAlphabet& alpha, const Word& u,
                                      const Word& x) {
    if (normalForm(alpha, x) != x) {
        throw ValidationError("uPrefixResidual requires a normal-form word");
    }
    for (std::size_t len = x.size() + 1; len-- > 0;) {
        Word prefix(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(len));
        if (isDagPrefix(alpha, prefix, u)) {
            return {prefix, Word(x.begin() + static_cast<std::ptrdiff_t>(len), x.end())};
        }
    }
    return {{}, x}; // unreachable: the empty prefix always qualifies
}

PrefixValidator buildPrefixValidator(std::shared_ptr<const ConcurrentAlphabet> alpha,
                                     const Word& u) {
    if (!alpha) {
        throw ValidationError("buildPrefixValidator requires an alphabet");
    }
    if (normalForm(*alpha, u) != u) {
        throw ValidationError("prefix-validator target word must be in normal form");
    }
    const int k = alpha->size();

    PrefixValidator pv;
    pv.dfa.alphabet = alpha;
    using Key = std::tuple<Word, Symbol, std::set<Symbol>>;
    std::map<Key, int> id;
    std::deque<Key> frontier;
    auto addState = [&](const Key& key) {
        auto it = id.find(key);
        if (it != id.end()) {
            return it->second;
        }
        int idx = pv.dfa.numStates++;
        id.emplace(key, idx);
        pv.states.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key)});
        if (std::get<0>(key) == u) {
            pv.dfa.finals.push_back(idx);
        }
        frontier.push_back(key);
        if (pv.dfa.numStates > 1'000'000) {
            throw BudgetError("prefix-validator state budget exceeded");
        }
        return idx;
    };
    pv.dfa.initial = addState({Word{}, Symbol{-1}, {}});

    while (!frontier.empty()) {
        Key cur = frontier.front();
        frontier.pop_front();
        const int src = id[cur];
        const auto& [uPrefix, firstRes, resLetters] = cur;
        for (Symbol a = 0; a < k; ++a) {
            Key next;
            bool blocked = false;
            for (Symbol c : resLetters) {
                if (alpha->isDependent(a, c)) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) {
                auto letters = resLetters;
                letters.insert(a);
                next = {uPrefix, firstRes, std::move(letters)};
            } else {
                Word nfua = insertLetter(*alpha, uPrefix, a).first;
                Word plainAppend(uPrefix);
                plainAppend.push_back(a);
                if (nfua != plainAppend || firstRes < 0 || a < firstRes) {
                    // The letter merges into (or slides under) the committed
                    // prefix: recompute the split of the new normal form.
                    auto [committed, residual] = uPrefixResidual(*alpha, u, nfua);
                    Symbol b = residual.empty() ? firstRes : residual.front();
                    auto letters = resLetters;
                    for (Symbol s : residual) {
                        letters.insert(s);
                    }
                    next = {std::move(committed), b, std::move(letters)};
                } else {
                    // firstRes < a: the letter lands behind the residual head
                    // and can never join the committed prefix.
                    auto letters = resLetters;
                    letters.insert(a);
                    next = {uPrefix, firstRes, std::move(letters)};
                }
            }
            pv.dfa.transitions.push_back({src, a, addState(next)});
        }
    }
    std::sort(pv.dfa.finals.begin(), pv.dfa.finals.end());
    std::sort(pv.dfa.transitions.begin(), pv.dfa.transitions.end());
    pv.dfa.validate();
    return pv;
}

} // namespace tracecount
