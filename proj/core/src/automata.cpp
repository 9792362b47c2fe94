#include "tracecount/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tracecount/errors.hpp"
#include "tracecount/trace_core.hpp"

namespace tracecount {

void Nfa::validate() const {
    if (!alphabet) {
        throw ValidationError("automaton without alphabet");
    }
    if (numStates <= 0) {
        throw ValidationError("automaton must have at least one state");
    }
    auto checkState = [&](int q) {
        if (q < 0 || q >= numStates) {
            throw ValidationError("state index out of range");
        }
    };
    checkState(initial);
    for (int f : finals) {
        checkState(f);
    }
    if (!std::is_sorted(finals.begin(), finals.end()) ||
        std::adjacent_find(finals.begin(), finals.end()) != finals.end()) {
        throw ValidationError("final states must be sorted and unique");
    }
    for (const Transition& t : transitions) {
        checkState(t.from);
        checkState(t.to);
        if (t.sym < 0 || t.sym >= alphabet->size()) {
            throw ValidationError("transition letter out of range");
        }
    }
}

bool Nfa::deterministic() const {
    std::set<std::pair<int, Symbol>> seen;
    for (const Transition& t : transitions) {
        if (!seen.insert({t.from, t.sym}).second) {
            return false;
        }
    }
    return true;
}

bool Nfa::isFinal(int q) const {
    return std::binary_search(finals.begin(), finals.end(), q);
}

std::vector<std::vector<Transition>> Nfa::outgoingBySource() const {
    std::vector<std::vector<Transition>> out(static_cast<std::size_t>(numStates));
    for (const Transition& t : transitions) {
        out[static_cast<std::size_t>(t.from)].push_back(t);
    }
    for (auto& v : out) {
        std::sort(v.begin(), v.end());
    }
    return out;
}

std::vector<int> Nfa::run(const Word& w) const {
    auto out = outgoingBySource();
    std::set<int> cur{initial};
    for (Symbol a : w) {
        std::set<int> next;
        for (int q : cur) {
            for (const Transition& t : out[static_cast<std::size_t>(q)]) {
                if (t.sym == a) {
                    next.insert(t.to);
                }
            }
        }
        cur = std::move(next);
        if (cur.empty()) {
            break;
        }
    }
    return {cur.begin(), cur.end()};
}

bool Nfa::accepts(const Word& w) const {
    for (int q : run(w)) {
        if (isFinal(q)) {
            return true;
        }
    }
    return false;
}

std::vector<int> UnrolledNfa::statesAtLevel(int lvl) const {
    std::vector<int> out;
    for (int q = 0; q < numStates; ++q) {
        if (level[static_cast<std::size_t>(q)] == lvl) {
            out.push_back(q);
        }
    }
    return out;
}

Nfa UnrolledNfa::asNfa() const {
    Nfa out;
    out.alphabet = alphabet;
    out.numStates = std::max(numStates, 1);
    out.initial = initial;
    if (finalState >= 0) {
        out.finals = {finalState};
    }
    out.transitions = transitions;
    return out;
}

UnrolledNfa unroll(const Nfa& A, int n) {
    A.validate();
    if (n < 0) {
        throw ValidationError("unroll length must be nonnegative");
    }
    auto out = A.outgoingBySource();

    // Forward reachability per level.
    std::vector<std::set<int>> reach(static_cast<std::size_t>(n) + 1);
    reach[0].insert(A.initial);
    for (int i = 0; i < n; ++i) {
        for (int q : reach[static_cast<std::size_t>(i)]) {
            for (const Transition& t : out[static_cast<std::size_t>(q)]) {
                reach[static_cast<std::size_t>(i) + 1].insert(t.to);
            }
        }
    }
    // Backward pruning from accepting level-n states.
    std::vector<std::set<int>> live(static_cast<std::size_t>(n) + 1);
    for (int q : reach[static_cast<std::size_t>(n)]) {
        if (A.isFinal(q)) {
            live[static_cast<std::size_t>(n)].insert(q);
        }
    }
    for (int i = n; i-- > 0;) {
        for (int q : reach[static_cast<std::size_t>(i)]) {
            for (const Transition& t : out[static_cast<std::size_t>(q)]) {
                if (live[static_cast<std::size_t>(i) + 1].count(t.to)) {
                    live[static_cast<std::size_t>(i)].insert(q);
                    break;
                }
            }
        }
    }

    UnrolledNfa U;
    U.alphabet = A.alphabet;
    U.n = n;
    if (live[0].empty()) {
        // Empty slice: keep a bare initial state so the structure is usable.
        U.numStates = 1;
        U.initial = 0;
        U.level = {0};
        U.origState = {A.initial};
        U.incoming.assign(1, {});
        U.outgoing.assign(1, {});
        return U;
    }

    // Assign dense indices level-major, within a level by the original
    // declaration order of states.  All accepting level-n states collapse
    // into one merged final.
    std::map<std::pair<int, int>, int> id; // (level, orig state) -> index
    auto addState = [&](int lvl, int orig) {
        int idx = U.numStates++;
        id[{lvl, orig}] = idx;
        U.level.push_back(lvl);
        U.origState.push_back(orig);
        return idx;
    };
    int merged = -1;
    for (int i = 0; i <= n; ++i) {
        if (i == n && n > 0) {
            merged = addState(n, -1);
            break;
        }
        for (int orig : live[static_cast<std::size_t>(i)]) {
            addState(i, orig);
        }
    }
    U.initial = id.at({0, A.initial});
    if (n == 0) {
        // The initial state itself is the accepting slice state.
        merged = U.initial;
    }
    U.finalState = merged;
    for (int i = 0; i < n; ++i) {
        for (int orig : live[static_cast<std::size_t>(i)]) {
            const int srcIdx = id.at({i, orig});
            for (const Transition& t : out[static_cast<std::size_t>(orig)]) {
                if (!live[static_cast<std::size_t>(i) + 1].count(t.to)) {
                    continue;
                }
                const int target = i + 1 == n ? merged : id.at({i + 1, t.to});
                U.transitions.push_back({srcIdx, t.sym, target});
            }
        }
    }

    // Fixed total order: (level of source, source index, letter, target),
    // realized by sorting on (source, letter, target) since sources are
    // indexed in level order; duplicates from final-state merging collapse.
    std::sort(U.transitions.begin(), U.transitions.end());
    U.transitions.erase(std::unique(U.transitions.begin(), U.transitions.end()),
                        U.transitions.end());

    U.incoming.assign(static_cast<std::size_t>(U.numStates), {});
    U.outgoing.assign(static_cast<std::size_t>(U.numStates), {});
    for (std::size_t ti = 0; ti < U.transitions.size(); ++ti) {
        U.incoming[static_cast<std::size_t>(U.transitions[ti].to)].push_back(static_cast<int>(ti));
        U.outgoing[static_cast<std::size_t>(U.transitions[ti].from)].push_back(
            static_cast<int>(ti));
    }
    return U;
}

Nfa nfDfa(std::shared_ptr<const ConcurrentAlphabet> alpha) {
    if (!alpha) {
        throw ValidationError("nfDfa requires an alphabet");
    }
    const int k = alpha->size();
    // State = bitmask of blocked letters; reading b is legal iff b is not
    // blocked; afterwards a is blocked iff it is independent of b and was
    // already blocked or precedes b lexicographically.
    std::map<unsigned, int> id;
    Nfa D;
    D.alphabet = alpha;
    std::deque<unsigned> frontier;
    auto addState = [&](unsigned mask) {
        auto it = id.find(mask);
        if (it != id.end()) {
            return it->second;
        }
        int idx = D.numStates++;
        id[mask] = idx;
        frontier.push_back(mask);
        return idx;
    };
    D.initial = addState(0u);
    while (!frontier.empty()) {
        unsigned mask = frontier.front();
        frontier.pop_front();
        int src = id[mask];
        for (Symbol b = 0; b < k; ++b) {
            if (mask >> b & 1u) {
                continue; // blocked: would leave the normal-form language
            }
            unsigned next = 0;
            for (Symbol a = 0; a < k; ++a) {
                bool blocked;
                if (alpha->isDependent(a, b)) {
                    blocked = false;
                } else {
                    blocked = (mask >> a & 1u) || a < b;
                }
                if (blocked) {
                    next |= 1u << a;
                }
            }
            D.transitions.push_back({src, b, addState(next)});
        }
    }
    D.finals.resize(static_cast<std::size_t>(D.numStates));
    for (int q = 0; q < D.numStates; ++q) {
        D.finals[static_cast<std::size_t>(q)] = q;
    }
    std::sort(D.transitions.begin(), D.transitions.end());
    return D;
}

Nfa product(const Nfa& A, const Nfa& D) {
    A.validate();
    D.validate();
    if (A.alphabet->size() != D.alphabet->size()) {
        throw ValidationError("product requires matching alphabets");
    }
    if (!D.deterministic()) {
        throw ValidationError("product requires a deterministic second automaton");
    }
    auto outA = A.outgoingBySource();
    // Deterministic successor lookup for D.
    std::map<std::pair<int, Symbol>, int> stepD;
    for (const Transition& t : D.transitions) {
        stepD[{t.from, t.sym}] = t.to;
    }

    Nfa P;
    P.alphabet = A.alphabet;
    std::map<std::pair<int, int>, int> id;
    std::deque<std::pair<int, int>> frontier;
    auto addState = [&](std::pair<int, int> pq) {
        auto it = id.find(pq);
        if (it != id.end()) {
            return it->second;
        }
        int idx = P.numStates++;
        id[pq] = idx;
        frontier.push_back(pq);
        if (A.isFinal(pq.first) && D.isFinal(pq.second)) {
            P.finals.push_back(idx);
        }
        return idx;
    };
    P.initial = addState({A.initial, D.initial});
    while (!frontier.empty()) {
        auto [p, q] = frontier.front();
        frontier.pop_front();
        int src = id[{p, q}];
        for (const Transition& t : outA[static_cast<std::size_t>(p)]) {
            auto it = stepD.find({q, t.sym});
            if (it == stepD.end()) {
                continue; // implicit rejecting sink of D
            }
            P.transitions.push_back({src, t.sym, addState({t.to, it->second})});
        }
    }
    std::sort(P.finals.begin(), P.finals.end());
    std::sort(P.transitions.begin(), P.transitions.end());
    P.transitions.erase(std::unique(P.transitions.begin(), P.transitions.end()),
                        P.transitions.end());
    return P;
}

Dnf parseDnf(const std::string& text) {
    Dnf formula;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream tokens(line);
        std::vector<int> term;
        std::string tok;
        while (tokens >> tok) {
            bool negated = false;
            std::string body = tok;
            if (!body.empty() && body[0] == '!') {
                negated = true;
                body = body.substr(1);
            }
            if (body.size() < 2 || body[0] != 'x') {
                throw ParseError("malformed DNF literal: " + tok);
            }
            int var = 0;
            for (std::size_t i = 1; i < body.size(); ++i) {
                if (body[i] < '0' || body[i] > '9') {
                    throw ParseError("malformed DNF literal: " + tok);
                }
                var = var * 10 + (body[i] - '0');
            }
            if (var < 1) {
                throw ParseError("DNF variables are 1-based: " + tok);
            }
            term.push_back(negated ? -var : var);
            formula.numVars = std::max(formula.numVars, var);
        }
        if (!term.empty()) {
            // Consistency: a term may not contain x and !x.
            std::set<int> lits(term.begin(), term.end());
            for (int lit : lits) {
                if (lits.count(-lit)) {
                    throw ParseError("contradictory DNF term");
                }
            }
            formula.terms.push_back({lits.begin(), lits.end()});
        }
    }
    if (formula.terms.empty() || formula.numVars < 1) {
        throw ParseError("DNF must have at least one term over at least one variable");
    }
    return formula;
}

long long countDnfModels(const Dnf& formula) {
    long long models = 0;
    for (unsigned assignment = 0; assignment < (1u << formula.numVars); ++assignment) {
        bool sat = false;
        for (const auto& term : formula.terms) {
            bool ok = true;
            for (int lit : term) {
                int var = lit > 0 ? lit : -lit;
                bool value = assignment >> (var - 1) & 1u;
                if (value != (lit > 0)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                sat = true;
                break;
            }
        }
        if (sat) {
            ++models;
        }
    }
    return models;
}

Nfa dnfToDfa(const Dnf& formula) {
    if (formula.terms.empty() || formula.numVars < 1) {
        throw ValidationError("DNF must have at least one term over at least one variable");
    }
    if (formula.numVars > 20) {
        throw ValidationError("too many DNF variables");
    }
    auto alpha = std::make_shared<ConcurrentAlphabet>(
        std::vector<std::string>{"a", "b", "0", "1", "$"},
        std::vector<std::pair<std::string, std::string>>{{"a", "b"}});
    const Symbol symA = 0, symB = 1, symZero = 2, symOne = 3, symDollar = 4;
    const int k = static_cast<int>(formula.terms.size());
    const int nv = formula.numVars;

    Nfa D;
    D.alphabet = alpha;
    // Selector block: q_0..q_{k-1} count leading a's; reading b at q_i picks
    // term i+1, then a's pad to length k, then $ enters the term's
    // assignment checker: per variable position, branch on the letters the
    // term allows.
    // Layout: selector states 0..k-1; for each term i: pad states then a
    // chain of nv+1 checker states.
    std::vector<int> padStart(static_cast<std::size_t>(k));
    int next = k;
    // After reading a^i b, we must read a^(k-i-1) then $: states
    // pad(i, j) for j remaining a's.
    std::vector<std::vector<int>> pad(static_cast<std::size_t>(k));
    std::vector<std::vector<int>> check(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        for (int j = k - i - 1; j >= 0; --j) {
            pad[static_cast<std::size_t>(i)].push_back(next++);
        }
        for (int l = 0; l <= nv; ++l) {
            check[static_cast<std::size_t>(i)].push_back(next++);
        }
    }
    D.numStates = next;
    D.initial = 0;
    for (int i = 0; i + 1 < k; ++i) {
        D.transitions.push_back({i, symA, i + 1});
    }
    for (int i = 0; i < k; ++i) {
        // b selects term i+1 (read after i leading a's).
        D.transitions.push_back({i, symB, pad[static_cast<std::size_t>(i)][0]});
        // remaining a's: pad chain of length k-i-1, then $.
        auto& padStates = pad[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j + 1 < padStates.size(); ++j) {
            D.transitions.push_back({padStates[j], symA, padStates[j + 1]});
        }
        auto& checkStates = check[static_cast<std::size_t>(i)];
        D.transitions.push_back({padStates.back(), symDollar, checkStates[0]});
        // assignment: variable l must match the term's literal, or branches
        // freely when the term does not mention it.
        const auto& term = formula.terms[static_cast<std::size_t>(i)];
        for (int l = 1; l <= nv; ++l) {
            bool positive = std::find(term.begin(), term.end(), l) != term.end();
            bool negative = std::find(term.begin(), term.end(), -l) != term.end();
            if (!negative) {
                D.transitions.push_back(
                    {checkStates[static_cast<std::size_t>(l - 1)], symOne,
                     checkStates[static_cast<std::size_t>(l)]});
            }
            if (!positive) {
                D.transitions.push_back(
                    {checkStates[static_cast<std::size_t>(l - 1)], symZero,
                     checkStates[static_cast<std::size_t>(l)]});
            }
        }
        D.finals.push_back(checkStates.back());
    }
    std::sort(D.finals.begin(), D.finals.end());
    std::sort(D.transitions.begin(), D.transitions.end());
    D.validate();
    return D;
}

Nfa nfaFromJson(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid automaton JSON: ") + e.what());
    }
    try {
        std::vector<std::string> letters = doc.at("alphabet").get<std::vector<std::string>>();
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& entry : doc.at("independence")) {
            if (!entry.is_array() || entry.size() != 2) {
                throw ParseError("independence entries must be pairs");
            }
            pairs.emplace_back(entry[0].get<std::string>(), entry[1].get<std::string>());
        }
        auto alpha = std::make_shared<ConcurrentAlphabet>(letters, pairs);

        std::vector<std::string> stateNames = doc.at("states").get<std::vector<std::string>>();
        std::map<std::string, int> stateId;
        for (std::size_t i = 0; i < stateNames.size(); ++i) {
            if (!stateId.emplace(stateNames[i], static_cast<int>(i)).second) {
                throw ValidationError("duplicate state name: " + stateNames[i]);
            }
        }
        auto lookup = [&](const std::string& name) {
            auto it = stateId.find(name);
            if (it == stateId.end()) {
                throw ValidationError("unknown state: " + name);
            }
            return it->second;
        };

        Nfa A;
        A.alphabet = alpha;
        A.numStates = static_cast<int>(stateNames.size());
        A.initial = lookup(doc.at("initial").get<std::string>());
        for (const auto& f : doc.at("finals")) {
            A.finals.push_back(lookup(f.get<std::string>()));
        }
        std::sort(A.finals.begin(), A.finals.end());
        A.finals.erase(std::unique(A.finals.begin(), A.finals.end()), A.finals.end());
        for (const auto& entry : doc.at("transitions")) {
            if (!entry.is_array() || entry.size() != 3) {
                throw ParseError("transitions must be [state, letter, state] triples");
            }
            A.transitions.push_back({lookup(entry[0].get<std::string>()),
                                     alpha->symbol(entry[1].get<std::string>()),
                                     lookup(entry[2].get<std::string>())});
        }
        std::sort(A.transitions.begin(), A.transitions.end());
        A.transitions.erase(std::unique(A.transitions.begin(), A.transitions.end()),
                            A.transitions.end());
        A.validate();
        return A;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid automaton JSON: ") + e.what());
    }
}

std::string nfaToJson(const Nfa& A) {
    A.validate();
    nlohmann::json doc;
    doc["alphabet"] = nlohmann::json::array();
    for (int s = 0; s < A.alphabet->size(); ++s) {
        doc["alphabet"].push_back(A.alphabet->letter(s));
    }
    doc["independence"] = nlohmann::json::array();
    for (auto [a, b] : A.alphabet->independentPairs()) {
        doc["independence"].push_back({A.alphabet->letter(a), A.alphabet->letter(b)});
        doc["independence"].push_back({A.alphabet->letter(b), A.alphabet->letter(a)});
    }
    auto stateName = [](int q) { return "q" + std::to_string(q); };
    doc["states"] = nlohmann::json::array();
    for (int q = 0; q < A.numStates; ++q) {
        doc["states"].push_back(stateName(q));
    }
    doc["initial"] = stateName(A.initial);
    doc["finals"] = nlohmann::json::array();
    for (int f : A.finals) {
        doc["finals"].push_back(stateName(f));
    }
    doc["transitions"] = nlohmann::json::array();
    for (const Transition& t : A.transitions) {
        doc["transitions"].push_back(
            {stateName(t.from), A.alphabet->letter(t.sym), stateName(t.to)});
    }
    return doc.dump(2);
}

} // namespace tracecount
