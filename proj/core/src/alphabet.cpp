#include "tracecount/alphabet.hpp"

#include "tracecount/errors.hpp"

namespace tracecount {

ConcurrentAlphabet::ConcurrentAlphabet(
    std::vector<std::string> letters,
    const std::vector<std::pair<std::string, std::string>>& independentPairs)
    : letters_(std::move(letters)) {
    if (letters_.empty()) {
        throw ValidationError("alphabet must contain at least one letter");
    }
    if (letters_.size() > 20) {
        throw ValidationError("alphabet too large (at most 20 letters supported)");
    }
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (letters_[i].empty()) {
            throw ValidationError("empty letter name");
        }
        auto [it, inserted] = index_.emplace(letters_[i], static_cast<Symbol>(i));
        if (!inserted) {
            throw ValidationError("duplicate letter: " + letters_[i]);
        }
    }
    const std::size_t k = letters_.size();
    independent_.assign(k, std::vector<bool>(k, false));
    for (const auto& [first, second] : independentPairs) {
        auto lookup = [&](const std::string& name) {
            auto it = index_.find(name);
            if (it == index_.end()) {
                throw ValidationError("unknown letter in independence relation: " + name);
            }
            return static_cast<std::size_t>(it->second);
        };
        const auto a = lookup(first);
        const auto b = lookup(second);
        if (a == b) {
            throw ValidationError("independence relation must be irreflexive: (" + first + "," +
                                  second + ")");
        }
        independent_[a][b] = true;
        independent_[b][a] = true;
    }
    // Exhaustive search for the largest pairwise-independent subset.
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        int members = 0;
        bool ok = true;
        for (std::size_t a = 0; a < k && ok; ++a) {
            if (!(mask >> a & 1u)) {
                continue;
            }
            ++members;
            for (std::size_t b = a + 1; b < k; ++b) {
                if ((mask >> b & 1u) && !independent_[a][b]) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok && members > width_) {
            width_ = members;
        }
    }
}

Symbol ConcurrentAlphabet::symbol(const std::string& letter) const {
    auto it = index_.find(letter);
    if (it == index_.end()) {
        throw ParseError("unknown letter: " + letter);
    }
    return it->second;
}

std::vector<std::pair<Symbol, Symbol>> ConcurrentAlphabet::independentPairs() const {
    std::vector<std::pair<Symbol, Symbol>> pairs;
    for (int a = 0; a < size(); ++a) {
        for (int b = a + 1; b < size(); ++b) {
            if (independent_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) {
                pairs.emplace_back(a, b);
            }
        }
    }
    return pairs;
}

Word ConcurrentAlphabet::parseWord(const std::string& text) const {
    Word w;
    w.reserve(text.size());
    for (char c : text) {
        w.push_back(symbol(std::string(1, c)));
    }
    return w;
}

std::string ConcurrentAlphabet::formatWord(const Word& w) const {
    std::string out;
    for (Symbol s : w) {
        out += letter(s);
    }
    return out;
}

void ConcurrentAlphabet::checkWord(const Word& w) const {
    for (Symbol s : w) {
        checkSymbol(s);
    }
}

void ConcurrentAlphabet::checkSymbol(Symbol s) const {
    if (s < 0 || s >= size()) {
        throw ValidationError("symbol rank out of range");
    }
}

} // namespace tracecount
