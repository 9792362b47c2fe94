#ifndef TRACECOUNT_ALPHABET_HPP
#define TRACECOUNT_ALPHABET_HPP

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tracecount {

/// Letter of a concurrent alphabet, identified by its rank in the
/// lexicographic order (declaration order of the input file).
using Symbol = int;

/// Word over a concurrent alphabet, as a sequence of symbol ranks.
using Word = std::vector<Symbol>;

/// Alphabet with a total lexicographic order on letters plus a symmetric,
/// irreflexive independence relation.  Immutable after construction.
class ConcurrentAlphabet {
  public:
    /// Builds the alphabet; `independentPairs` lists unordered independent
    /// pairs by letter name (either or both orientations may be given).
    /// Throws ValidationError on duplicate letters, unknown letters in the
    /// relation, or a reflexive pair.
    ConcurrentAlphabet(std::vector<std::string> letters,
                       const std::vector<std::pair<std::string, std::string>>& independentPairs);

    int size() const { return static_cast<int>(letters_.size()); }

    /// Rank of a letter name; throws ParseError on unknown letters.
    Symbol symbol(const std::string& letter) const;

    const std::string& letter(Symbol s) const { return letters_.at(static_cast<std::size_t>(s)); }

    bool isIndependent(Symbol a, Symbol b) const {
        checkSymbol(a);
        checkSymbol(b);
        return independent_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }

    bool isDependent(Symbol a, Symbol b) const { return !isIndependent(a, b); }

    /// Size of the largest pairwise-independent subset of letters, computed
    /// by exhaustive subset search at construction.
    int width() const { return width_; }

    /// All unordered independent pairs (a < b), in lexicographic order.
    std::vector<std::pair<Symbol, Symbol>> independentPairs() const;

    /// Parses a word given as a concatenation of single-character letter
    /// names; throws ParseError if some letter has a multi-character name or
    /// a character is not a letter of the alphabet.
    Word parseWord(const std::string& text) const;

    std::string formatWord(const Word& w) const;

    /// Validates that every symbol of w is a letter rank; throws otherwise.
    void checkWord(const Word& w) const;

  private:
    void checkSymbol(Symbol s) const;

    std::vector<std::string> letters_;
    std::unordered_map<std::string, Symbol> index_;
    std::vector<std::vector<bool>> independent_;
    int width_ = 0;
};

} // namespace tracecount

#endif
