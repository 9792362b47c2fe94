#ifndef TRACECOUNT_FPRAS_HPP
#define TRACECOUNT_FPRAS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tracecount/automata.hpp"
#include "tracecount/rational.hpp"
#include "tracecount/rng.hpp"

namespace tracecount {

/// Optional replacements for the derived estimator parameters (testing).
struct FprasOverrides {
    std::optional<long long> beta;
    std::optional<long long> gamma;
    std::optional<long long> xi;
    std::optional<Rational> theta;
};

/// Estimator parameters.  Defaults:
///   beta  = ceil(8·w·n^(w+1)·(1+eps)·eps^-2)   (w = alphabet width)
///   gamma = ceil(2·ln(16·|Q^u|)), clamped to >= 1
///   alpha = beta·gamma
///   xi    = ceil(8·ln(1/delta))
///   theta = 16·alpha·(1-eps)^-1·|Q^u|
struct FprasParams {
    Rational epsilon;
    Rational delta;
    long long beta = 1;
    long long gamma = 1;
    long long alpha = 1;
    long long xi = 1;
    Rational theta;
    int n = 0;
    int width = 1;
    long long unrolledStates = 1;

    static FprasParams compute(const Rational& epsilon, const Rational& delta, int n, int width,
                               long long unrolledStates, const FprasOverrides& overrides = {});
};

/// Partition xs into consecutive batches of size beta, take each batch's
/// arithmetic mean, return the (lower) median of the batch means.
/// Throws ValidationError unless beta divides |xs|.
Rational medianOfMeans(long long beta, const std::vector<Rational>& xs);

/// Integer-input overload (sample-set sizes); identical result, no
/// per-element rational arithmetic.
Rational medianOfMeans(long long beta, const std::vector<long long>& xs);

/// Keeps each element independently with exact probability p.
std::set<Word> reduceSet(const std::set<Word>& S, const Rational& p, Rng& rng);

/// Least element >= v of { l, (1-eps)·l, (1+eps)·l : integer l in [1, 2^n] }.
/// Throws OverflowError when v exceeds the largest acceptable value.
Rational roundUp(int n, const Rational& epsilon, const Rational& v);

/// Memo for the membership queries issued by the set-union step.  A query is
/// determined by (target state q, rank of the incoming transition in the
/// fixed order, candidate word); the removed-transition set is derived from
/// the rank.  Purely a cache: answers are identical with or without it.
class MembershipCache {
  public:
    bool query(const UnrolledNfa& U, int q, int rank, const Word& w);

    /// Allocation-free variant for the estimator's hot loop: w is a byte
    /// string of symbol ranks of length len.
    bool query(const UnrolledNfa& U, int q, int rank, const std::uint8_t* w, int len);

  private:
    std::unordered_map<std::string, bool> results_;
    std::map<std::pair<int, int>, std::vector<bool>> masks_;
    std::string keyBuf_; // reused between queries
    Word wordBuf_;       // reused between queries
};

/// Uncached form of the same query: does some word equivalent to w reach q
/// once the incoming transitions of q at rank positions >= rank are removed?
bool unionMemberQuery(const UnrolledNfa& U, int q, int rank, const Word& w);

/// One replica of the estimator's set union at state q: incoming transitions
/// are scanned in the fixed order; a candidate w·s from a predecessor sample
/// survives iff no earlier retained transition can already produce its
/// trace.  The result holds at most one word per trace (its canonical word).
std::set<Word> unionSets(const UnrolledNfa& U, int q,
                         const std::map<int, std::set<Word>>& samplesByPred,
                         MembershipCache* cache = nullptr);

/// Captured sample sets of an instrumented run: samples[run][state][r] is
/// the final sample list of replica r at that state.
struct FprasInstrumentation {
    bool capture = false;
    std::vector<std::vector<std::vector<std::vector<Word>>>> runs;
};

struct FprasCoreResult {
    Rational value;
    bool interrupted = false;
};

/// One core estimation pass over the unrolled automaton.  Substreams: state
/// q uses runRng.derive(q); within it, replica r draws its predecessor
/// reductions from derive(2r) and its final reduction from derive(2r+1).
FprasCoreResult traceMcCore(const UnrolledNfa& U, const FprasParams& params, const Rng& runRng,
                            MembershipCache* cache = nullptr,
                            FprasInstrumentation* instrumentation = nullptr);

struct FprasResult {
    Rational estimate;
    FprasParams params;
    long long interruptedRuns = 0;
    std::uint64_t seed = 0;
    bool sliceEmpty = false;
};

/// Full estimator: unrolls A, runs xi core passes on substreams
/// rng.derive(j), and returns the (lower) median of the pass results.
/// With default parameters the estimate is within (1±eps) of the trace
/// count with probability at least 1-delta.
FprasResult traceMc(const Nfa& A, int n, const Rational& epsilon, const Rational& delta,
                    const Rng& rng, const FprasOverrides& overrides = {},
                    FprasInstrumentation* instrumentation = nullptr);

} // namespace tracecount

#endif
