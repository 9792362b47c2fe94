#ifndef TRACECOUNT_SAMPLER_HPP
#define TRACECOUNT_SAMPLER_HPP

#include <map>
#include <memory>
#include <optional>

#include "tracecount/automata.hpp"
#include "tracecount/fpras.hpp"
#include "tracecount/rational.hpp"
#include "tracecount/rng.hpp"

namespace tracecount {

/// Pluggable counting oracle: a (1±eps)-estimate with confidence 1-delta of
/// the number of trace classes intersecting the length-n slice of L(A).
class CountingOracle {
  public:
    virtual ~CountingOracle() = default;
    virtual Rational count(const Nfa& A, int n, const Rational& epsilon, const Rational& delta,
                           const Rng& rng) = 0;
};

/// Exact counter (brute-force enumeration); estimates are exact regardless
/// of epsilon/delta.
class ExactCounter : public CountingOracle {
  public:
    Rational count(const Nfa& A, int n, const Rational& epsilon, const Rational& delta,
                   const Rng& rng) override;
};

/// Randomized counter backed by the trace estimator.
class FprasCounter : public CountingOracle {
  public:
    Rational count(const Nfa& A, int n, const Rational& epsilon, const Rational& delta,
                   const Rng& rng) override;
};

struct SamplerConfig {
    std::shared_ptr<CountingOracle> counter;      // default: FprasCounter
    std::optional<Rational> epsilonPrime;         // default 1/(16n)
    std::optional<Rational> deltaPrime;           // default delta/(2^(n-1)·m)
    std::optional<long long> outerRuns;           // default ceil(ln(1/delta)/ln(4/3))
    /// Optional memo of prefix-count estimates keyed by prefix, shared
    /// across draws of one sampling session.  Reusing estimates leaves each
    /// draw's marginal distribution unchanged (the rejection step cancels
    /// the prefix-probability product for any fixed estimate realization).
    std::shared_ptr<std::map<Word, Rational>> estimateCache;
};

/// Estimate of C(u): the number of trace classes of the length-n slice
/// whose normal form starts with u.  Exactly 0 when the product of A with
/// the prefix validator of u has an empty slice (decided by reachability);
/// otherwise the counting oracle's estimate on that product.
Rational estimateC(const Nfa& A, const Word& u, int n, CountingOracle& counter,
                   const Rational& epsilonPrime, const Rational& deltaPrime, const Rng& rng,
                   std::map<Word, Rational>* cache = nullptr);

/// One sampling pass: grows a normal-form prefix letter by letter with
/// probabilities proportional to prefix-count estimates, then applies the
/// rejection step.  Returns the sampled class representative (a normal-form
/// word) or nothing for the explicit failure outcome.
std::optional<Word> traceSampleCore(const Nfa& A, int n, const SamplerConfig& config,
                                    const Rational& epsilonPrime, const Rational& deltaPrime,
                                    const Rng& rng);

/// Full sampler: up to m core passes on substreams rng.derive(j); the first
/// success wins.  The output distribution is within total variation delta of
/// uniform over the trace classes of the slice.  Throws EmptyLanguageError
/// when the slice is empty.
std::optional<Word> traceSample(const Nfa& A, int n, const Rational& delta, const Rng& rng,
                                const SamplerConfig& config = {});

} // namespace tracecount

#endif
