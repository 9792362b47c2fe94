#include "tracecount/sampler.hpp"

#include <cmath>

#include "tracecount/errors.hpp"
#include "tracecount/exact_oracle.hpp"
#include "tracecount/prefix_validator.hpp"

namespace tracecount {

Rational ExactCounter::count(const Nfa& A, int n, const Rational&, const Rational&, const Rng&) {
    return Rational(countExactNf(A, n));
}

Rational FprasCounter::count(const Nfa& A, int n, const Rational& epsilon, const Rational& delta,
                             const Rng& rng) {
    return traceMc(A, n, epsilon, delta, rng).estimate;
}

Rational estimateC(const Nfa& A, const Word& u, int n, CountingOracle& counter,
                   const Rational& epsilonPrime, const Rational& deltaPrime, const Rng& rng,
                   std::map<Word, Rational>* cache) {
    if (cache) {
        auto it = cache->find(u);
        if (it != cache->end()) {
            return it->second;
        }
    }
    PrefixValidator pv = buildPrefixValidator(A.alphabet, u);
    Nfa P = product(A, pv.dfa);
    Rational value = 0;
    if (!unroll(P, n).empty()) {
        value = counter.count(P, n, epsilonPrime, deltaPrime, rng);
    }
    if (cache) {
        cache->emplace(u, value);
    }
    return value;
}

std::optional<Word> traceSampleCore(const Nfa& A, int n, const SamplerConfig& config,
                                    const Rational& epsilonPrime, const Rational& deltaPrime,
                                    const Rng& rng) {
    if (!config.counter) {
        throw ValidationError("traceSampleCore requires a counting oracle");
    }
    CountingOracle& counter = *config.counter;
    std::map<Word, Rational>* cache = config.estimateCache.get();
    const ConcurrentAlphabet& alpha = *A.alphabet;

    Rational lambdaEstimate =
        estimateC(A, {}, n, counter, epsilonPrime, deltaPrime, rng.derive(0), cache);
    if (lambdaEstimate <= 0) {
        return std::nullopt;
    }

    Nfa nfAcceptor = nfDfa(A.alphabet);
    auto nfOut = nfAcceptor.outgoingBySource();
    int nfState = nfAcceptor.initial;

    Word u;
    Rational probability = 1; // the product of per-step selection probabilities
    for (int i = 1; i <= n; ++i) {
        const Rng stepRng = rng.derive(static_cast<std::uint64_t>(i));
        std::vector<Symbol> candidates;
        std::vector<int> nfTargets;
        std::vector<Rational> weights;
        for (const Transition& t : nfOut[static_cast<std::size_t>(nfState)]) {
            Word extended(u);
            extended.push_back(t.sym);
            Rational est = estimateC(A, extended, n, counter, epsilonPrime, deltaPrime,
                                     stepRng.derive(static_cast<std::uint64_t>(t.sym)), cache);
            if (est > 0) {
                candidates.push_back(t.sym);
                nfTargets.push_back(t.to);
                weights.push_back(est);
            }
        }
        if (candidates.empty()) {
            return std::nullopt; // estimate failure: no viable extension
        }
        Rng drawRng = stepRng.derive(static_cast<std::uint64_t>(alpha.size()));
        std::size_t pick = drawRng.categorical(weights);
        Rational total = 0;
        for (const Rational& est : weights) {
            total += est;
        }
        probability *= weights[pick] / total;
        u.push_back(candidates[pick]);
        nfState = nfTargets[pick];
    }

    // Rejection: normalize the acceptance so every trace wins the whole core
    // run with probability exactly 1/(2·lambdaEstimate).
    if (probability < Rational(1) / (2 * lambdaEstimate)) {
        return std::nullopt;
    }
    Rng acceptRng = rng.derive(static_cast<std::uint64_t>(n) + 1);
    if (acceptRng.bernoulli(Rational(1) / (2 * lambdaEstimate * probability))) {
        return u;
    }
    return std::nullopt;
}

std::optional<Word> traceSample(const Nfa& A, int n, const Rational& delta, const Rng& rng,
                                const SamplerConfig& config) {
    A.validate();
    if (delta <= 0 || delta >= 1) {
        throw ValidationError("delta must lie in (0,1)");
    }
    if (n < 0) {
        throw ValidationError("slice length must be nonnegative");
    }
    if (unroll(A, n).empty()) {
        throw EmptyLanguageError("the requested slice has no words to sample from");
    }

    SamplerConfig resolved = config;
    if (!resolved.counter) {
        resolved.counter = std::make_shared<FprasCounter>();
    }
    long long m;
    if (resolved.outerRuns) {
        m = *resolved.outerRuns;
    } else {
        double inverseDelta = static_cast<double>(boost::multiprecision::denominator(delta)) /
                              static_cast<double>(boost::multiprecision::numerator(delta));
        m = static_cast<long long>(std::ceil(std::log(inverseDelta) / std::log(4.0 / 3.0)));
        m = std::max<long long>(m, 1);
    }
    Rational epsilonPrime =
        resolved.epsilonPrime ? *resolved.epsilonPrime : Rational(1, 16 * std::max(n, 1));
    Rational deltaPrime;
    if (resolved.deltaPrime) {
        deltaPrime = *resolved.deltaPrime;
    } else {
        deltaPrime = 2 * delta / (Rational(Integer(1) << n) * m);
        if (deltaPrime >= 1) {
            deltaPrime = delta;
        }
    }

    for (long long j = 0; j < m; ++j) {
        auto result = traceSampleCore(A, n, resolved, epsilonPrime, deltaPrime,
                                      rng.derive(static_cast<std::uint64_t>(j)));
        if (result) {
            return result;
        }
    }
    return std::nullopt;
}

} // namespace tracecount
