#ifndef TRACECOUNT_RNG_HPP
#define TRACECOUNT_RNG_HPP

#include <cstdint>
#include <vector>

#include "tracecount/errors.hpp"
#include "tracecount/rational.hpp"

namespace tracecount {

/// Deterministic seeded generator with an explicit substream-derivation rule.
///
/// The generator is a splitmix64 stream.  Substreams are derived from the
/// *origin* seed of a stream, never from its consumed state, so the stream
/// assigned to a labelled unit of work is the same regardless of execution
/// order or thread count:
///
///   child_seed = finalize(finalize(origin ^ GOLDEN) + GOLDEN * (label + 1))
///
/// where finalize is the splitmix64 output scrambler.  Nested labels
/// (run j -> state q -> replica r) are realized by chained derive() calls.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : origin_(seed), state_(seed) {}

    /// Origin seed of this (sub)stream.
    std::uint64_t seed() const { return origin_; }

    /// Next raw 64-bit output.
    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return finalize(state_);
    }

    /// Derives an independent labelled substream from the origin seed.
    Rng derive(std::uint64_t label) const {
        std::uint64_t s = finalize(origin_ ^ 0x9E3779B97F4A7C15ULL);
        s = finalize(s + 0x9E3779B97F4A7C15ULL * (label + 1));
        return Rng(s);
    }

    /// Uniform integer in [0, bound); bound must be positive.  Bounds that
    /// fit in 64 bits take a fast machine-word rejection path.
    Integer uniformBelow(const Integer& bound) {
        if (bound <= 0) {
            throw ValidationError("uniformBelow requires a positive bound");
        }
        if (bound <= 0xFFFFFFFFFFFFFFFFULL) {
            return Integer(uniformBelowU64(bound.convert_to<std::uint64_t>()));
        }
        const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(bound)) + 1;
        const unsigned words = (bits + 63) / 64;
        while (true) {
            Integer draw = 0;
            for (unsigned i = 0; i < words; ++i) {
                draw <<= 64;
                draw |= Integer(next());
            }
            draw >>= (words * 64 - bits);
            if (draw < bound) {
                return draw;
            }
        }
    }

    /// Exact Bernoulli(p) for rational p = num/den: uniform draw below den,
    /// success iff the draw is below num.
    bool bernoulli(const Rational& p) {
        const Integer num = boost::multiprecision::numerator(p);
        const Integer den = boost::multiprecision::denominator(p);
        if (num < 0 || num > den) {
            throw ValidationError("bernoulli probability outside [0,1]");
        }
        if (num == den) {
            return true;
        }
        if (num == 0) {
            return false;
        }
        if (den <= 0xFFFFFFFFFFFFFFFFULL) {
            return bernoulliU64(num.convert_to<std::uint64_t>(), den.convert_to<std::uint64_t>());
        }
        return uniformBelow(den) < num;
    }

    /// Machine-word Bernoulli(num/den); requires 0 < num < den.  Consumes the
    /// same draws as bernoulli() does for denominators that fit in 64 bits.
    bool bernoulliU64(std::uint64_t num, std::uint64_t den) {
        return uniformBelowU64(den) < num;
    }

    /// Draws an index with probability weights[i] / sum(weights); weights are
    /// exact rationals, at least one must be positive.
    std::size_t categorical(const std::vector<Rational>& weights) {
        Integer common = 1;
        for (const Rational& w : weights) {
            if (w < 0) {
                throw ValidationError("negative categorical weight");
            }
            common *= boost::multiprecision::denominator(w);
        }
        std::vector<Integer> scaled(weights.size());
        Integer total = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            scaled[i] = boost::multiprecision::numerator(weights[i]) *
                        (common / boost::multiprecision::denominator(weights[i]));
            total += scaled[i];
        }
        if (total <= 0) {
            throw ValidationError("categorical weights sum to zero");
        }
        Integer draw = uniformBelow(total);
        for (std::size_t i = 0; i + 1 < scaled.size(); ++i) {
            if (draw < scaled[i]) {
                return i;
            }
            draw -= scaled[i];
        }
        return scaled.size() - 1;
    }

  private:
    std::uint64_t uniformBelowU64(std::uint64_t bound) {
        if (bound == 1) {
            return 0;
        }
        std::uint64_t mask = ~0ULL;
        std::uint64_t top = bound - 1;
        while ((mask >> 1) >= top) {
            mask >>= 1;
        }
        while (true) {
            std::uint64_t draw = next() & mask;
            if (draw < bound) {
                return draw;
            }
        }
    }

    static std::uint64_t finalize(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t origin_;
    std::uint64_t state_;
};

} // namespace tracecount

#endif
