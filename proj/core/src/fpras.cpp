#include "tracecount/fpras.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>

#include "tracecount/errors.hpp"
#include "tracecount/membership.hpp"

namespace tracecount {

namespace {

Integer integerPow(Integer base, int exp) {
    Integer out = 1;
    for (int i = 0; i < exp; ++i) {
        out *= base;
    }
    return out;
}

long long ceilLog(double x, double factor) {
    double v = factor * std::log(x);
    auto c = static_cast<long long>(std::ceil(v));
    return std::max<long long>(c, 1);
}

} // namespace

FprasParams FprasParams::compute(const Rational& epsilon, const Rational& delta, int n, int width,
                                 long long unrolledStates, const FprasOverrides& overrides) {
    if (epsilon <= 0 || epsilon >= 1) {
        throw ValidationError("epsilon must lie in (0,1)");
    }
    if (delta <= 0 || delta >= 1) {
        throw ValidationError("delta must lie in (0,1)");
    }
    if (n < 0 || width < 1 || unrolledStates < 1) {
        throw ValidationError("invalid estimator dimensions");
    }
    FprasParams p;
    p.epsilon = epsilon;
    p.delta = delta;
    p.n = n;
    p.width = width;
    p.unrolledStates = unrolledStates;

    if (overrides.beta) {
        p.beta = *overrides.beta;
    } else {
        Rational raw = Rational(8) * width * integerPow(n, width + 1) * (1 + epsilon) /
                       (epsilon * epsilon);
        Integer b = ceilRational(raw);
        if (b < 1) {
            b = 1;
        }
        p.beta = static_cast<long long>(b);
    }
    if (overrides.gamma) {
        p.gamma = *overrides.gamma;
    } else {
        p.gamma = ceilLog(16.0 * static_cast<double>(unrolledStates), 2.0);
    }
    if (p.beta < 1 || p.gamma < 1) {
        throw ValidationError("beta and gamma must be positive");
    }
    p.alpha = p.beta * p.gamma;
    if (overrides.xi) {
        p.xi = *overrides.xi;
    } else {
        double inverseDelta =
            static_cast<double>(boost::multiprecision::denominator(delta)) /
            static_cast<double>(boost::multiprecision::numerator(delta));
        p.xi = ceilLog(inverseDelta, 8.0);
    }
    if (p.xi < 1) {
        throw ValidationError("xi must be positive");
    }
    if (overrides.theta) {
        p.theta = *overrides.theta;
    } else {
        p.theta = Rational(16) * p.alpha * unrolledStates / (1 - epsilon);
    }
    return p;
}

Rational medianOfMeans(long long beta, const std::vector<Rational>& xs) {
    if (beta < 1 || xs.empty() || static_cast<long long>(xs.size()) % beta != 0) {
        throw ValidationError("medianOfMeans requires beta dividing the sample count");
    }
    const long long gamma = static_cast<long long>(xs.size()) / beta;
    std::vector<Rational> means;
    means.reserve(static_cast<std::size_t>(gamma));
    for (long long g = 0; g < gamma; ++g) {
        // Fast path: integer entries (the common case — sample-set sizes)
        // sum without rational normalization.
        Integer intSum = 0;
        bool allInt = true;
        for (long long i = 0; i < beta && allInt; ++i) {
            const Rational& x = xs[static_cast<std::size_t>(g * beta + i)];
            if (boost::multiprecision::denominator(x) == 1) {
                intSum += boost::multiprecision::numerator(x);
            } else {
                allInt = false;
            }
        }
        Rational sum;
        if (allInt) {
            sum = intSum;
        } else {
            sum = 0;
            for (long long i = 0; i < beta; ++i) {
                sum += xs[static_cast<std::size_t>(g * beta + i)];
            }
        }
        means.push_back(sum / beta);
    }
    std::sort(means.begin(), means.end());
    return means[static_cast<std::size_t>((gamma - 1) / 2)];
}

Rational medianOfMeans(long long beta, const std::vector<long long>& xs) {
    if (beta < 1 || xs.empty() || static_cast<long long>(xs.size()) % beta != 0) {
        throw ValidationError("medianOfMeans requires beta dividing the sample count");
    }
    const long long gamma = static_cast<long long>(xs.size()) / beta;
    std::vector<Rational> means;
    means.reserve(static_cast<std::size_t>(gamma));
    for (long long g = 0; g < gamma; ++g) {
        Integer sum = 0;
        long long partial = 0;
        for (long long i = 0; i < beta; ++i) {
            long long x = xs[static_cast<std::size_t>(g * beta + i)];
            if (partial > (std::numeric_limits<long long>::max)() - x) {
                sum += partial;
                partial = 0;
            }
            partial += x;
        }
        sum += partial;
        means.push_back(Rational(sum) / beta);
    }
    std::sort(means.begin(), means.end());
    return means[static_cast<std::size_t>((gamma - 1) / 2)];
}

std::set<Word> reduceSet(const std::set<Word>& S, const Rational& p, Rng& rng) {
    if (p < 0 || p > 1) {
        throw ValidationError("reduceSet probability outside [0,1]");
    }
    if (p == 1) {
        return S;
    }
    std::set<Word> out;
    for (const Word& w : S) {
        if (rng.bernoulli(p)) {
            out.insert(w);
        }
    }
    return out;
}

Rational roundUp(int n, const Rational& epsilon, const Rational& v) {
    if (epsilon <= 0 || epsilon >= 1) {
        throw ValidationError("epsilon must lie in (0,1)");
    }
    if (v <= 0) {
        throw ValidationError("roundUp requires a positive value");
    }
    const Integer top = Integer(1) << n;
    bool found = false;
    Rational best;
    auto consider = [&](const Rational& factor) {
        Integer l = ceilRational(v / factor);
        if (l < 1) {
            l = 1;
        }
        if (l > top) {
            return;
        }
        Rational candidate = factor * l;
        if (candidate >= v && (!found || candidate < best)) {
            best = candidate;
            found = true;
        }
    };
    consider(Rational(1));
    consider(1 - epsilon);
    consider(1 + epsilon);
    if (!found) {
        throw OverflowError("roundUp: value exceeds the largest acceptable estimate");
    }
    return best;
}

namespace {

std::vector<bool> removalMask(const UnrolledNfa& U, int q, int rank) {
    std::vector<bool> removed(U.transitions.size(), false);
    const auto& in = U.incoming[static_cast<std::size_t>(q)];
    for (std::size_t i = static_cast<std::size_t>(rank); i < in.size(); ++i) {
        removed[static_cast<std::size_t>(in[i])] = true;
    }
    return removed;
}

} // namespace

bool unionMemberQuery(const UnrolledNfa& U, int q, int rank, const Word& w) {
    return memberUnrolled(U, q, w, removalMask(U, q, rank));
}

bool MembershipCache::query(const UnrolledNfa& U, int q, int rank, const std::uint8_t* w,
                            int len) {
    keyBuf_.clear();
    keyBuf_.push_back(static_cast<char>(q & 0xff));
    keyBuf_.push_back(static_cast<char>(q >> 8 & 0xff));
    keyBuf_.push_back(static_cast<char>(q >> 16 & 0xff));
    keyBuf_.push_back(static_cast<char>(rank & 0xff));
    keyBuf_.push_back(static_cast<char>(rank >> 8 & 0xff));
    keyBuf_.append(reinterpret_cast<const char*>(w), static_cast<std::size_t>(len));
    auto it = results_.find(keyBuf_);
    if (it != results_.end()) {
        return it->second;
    }
    auto maskIt = masks_.find({q, rank});
    if (maskIt == masks_.end()) {
        maskIt = masks_.emplace(std::make_pair(q, rank), removalMask(U, q, rank)).first;
    }
    wordBuf_.assign(w, w + len);
    bool answer = memberUnrolled(U, q, wordBuf_, maskIt->second);
    results_.emplace(keyBuf_, answer);
    return answer;
}

bool MembershipCache::query(const UnrolledNfa& U, int q, int rank, const Word& w) {
    std::vector<std::uint8_t> bytes(w.begin(), w.end());
    return query(U, q, rank, bytes.data(), static_cast<int>(bytes.size()));
}

std::set<Word> unionSets(const UnrolledNfa& U, int q,
                         const std::map<int, std::set<Word>>& samplesByPred,
                         MembershipCache* cache) {
    std::set<Word> out;
    const auto& in = U.incoming[static_cast<std::size_t>(q)];
    for (std::size_t rank = 0; rank < in.size(); ++rank) {
        const Transition& t = U.transitions[static_cast<std::size_t>(in[rank])];
        auto it = samplesByPred.find(t.from);
        if (it == samplesByPred.end()) {
            continue;
        }
        for (const Word& w : it->second) {
            Word candidate(w);
            candidate.push_back(t.sym);
            bool reachable = cache ? cache->query(U, q, static_cast<int>(rank), candidate)
                                   : unionMemberQuery(U, q, static_cast<int>(rank), candidate);
            if (!reachable) {
                out.insert(std::move(candidate));
            }
        }
    }
    return out;
}

namespace {

/// Sample lists of one state across all replicas.  Every word of a state's
/// samples has the length of the state's level, so words live contiguously
/// in one byte buffer; replica r owns words [offsets[r], offsets[r+1]).
class SampleTable {
  public:
    SampleTable(long long alpha, int wordLen)
        : len_(wordLen), offsets_(static_cast<std::size_t>(alpha) + 1, 0) {}

    void append(const std::uint8_t* w) {
        if (len_ > 0) {
            buf_.insert(buf_.end(), w, w + len_);
        }
        ++words_;
    }

    /// Seal replica r; must be called for r = 0..alpha-1 in order.
    void sealReplica(long long r) { offsets_[static_cast<std::size_t>(r) + 1] = words_; }

    std::uint32_t begin(long long r) const { return offsets_[static_cast<std::size_t>(r)]; }
    std::uint32_t end(long long r) const { return offsets_[static_cast<std::size_t>(r) + 1]; }
    long long count(long long r) const { return end(r) - begin(r); }
    const std::uint8_t* word(std::uint32_t idx) const {
        return buf_.data() + static_cast<std::size_t>(idx) * static_cast<std::size_t>(len_);
    }
    int wordLen() const { return len_; }
    long long totalWords() const { return words_; }

  private:
    int len_;
    std::uint32_t words_ = 0;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint8_t> buf_;
};

struct Estimator {
    std::vector<Rational> N;
    std::vector<std::unique_ptr<SampleTable>> tables;
    long long numberSamples = 0;
};

/// Runs the estimation step at one state: reduce the predecessors' samples,
/// union them along the incoming transitions, derive the refined estimate
/// via median-of-means + rounding, and subsample down to it.
void estimateAndSampleState(const UnrolledNfa& U, int q, Estimator& est,
                            const FprasParams& params, const Rng& runRng,
                            MembershipCache* cache) {
    const int wordLen = U.level[static_cast<std::size_t>(q)];
    const auto& in = U.incoming[static_cast<std::size_t>(q)];
    const Rng stateRng = runRng.derive(static_cast<std::uint64_t>(q));

    std::vector<int> preds;
    for (int ti : in) {
        preds.push_back(U.transitions[static_cast<std::size_t>(ti)].from);
    }
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
    if (preds.empty()) {
        throw ValidationError("estimator state without predecessors");
    }

    Rational nMax = 0;
    for (int p : preds) {
        nMax = std::max(nMax, est.N[static_cast<std::size_t>(p)]);
    }
    std::map<int, Rational> keepProb;
    for (int p : preds) {
        keepProb[p] = est.N[static_cast<std::size_t>(p)] / nMax;
    }

    // Dense positions for the predecessor states and per-rank lookup, so the
    // per-replica loop stays allocation free.
    auto predPos = [&](int p) {
        return static_cast<std::size_t>(
            std::lower_bound(preds.begin(), preds.end(), p) - preds.begin());
    };
    std::vector<std::size_t> rankPred(in.size());
    for (std::size_t rank = 0; rank < in.size(); ++rank) {
        rankPred[rank] = predPos(U.transitions[static_cast<std::size_t>(in[rank])].from);
    }
    // Probabilities frozen into machine words where they fit, so the replica
    // loops do no rational arithmetic at all.
    struct FastProb {
        bool exact = false;
        bool fits = false;
        std::uint64_t num = 0;
        std::uint64_t den = 1;
    };
    auto freezeProb = [](const Rational& p) {
        FastProb f;
        const Integer num = boost::multiprecision::numerator(p);
        const Integer den = boost::multiprecision::denominator(p);
        f.exact = num == den;
        f.fits = den <= 0xFFFFFFFFFFFFFFFFULL;
        if (f.fits) {
            f.num = num.convert_to<std::uint64_t>();
            f.den = den.convert_to<std::uint64_t>();
        }
        return f;
    };
    std::vector<FastProb> predProb(preds.size());
    for (std::size_t pi = 0; pi < preds.size(); ++pi) {
        predProb[pi] = freezeProb(keepProb[preds[pi]]);
    }

    SampleTable hat(params.alpha, wordLen);
    std::vector<long long> hatSizes(static_cast<std::size_t>(params.alpha));
    std::vector<std::vector<const std::uint8_t*>> reduced(preds.size());
    std::vector<std::uint8_t> candidate(static_cast<std::size_t>(std::max(wordLen, 1)));
    for (long long r = 0; r < params.alpha; ++r) {
        Rng reduceRng = stateRng.derive(static_cast<std::uint64_t>(2 * r));
        for (std::size_t pi = 0; pi < preds.size(); ++pi) {
            const SampleTable& src = *est.tables[static_cast<std::size_t>(preds[pi])];
            auto& kept = reduced[pi];
            kept.clear();
            const FastProb& fp = predProb[pi];
            for (std::uint32_t i = src.begin(r); i < src.end(r); ++i) {
                if (fp.exact ||
                    (fp.fits ? reduceRng.bernoulliU64(fp.num, fp.den)
                             : reduceRng.bernoulli(keepProb[preds[pi]]))) {
                    kept.push_back(src.word(i));
                }
            }
        }
        for (std::size_t rank = 0; rank < in.size(); ++rank) {
            const Transition& t = U.transitions[static_cast<std::size_t>(in[rank])];
            for (const std::uint8_t* w : reduced[rankPred[rank]]) {
                if (wordLen > 1) {
                    std::memcpy(candidate.data(), w, static_cast<std::size_t>(wordLen - 1));
                }
                candidate[static_cast<std::size_t>(wordLen) - 1] =
                    static_cast<std::uint8_t>(t.sym);
                bool reachable;
                if (cache) {
                    reachable = cache->query(U, q, static_cast<int>(rank), candidate.data(),
                                             wordLen);
                } else {
                    Word cw(candidate.begin(), candidate.begin() + wordLen);
                    reachable = unionMemberQuery(U, q, static_cast<int>(rank), cw);
                }
                if (!reachable) {
                    hat.append(candidate.data());
                }
            }
        }
        hat.sealReplica(r);
        hatSizes[static_cast<std::size_t>(r)] = hat.count(r);
    }

    Rational refined = nMax * medianOfMeans(params.beta, hatSizes);
    Rational target = std::max(nMax, refined);
    est.N[static_cast<std::size_t>(q)] = roundUp(params.n, params.epsilon, target);
    Rational finalProb = nMax / est.N[static_cast<std::size_t>(q)];
    const FastProb finalFp = freezeProb(finalProb);

    auto table = std::make_unique<SampleTable>(params.alpha, wordLen);
    for (long long r = 0; r < params.alpha; ++r) {
        Rng keepRng = stateRng.derive(static_cast<std::uint64_t>(2 * r + 1));
        for (std::uint32_t i = hat.begin(r); i < hat.end(r); ++i) {
            if (finalFp.exact || (finalFp.fits ? keepRng.bernoulliU64(finalFp.num, finalFp.den)
                                               : keepRng.bernoulli(finalProb))) {
                table->append(hat.word(i));
            }
        }
        table->sealReplica(r);
    }
    est.numberSamples += table->totalWords();
    est.tables[static_cast<std::size_t>(q)] = std::move(table);
}

} // namespace

FprasCoreResult traceMcCore(const UnrolledNfa& U, const FprasParams& params, const Rng& runRng,
                            MembershipCache* cache, FprasInstrumentation* instrumentation) {
    if (U.empty()) {
        throw ValidationError("traceMcCore requires a nonempty slice");
    }
    Estimator est;
    est.N.assign(static_cast<std::size_t>(U.numStates), Rational(0));
    est.tables.resize(static_cast<std::size_t>(U.numStates));
    est.N[static_cast<std::size_t>(U.initial)] = 1;
    {
        auto table = std::make_unique<SampleTable>(params.alpha, 0);
        for (long long r = 0; r < params.alpha; ++r) {
            table->append(nullptr); // the empty word
            table->sealReplica(r);
        }
        est.tables[static_cast<std::size_t>(U.initial)] = std::move(table);
    }
    est.numberSamples = params.alpha;

    const bool capture = instrumentation && instrumentation->capture;
    auto captureTables = [&]() {
        std::vector<std::vector<std::vector<Word>>> snapshot(
            static_cast<std::size_t>(U.numStates));
        for (int q = 0; q < U.numStates; ++q) {
            const auto& table = est.tables[static_cast<std::size_t>(q)];
            if (!table) {
                continue;
            }
            auto& perReplica = snapshot[static_cast<std::size_t>(q)];
            perReplica.resize(static_cast<std::size_t>(params.alpha));
            for (long long r = 0; r < params.alpha; ++r) {
                for (std::uint32_t i = table->begin(r); i < table->end(r); ++i) {
                    const std::uint8_t* w = table->word(i);
                    perReplica[static_cast<std::size_t>(r)].emplace_back(w, w + table->wordLen());
                }
            }
        }
        instrumentation->runs.push_back(std::move(snapshot));
    };

    for (int lvl = 1; lvl <= U.n; ++lvl) {
        for (int q : U.statesAtLevel(lvl)) {
            estimateAndSampleState(U, q, est, params, runRng, cache);
            if (Rational(est.numberSamples) >= params.theta) {
                if (capture) {
                    captureTables();
                }
                return {Rational(0), true};
            }
        }
        if (!capture && lvl >= 2) {
            // Only two adjacent levels are needed; free the older one.
            for (int q : U.statesAtLevel(lvl - 1)) {
                est.tables[static_cast<std::size_t>(q)].reset();
            }
        }
    }
    if (capture) {
        captureTables();
    }
    return {est.N[static_cast<std::size_t>(U.finalState)], false};
}

FprasResult traceMc(const Nfa& A, int n, const Rational& epsilon, const Rational& delta,
                    const Rng& rng, const FprasOverrides& overrides,
                    FprasInstrumentation* instrumentation) {
    A.validate();
    UnrolledNfa U = unroll(A, n);
    FprasResult result;
    result.seed = rng.seed();
    result.params = FprasParams::compute(epsilon, delta, n, A.alphabet->width(), U.numStates,
                                         overrides);
    if (U.empty()) {
        result.estimate = 0;
        result.sliceEmpty = true;
        return result;
    }
    MembershipCache cache;
    std::vector<Rational> values;
    values.reserve(static_cast<std::size_t>(result.params.xi));
    for (long long j = 0; j < result.params.xi; ++j) {
        FprasCoreResult core = traceMcCore(U, result.params, rng.derive(static_cast<std::uint64_t>(j)),
                                           &cache, instrumentation);
        if (core.interrupted) {
            ++result.interruptedRuns;
        }
        values.push_back(core.value);
    }
    std::sort(values.begin(), values.end());
    result.estimate = values[static_cast<std::size_t>((result.params.xi - 1) / 2)];
    return result;
}

} // namespace tracecount
