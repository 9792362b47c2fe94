// Microbenchmarks for the hot paths: normalization, predictive membership,
// and the full estimator on a small instance.

#include <benchmark/benchmark.h>

#include <memory>

#include "tracecount/alphabet.hpp"
#include "tracecount/automata.hpp"
#include "tracecount/fpras.hpp"
#include "tracecount/membership.hpp"
#include "tracecount/prefix_validator.hpp"
#include "tracecount/rng.hpp"
#include "tracecount/trace_core.hpp"

namespace {

using namespace tracecount;

std::shared_ptr<const ConcurrentAlphabet> benchAlphabet() {
    return std::make_shared<ConcurrentAlphabet>(
        std::vector<std::string>{"a", "b", "c"},
        std::vector<std::pair<std::string, std::string>>{{"a", "b"}, {"b", "c"}});
}

Word benchWord(const ConcurrentAlphabet& alpha, int len, std::uint64_t seed) {
    Rng rng(seed);
    Word w;
    for (int i = 0; i < len; ++i) {
        w.push_back(static_cast<Symbol>(rng.next() % static_cast<std::uint64_t>(alpha.size())));
    }
    return w;
}

Nfa benchNfa(std::shared_ptr<const ConcurrentAlphabet> alpha) {
    // (abc)* cycle acceptor.
    Nfa A;
    A.alphabet = alpha;
    A.numStates = 3;
    A.initial = 0;
    A.finals = {0};
    A.transitions = {{0, 0, 1}, {1, 1, 2}, {2, 2, 0}};
    return A;
}

void bmNormalForm(benchmark::State& state) {
    auto alpha = benchAlphabet();
    Word w = benchWord(*alpha, static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(normalForm(*alpha, w));
    }
}
BENCHMARK(bmNormalForm)->Arg(8)->Arg(32)->Arg(128);

void bmMember(benchmark::State& state) {
    auto alpha = benchAlphabet();
    Nfa A = benchNfa(alpha);
    Word w = benchWord(*alpha, static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(memberAccepted(A, w));
    }
}
BENCHMARK(bmMember)->Arg(6)->Arg(9)->Arg(12);

void bmPrefixValidator(benchmark::State& state) {
    auto alpha = benchAlphabet();
    Word u = normalForm(*alpha, benchWord(*alpha, static_cast<int>(state.range(0)), 3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(buildPrefixValidator(alpha, u));
    }
}
BENCHMARK(bmPrefixValidator)->Arg(2)->Arg(4)->Arg(6);

void bmTraceMc(benchmark::State& state) {
    auto alpha = benchAlphabet();
    Nfa A = benchNfa(alpha);
    FprasOverrides o;
    o.beta = static_cast<long long>(state.range(0));
    o.gamma = 2;
    o.xi = 2;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        FprasResult r = traceMc(A, 6, Rational(1, 2), Rational(1, 4), Rng(seed++), o);
        benchmark::DoNotOptimize(r.estimate);
    }
}
BENCHMARK(bmTraceMc)->Arg(50)->Arg(200);

} // namespace

BENCHMARK_MAIN();
