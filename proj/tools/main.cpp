// Command-line front end: counting, sampling, and diagnostic subcommands
// over JSON automata.  Stdout carries only JSON; every error family has a
// distinct exit code (see README).

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tracecount/automata.hpp"
#include "tracecount/errors.hpp"
#include "tracecount/exact_oracle.hpp"
#include "tracecount/fpras.hpp"
#include "tracecount/membership.hpp"
#include "tracecount/prefix_validator.hpp"
#include "tracecount/rational.hpp"
#include "tracecount/rng.hpp"
#include "tracecount/sampler.hpp"
#include "tracecount/trace_core.hpp"

namespace {

using nlohmann::json;
using namespace tracecount;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitBudget = 4;
constexpr int kExitOverflow = 5;
constexpr int kExitEmptyLanguage = 6;
constexpr int kExitUsage = 64;

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string fnv1aDigest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char out[19];
    std::snprintf(out, sizeof(out), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return out;
}

json paramsToJson(const FprasParams& p) {
    return json{{"epsilon", formatRational(p.epsilon)},
                {"delta", formatRational(p.delta)},
                {"beta", p.beta},
                {"gamma", p.gamma},
                {"alpha", p.alpha},
                {"xi", p.xi},
                {"theta", formatRational(p.theta)},
                {"n", p.n},
                {"width", p.width},
                {"unrolledStates", p.unrolledStates}};
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long elapsedMs() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

void printReport(const std::string& command, const std::string& digest, json result,
                 const Timer& timer, std::optional<std::uint64_t> seed = std::nullopt,
                 std::optional<json> params = std::nullopt,
                 std::optional<long long> interruptedRuns = std::nullopt) {
    json report{{"command", command}, {"inputDigest", digest}, {"result", std::move(result)}};
    if (seed) {
        report["seed"] = *seed;
    }
    if (params) {
        report["params"] = std::move(*params);
    }
    if (interruptedRuns) {
        report["interruptedRuns"] = *interruptedRuns;
    }
    report["wallTimeMs"] = timer.elapsedMs();
    std::cout << report.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate counting and almost-uniform sampling of trace classes "
                 "in regular-language slices"};
    app.require_subcommand(1);

    std::string file;
    std::string wordText;
    std::string outputPath;
    std::string method = "nf-enum";
    std::string counterMode = "fpras";
    std::string epsilonText = "1/2";
    std::string deltaText = "1/4";
    int n = 0;
    int stateIndex = -1;
    long long sampleCount = 1;
    long long budgetWords = 10'000'000;
    std::uint64_t seed = 1;
    bool traceInstrument = false;
    bool cacheEstimates = false;
    FprasOverrides overrides;
    long long overrideBeta = -1, overrideGamma = -1, overrideXi = -1;
    std::string overrideTheta;

    auto* cmdCount = app.add_subcommand("count", "Approximate trace-class count of a slice");
    cmdCount->add_option("file", file, "automaton JSON file")->required();
    cmdCount->add_option("--n", n, "slice length")->required();
    cmdCount->add_option("--epsilon", epsilonText, "accuracy, rational p/q");
    cmdCount->add_option("--delta", deltaText, "failure probability, rational p/q");
    cmdCount->add_option("--seed", seed, "64-bit RNG seed");
    cmdCount->add_option("--beta", overrideBeta, "override batch size");
    cmdCount->add_option("--gamma", overrideGamma, "override batch count");
    cmdCount->add_option("--xi", overrideXi, "override outer repetitions");
    cmdCount->add_option("--theta", overrideTheta, "override interrupt threshold, rational");
    cmdCount->add_flag("--trace-instrument", traceInstrument,
                       "include per-state sample sets in the report");

    auto* cmdExact = app.add_subcommand("count-exact", "Exact trace-class count of a slice");
    cmdExact->add_option("file", file, "automaton JSON file")->required();
    cmdExact->add_option("--n", n, "slice length")->required();
    cmdExact->add_option("--method", method, "nf-enum | word-enum")
        ->check(CLI::IsMember({"nf-enum", "word-enum"}));
    cmdExact->add_option("--budget", budgetWords, "enumeration guard (words)");

    auto* cmdSample = app.add_subcommand("sample", "Almost-uniform trace sampling");
    cmdSample->add_option("file", file, "automaton JSON file")->required();
    cmdSample->add_option("--n", n, "slice length")->required();
    cmdSample->add_option("--delta", deltaText, "sampling accuracy, rational p/q");
    cmdSample->add_option("--count", sampleCount, "number of draws");
    cmdSample->add_option("--seed", seed, "64-bit RNG seed");
    cmdSample->add_option("--counter", counterMode, "fpras | exact")
        ->check(CLI::IsMember({"fpras", "exact"}));
    cmdSample->add_flag("--cache-estimates", cacheEstimates,
                        "reuse prefix-count estimates across draws");

    auto* cmdMember = app.add_subcommand("member", "Predictive membership of a word's class");
    cmdMember->add_option("file", file, "automaton JSON file")->required();
    cmdMember->add_option("--word", wordText, "query word")->required();
    cmdMember->add_option("--state", stateIndex,
                          "target state index (default: any accepting state)");

    auto* cmdNf = app.add_subcommand("nf", "Lexicographic normal form of a word");
    cmdNf->add_option("file", file, "automaton JSON file (alphabet source)")->required();
    cmdNf->add_option("--word", wordText, "word to normalize")->required();

    auto* cmdPrefix = app.add_subcommand("prefix-automaton",
                                         "Build the prefix-validator automaton of a word");
    cmdPrefix->add_option("file", file, "automaton JSON file (alphabet source)")->required();
    cmdPrefix->add_option("--word", wordText, "normal-form prefix word")->required();
    cmdPrefix->add_option("--output", outputPath, "output JSON path (default stdout)");

    auto* cmdDnf = app.add_subcommand("reduce-dnf", "Build the counting automaton of a DNF");
    cmdDnf->add_option("file", file, "DNF text file")->required();
    cmdDnf->add_option("--output", outputPath, "output JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Timer timer;
    try {
        const std::string bytes = readFile(file);
        const std::string digest = fnv1aDigest(bytes);

        if (cmdCount->parsed()) {
            Nfa A = nfaFromJson(bytes);
            if (overrideBeta >= 0) {
                overrides.beta = overrideBeta;
            }
            if (overrideGamma >= 0) {
                overrides.gamma = overrideGamma;
            }
            if (overrideXi >= 0) {
                overrides.xi = overrideXi;
            }
            if (!overrideTheta.empty()) {
                overrides.theta = parseRational(overrideTheta);
            }
            FprasInstrumentation instr;
            instr.capture = traceInstrument;
            FprasResult res = traceMc(A, n, parseRational(epsilonText),
                                      parseRational(deltaText), Rng(seed), overrides,
                                      traceInstrument ? &instr : nullptr);
            json result{{"estimate", formatRational(res.estimate)},
                        {"exactArithmetic", true},
                        {"sliceEmpty", res.sliceEmpty}};
            if (traceInstrument) {
                json runs = json::array();
                for (const auto& run : instr.runs) {
                    json states = json::array();
                    for (std::size_t q = 0; q < run.size(); ++q) {
                        if (run[q].empty()) {
                            continue;
                        }
                        json replicas = json::array();
                        for (std::size_t r = 0; r < run[q].size(); ++r) {
                            if (run[q][r].empty()) {
                                continue;
                            }
                            json words = json::array();
                            for (const Word& w : run[q][r]) {
                                words.push_back(A.alphabet->formatWord(w));
                            }
                            replicas.push_back(json{{"replica", r}, {"words", words}});
                        }
                        states.push_back(json{{"state", q}, {"samples", replicas}});
                    }
                    runs.push_back(states);
                }
                result["instrumentation"] = runs;
            }
            printReport("count", digest, result, timer, seed, paramsToJson(res.params),
                        res.interruptedRuns);
            return kExitOk;
        }

        if (cmdExact->parsed()) {
            Nfa A = nfaFromJson(bytes);
            ExactBudget budget{budgetWords};
            long long value = method == "nf-enum" ? countExactNf(A, n, budget)
                                                  : countExactEnum(A, n, budget);
            printReport("count-exact", digest, json{{"count", value}, {"method", method}},
                        timer);
            return kExitOk;
        }

        if (cmdSample->parsed()) {
            Nfa A = nfaFromJson(bytes);
            SamplerConfig config;
            config.counter = counterMode == "exact"
                                 ? std::shared_ptr<CountingOracle>(std::make_shared<ExactCounter>())
                                 : std::make_shared<FprasCounter>();
            if (cacheEstimates) {
                config.estimateCache = std::make_shared<std::map<Word, Rational>>();
            }
            Rational delta = parseRational(deltaText);
            Rng rng(seed);
            long long bottoms = 0;
            for (long long i = 0; i < sampleCount; ++i) {
                auto sample = traceSample(A, n, delta, rng.derive(static_cast<std::uint64_t>(i)),
                                          config);
                if (sample) {
                    std::cout << json{{"sample", A.alphabet->formatWord(*sample)}}.dump()
                              << "\n";
                } else {
                    ++bottoms;
                    std::cout << json{{"bottom", true}}.dump() << "\n";
                }
            }
            printReport("sample", digest,
                        json{{"draws", sampleCount}, {"bottoms", bottoms}}, timer, seed);
            return kExitOk;
        }

        if (cmdMember->parsed()) {
            Nfa A = nfaFromJson(bytes);
            Word w = A.alphabet->parseWord(wordText);
            bool answer = stateIndex >= 0 ? member(A, stateIndex, w) : memberAccepted(A, w);
            printReport("member", digest, json{{"member", answer}}, timer);
            return kExitOk;
        }

        if (cmdNf->parsed()) {
            Nfa A = nfaFromJson(bytes);
            Word w = A.alphabet->parseWord(wordText);
            printReport("nf", digest,
                        json{{"normalForm", A.alphabet->formatWord(normalForm(*A.alphabet, w))}},
                        timer);
            return kExitOk;
        }

        if (cmdPrefix->parsed()) {
            Nfa A = nfaFromJson(bytes);
            Word u = A.alphabet->parseWord(wordText);
            PrefixValidator pv = buildPrefixValidator(A.alphabet, u);
            std::string dump = nfaToJson(pv.dfa);
            if (outputPath.empty()) {
                std::cout << dump << "\n";
            } else {
                std::ofstream out(outputPath, std::ios::binary);
                out << dump << "\n";
                printReport("prefix-automaton", digest,
                            json{{"states", pv.dfa.numStates}, {"output", outputPath}}, timer);
            }
            return kExitOk;
        }

        if (cmdDnf->parsed()) {
            Dnf formula = parseDnf(bytes);
            Nfa D = dnfToDfa(formula);
            std::string dump = nfaToJson(D);
            if (outputPath.empty()) {
                std::cout << dump << "\n";
            } else {
                std::ofstream out(outputPath, std::ios::binary);
                out << dump << "\n";
                printReport("reduce-dnf", digest,
                            json{{"states", D.numStates},
                                 {"terms", static_cast<long long>(formula.terms.size())},
                                 {"variables", formula.numVars},
                                 {"output", outputPath}},
                            timer);
            }
            return kExitOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const OverflowError& e) {
        std::cerr << "overflow error: " << e.what() << "\n";
        return kExitOverflow;
    } catch (const EmptyLanguageError& e) {
        std::cerr << "empty-language error: " << e.what() << "\n";
        return kExitEmptyLanguage;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}
