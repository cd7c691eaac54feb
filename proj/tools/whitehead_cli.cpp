// Command line interface to the Whitehead algorithm library: minimization,
// genericity classes, equivalence decisions, samplers, experiments and
// one-relator classification. JSON goes to standard output, diagnostics to
// the error stream. Exit codes: 0 computed, 1 negative answer in --quiet
// mode, 2 usage or input error, 3 undecided in --quiet mode.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "whitehead/classify.hpp"
#include "whitehead/counting.hpp"
#include "whitehead/experiments.hpp"
#include "whitehead/onerelator.hpp"
#include "whitehead/sampling.hpp"
#include "whitehead/serialization.hpp"
#include "whitehead/word.hpp"

namespace {

using namespace whitehead;

struct Options {
    int rank = 0;
    std::string word;
    std::string u;
    std::string v;
    int length = 0;
    std::vector<int> lengths;
    int samples = 100;
    std::uint64_t seed = 0;
    std::uint64_t budget = 1'000'000;
    std::string epsilon;
    std::string mode;
    std::string format = "json";
    std::string out;
    bool quiet = false;
    double x = 0.0;
    std::string target = "a";
    double theta_min = -20.0;
    double theta_max = 20.0;
    double tol = 1e-9;

    int exit_code = 0;
};

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
    } else {
        write_file_atomic(text, opt.out);
    }
}

void emit_json(const Options& opt, const Json& value) {
    if (!opt.quiet) emit(opt, value.dump());
}

Rational chosen_epsilon(const Options& opt, const Alphabet& alphabet) {
    return opt.epsilon.empty() ? default_epsilon(alphabet) : parse_rational(opt.epsilon);
}

/// Exit code for a yes/no/undecided answer under --quiet.
int quiet_code(Verdict verdict) {
    switch (verdict) {
        case Verdict::equivalent: return 0;
        case Verdict::inequivalent: return 1;
        case Verdict::undecided: return 3;
    }
    return 3;
}

void add_rank(CLI::App* cmd, Options& opt) {
    cmd->add_option("--rank", opt.rank, "Rank k of the free group (2 to 26)")->required();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Whitehead algorithm toolkit for free groups"};
    app.require_subcommand(1);
    Options opt;

    auto predicate_output = [&opt](const Word& w, const CyclicWord& core, const char* extra_key,
                                   const std::string& extra_value, bool value,
                                   const Alphabet& alphabet) {
        Json out = Json::object();
        out["word"] = to_string(w, alphabet);
        out["core"] = to_string(core.word(), alphabet);
        if (extra_key) out[extra_key] = extra_value;
        out["value"] = value;
        emit_json(opt, out);
        if (opt.quiet) opt.exit_code = value ? 0 : 1;
    };

    {
        auto* cmd = app.add_subcommand("minimize", "Whitehead minimization with a witness chain");
        add_rank(cmd, opt);
        cmd->add_option("--word", opt.word, "Input word")->required();
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            const auto result = minimize(parse_word(opt.word, alphabet), alphabet);
            emit_json(opt, to_json(result, alphabet));
        });
    }
    {
        auto* cmd = app.add_subcommand("is-sm", "Strict minimality of the cyclic core");
        add_rank(cmd, opt);
        cmd->add_option("--word", opt.word, "Input word")->required();
        cmd->add_flag("--quiet", opt.quiet, "No output; exit 0 if yes, 1 if no");
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            const Word w = parse_word(opt.word, alphabet);
            const CyclicWord core = cyclic_reduce(w).core;
            predicate_output(w, core, nullptr, "", is_strictly_minimal(core, alphabet), alphabet);
        });
    }
    {
        auto* cmd = app.add_subcommand("is-ts", "Test stability of the cyclic core");
        add_rank(cmd, opt);
        cmd->add_option("--word", opt.word, "Input word")->required();
        cmd->add_flag("--quiet", opt.quiet, "No output; exit 0 if yes, 1 if no");
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            const Word w = parse_word(opt.word, alphabet);
            const CyclicWord core = cyclic_reduce(w).core;
            predicate_output(w, core, nullptr, "", is_ts(core, alphabet), alphabet);
        });
    }
    {
        auto* cmd = app.add_subcommand("is-z", "Membership in Z for the cyclic core");
        add_rank(cmd, opt);
        cmd->add_option("--word", opt.word, "Input word")->required();
        cmd->add_flag("--quiet", opt.quiet, "No output; exit 0 if yes, 1 if no");
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            const Word w = parse_word(opt.word, alphabet);
            const CyclicWord core = cyclic_reduce(w).core;
            predicate_output(w, core, nullptr, "", is_z(core, alphabet), alphabet);
        });
    }
    {
        auto* cmd = app.add_subcommand("freq-criterion",
                                       "Frequency criterion L(epsilon) for the cyclic core");
        add_rank(cmd, opt);
        cmd->add_option("--word", opt.word, "Input word")->required();
        cmd->add_option("--epsilon", opt.epsilon,
                        "Rational epsilon (default (2k-3)/(2k(2k-1)(4k-3)))");
        cmd->add_flag("--quiet", opt.quiet, "No output; exit 0 if yes, 1 if no");
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            const Word w = parse_word(opt.word, alphabet);
            const CyclicWord core = cyclic_reduce(w).core;
            const Rational eps = chosen_epsilon(opt, alphabet);
            predicate_output(w, core, "epsilon", to_string(eps),
                             frequency_criterion(core, alphabet, eps), alphabet);
        });
    }
    {
        auto* cmd = app.add_subcommand("equivalent", "Automorphic equivalence of two words");
        add_rank(cmd, opt);
        cmd->add_option("-u,--u", opt.u, "First word")->required();
        cmd->add_option("-v,--v", opt.v, "Second word")->required();
        cmd->add_option("--budget", opt.budget, "Cap on level-set nodes explored")
            ->default_val(std::uint64_t{1'000'000});
        cmd->add_flag("--quiet", opt.quiet, "No output; exit 0/1/3 for yes/no/undecided");
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            const EquivalenceOptions options{opt.budget, true};
            const auto decision = are_aut_equivalent(parse_word(opt.u, alphabet),
                                                     parse_word(opt.v, alphabet), alphabet, options);
            emit_json(opt, to_json(decision, alphabet));
            if (opt.quiet) opt.exit_code = quiet_code(decision.verdict);
        });
    }
    {
        auto* cmd = app.add_subcommand("orbit", "Level set of the minimized word");
        add_rank(cmd, opt);
        cmd->add_option("--word", opt.word, "Input word")->required();
        cmd->add_option("--budget", opt.budget, "Cap on level-set nodes explored")
            ->default_val(std::uint64_t{1'000'000});
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            const auto minimal = minimize(parse_word(opt.word, alphabet), alphabet);
            const auto level = orbit_level_set(minimal.minimal, alphabet, opt.budget);
            Json out = Json::object();
            out["minimal"] = to_string(minimal.minimal.word(), alphabet);
            Json level_json = to_json(level, alphabet);
            out["classes"] = level_json["classes"];
            out["saturated"] = level_json["saturated"];
            emit_json(opt, out);
        });
    }
    {
        auto* cmd = app.add_subcommand("stabilizer", "Stabilizer structure report");
        add_rank(cmd, opt);
        cmd->add_option("--word", opt.word, "Input word")->required();
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            const Word w = parse_word(opt.word, alphabet);
            Json out = Json::object();
            out["word"] = to_string(w, alphabet);
            out["core"] = to_string(cyclic_reduce(w).core.word(), alphabet);
            const Json report = to_json(stabilizer_report(w, alphabet), alphabet);
            for (const auto& [key, value] : report.items()) out[key] = value;
            emit_json(opt, out);
        });
    }
    {
        auto* cmd = app.add_subcommand("sample", "Uniform random reduced words");
        add_rank(cmd, opt);
        cmd->add_option("--length", opt.length, "Word length")->required();
        cmd->add_option("--samples", opt.samples, "Number of samples")->default_val(1);
        cmd->add_option("--seed", opt.seed, "Master seed")->default_val(std::uint64_t{0});
        cmd->add_option("--mode", opt.mode, "reduced (freely reduced) or cyclic")
            ->default_val("reduced")
            ->check(CLI::IsMember({"reduced", "cyclic"}));
        cmd->add_option("--out", opt.out, "Write the samples to this path atomically");
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            std::string text;
            for (int i = 0; i < opt.samples; ++i) {
                const SamplerConfig config{opt.length, opt.seed, static_cast<std::uint64_t>(i)};
                if (opt.mode == "cyclic")
                    text += to_string(sample_cyclically_reduced(alphabet, config).word(), alphabet);
                else
                    text += to_string(sample_freely_reduced(alphabet, config), alphabet);
                text += '\n';
            }
            emit(opt, text);
        });
    }
    {
        auto* cmd = app.add_subcommand("frequencies", "Exact empirical frequencies of the core");
        add_rank(cmd, opt);
        cmd->add_option("--word", opt.word, "Input word")->required();
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            const Word w = parse_word(opt.word, alphabet);
            const CyclicWord core = cyclic_reduce(w).core;
            Json out = Json::object();
            out["word"] = to_string(w, alphabet);
            out["core"] = to_string(core.word(), alphabet);
            const Json profile = to_json(empirical_frequencies(core, alphabet), alphabet);
            for (const auto& [key, value] : profile.items()) out[key] = value;
            emit_json(opt, out);
        });
    }
    {
        auto* cmd = app.add_subcommand("rate-function", "Large-deviation rate of a letter frequency");
        add_rank(cmd, opt);
        cmd->add_option("--x", opt.x, "Frequency argument in [0, 1]")->required();
        cmd->add_option("--target", opt.target, "Tracked letter")->default_val("a");
        cmd->add_option("--theta-min", opt.theta_min, "Lower end of theta range")->default_val(-20.0);
        cmd->add_option("--theta-max", opt.theta_max, "Upper end of theta range")->default_val(20.0);
        cmd->add_option("--tol", opt.tol, "Eigenvalue and search tolerance")->default_val(1e-9);
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            if (opt.target.size() != 1)
                throw std::invalid_argument("target must be a single letter");
            const Letter target = alphabet.from_char(opt.target[0]);
            const double rate = rate_function(opt.x, alphabet, target,
                                              {opt.theta_min, opt.theta_max}, opt.tol);
            Json out = Json::object();
            out["x"] = opt.x;
            out["target"] = opt.target;
            out["rate"] = rate;
            emit_json(opt, out);
        });
    }
    {
        auto* cmd = app.add_subcommand("generic-scan", "Monte Carlo genericity table");
        add_rank(cmd, opt);
        cmd->add_option("--lengths", opt.lengths, "Comma separated word lengths")
            ->required()
            ->delimiter(',');
        cmd->add_option("--samples", opt.samples, "Samples per length")->default_val(100);
        cmd->add_option("--seed", opt.seed, "Master seed")->default_val(std::uint64_t{0});
        cmd->add_option("--epsilon", opt.epsilon,
                        "Rational epsilon (default (2k-3)/(2k(2k-1)(4k-3)))");
        cmd->add_option("--format", opt.format, "csv or json")
            ->default_val("json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", opt.out, "Write the report to this path atomically");
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            GenericityConfig config;
            config.lengths = opt.lengths;
            config.samples = opt.samples;
            config.seed = opt.seed;
            if (!opt.epsilon.empty()) config.epsilon = parse_rational(opt.epsilon);
            const auto rows = genericity_experiment(alphabet, config);
            emit(opt, render_report(rows, opt.format == "csv" ? ReportFormat::csv
                                                              : ReportFormat::json));
        });
    }
    {
        auto* cmd = app.add_subcommand("orbit-growth", "Orbit classes by cyclic length up to a cap");
        add_rank(cmd, opt);
        cmd->add_option("--word", opt.word, "Input word")->required();
        cmd->add_option("--length", opt.length, "Cyclic length cap")->required();
        cmd->add_option("--budget", opt.budget, "Cap on orbit classes explored")
            ->default_val(std::uint64_t{1'000'000});
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            if (opt.length < 0) throw std::invalid_argument("length cap must be nonnegative");
            const auto report =
                orbit_growth_experiment(parse_word(opt.word, alphabet), alphabet,
                                        static_cast<std::size_t>(opt.length), opt.budget);
            emit_json(opt, to_json(report));
        });
    }
    {
        auto* cmd = app.add_subcommand("count", "Exact word counts");
        add_rank(cmd, opt);
        cmd->add_option("--length", opt.length, "Word length")->required();
        cmd->add_option("--mode", opt.mode, "reduced, ball or cyclic")
            ->default_val("reduced")
            ->check(CLI::IsMember({"reduced", "ball", "cyclic"}));
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            const CountMode mode = opt.mode == "ball"     ? CountMode::ball
                                   : opt.mode == "cyclic" ? CountMode::cyclic
                                                          : CountMode::reduced;
            emit(opt, count_words(opt.length, alphabet, mode).str());
        });
    }
    {
        auto* cmd = app.add_subcommand("relator-classify", "One-relator rigidity classification");
        add_rank(cmd, opt);
        cmd->add_option("--word", opt.word, "Relator")->required();
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            emit_json(opt, to_json(classify_relator(parse_word(opt.word, alphabet), alphabet),
                                   alphabet));
        });
    }
    {
        auto* cmd = app.add_subcommand("relator-iso",
                                       "Isomorphism of one-relator groups with generic relator");
        add_rank(cmd, opt);
        cmd->add_option("-u,--u", opt.u, "Generic relator (must lie in Z)")->required();
        cmd->add_option("-v,--v", opt.v, "Second relator")->required();
        cmd->add_flag("--quiet", opt.quiet, "No output; exit 0/1/3 for yes/no/undecided");
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            const auto decision = isomorphic_generic(parse_word(opt.u, alphabet),
                                                     parse_word(opt.v, alphabet), alphabet);
            emit_json(opt, to_json(decision, alphabet));
            if (opt.quiet) {
                opt.exit_code = decision.verdict == IsoVerdict::isomorphic      ? 0
                                : decision.verdict == IsoVerdict::not_isomorphic ? 1
                                                                                 : 3;
            }
        });
    }
    {
        auto* cmd = app.add_subcommand("relator-classes",
                                       "Count relator classes of a given length");
        add_rank(cmd, opt);
        cmd->add_option("--length", opt.length, "Relator length")->required();
        cmd->add_option("--budget", opt.budget, "Cap on level-set nodes per decision")
            ->default_val(std::uint64_t{1'000'000});
        cmd->callback([&] {
            const Alphabet alphabet(opt.rank);
            const auto count = count_relator_classes(opt.length, alphabet, opt.budget);
            Json out = Json::object();
            out["length"] = opt.length;
            out["cyclic_words"] = count.words.str();
            out["classes"] = count.classes;
            out["exact"] = count.exact;
            out["conditional_on_Pk"] = true;
            emit_json(opt, out);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return opt.exit_code;
}
