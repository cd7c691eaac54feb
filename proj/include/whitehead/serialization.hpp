#pragma once

#include <string>

#include <json.hpp>

#include "whitehead/classify.hpp"
#include "whitehead/experiments.hpp"
#include "whitehead/onerelator.hpp"
#include "whitehead/sampling.hpp"

namespace whitehead {

/// JSON encodings used by the command line tool and the test suite. Object
/// keys keep insertion order, words are encoded strings, and letter-keyed
/// maps run in letter code order, so output is byte-deterministic.
using Json = nlohmann::ordered_json;

inline Json to_json(const Relabeling& rho, const Alphabet& alphabet) {
    Json out = Json::object();
    for (int c = 0; c < alphabet.size(); ++c) {
        const Letter x(static_cast<unsigned>(c));
        out[std::string(1, alphabet.to_char(x))] = std::string(1, alphabet.to_char(rho.image(x)));
    }
    return out;
}

inline Json to_json(const SecondKind& tau, const Alphabet& alphabet) {
    Json out = Json::object();
    out["multiplier"] = std::string(1, alphabet.to_char(tau.multiplier()));
    Json set = Json::array();
    for (int c = 0; c < alphabet.size(); ++c)
        if (tau.contains(Letter(static_cast<unsigned>(c))))
            set.push_back(std::string(1, alphabet.to_char(Letter(static_cast<unsigned>(c)))));
    out["A"] = std::move(set);
    return out;
}

inline Json to_json(const Automorphism& tau, const Alphabet& alphabet) {
    return std::visit([&](const auto& t) { return to_json(t, alphabet); }, tau);
}

/// A witness chain serializes as the array of its steps; source and target
/// are implicit in the surrounding decision.
inline Json to_json(const WitnessChain& chain, const Alphabet& alphabet) {
    Json steps = Json::array();
    for (const auto& step : chain.steps) steps.push_back(to_json(step, alphabet));
    return steps;
}

inline const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::equivalent: return "equivalent";
        case Verdict::inequivalent: return "inequivalent";
        case Verdict::undecided: return "undecided";
    }
    return "undecided";
}

inline Json to_json(const EquivalenceDecision& decision, const Alphabet& alphabet) {
    Json out = Json::object();
    out["verdict"] = to_string(decision.verdict);
    out["witness"] = decision.witness ? to_json(*decision.witness, alphabet) : Json::array();
    out["nodes_explored"] = decision.nodes_explored;
    out["fast_path"] = decision.fast_path;
    return out;
}

inline Json to_json(const MinimizationResult& result, const Alphabet& alphabet) {
    Json out = Json::object();
    out["minimal"] = to_string(result.minimal.word(), alphabet);
    out["witness"] = to_json(result.witness, alphabet);
    return out;
}

inline const char* to_string(StabilizerConclusion conclusion) {
    switch (conclusion) {
        case StabilizerConclusion::cyclic_generated_by_ad_w: return "cyclic_generated_by_ad_w";
        case StabilizerConclusion::finite_extension: return "finite_extension";
        case StabilizerConclusion::unknown: return "unknown";
    }
    return "unknown";
}

inline Json to_json(const StabilizerReport& report, const Alphabet& alphabet) {
    Json flags = Json::object();
    flags["sm"] = report.sm;
    flags["sm_prime"] = report.sm_prime;
    flags["ts"] = report.ts;
    flags["ts_prime"] = report.ts_prime;
    flags["z"] = report.z;
    Json out = Json::object();
    out["class_flags"] = std::move(flags);
    out["conclusion"] = to_string(report.conclusion);
    Json symmetries = Json::array();
    for (const auto& rho : report.symmetries) symmetries.push_back(to_json(rho, alphabet));
    out["symmetries"] = std::move(symmetries);
    return out;
}

inline Json to_json(const LevelSet& level, const Alphabet& alphabet) {
    Json out = Json::object();
    Json classes = Json::array();
    for (const auto& w : level.classes) classes.push_back(to_string(w.word(), alphabet));
    out["classes"] = std::move(classes);
    out["saturated"] = level.saturated;
    return out;
}

inline Json to_json(const RelatorReport& report, const Alphabet& alphabet) {
    Json out = Json::object();
    out["word"] = to_string(report.word, alphabet);
    out["core"] = to_string(report.core.word(), alphabet);
    Json flags = Json::object();
    flags["sm"] = report.sm;
    flags["ts"] = report.ts;
    flags["z"] = report.z;
    flags["proper_power"] = report.proper_power;
    flags["primitive"] = report.primitive;
    out["flags"] = std::move(flags);
    out["rigidity_status"] = report.generic_conditional ? "generic_conditional" : "non_generic";
    out["conditional_on_Pk"] = true;
    return out;
}

inline const char* to_string(IsoVerdict verdict) {
    switch (verdict) {
        case IsoVerdict::isomorphic: return "isomorphic";
        case IsoVerdict::not_isomorphic: return "not_isomorphic";
        case IsoVerdict::undecided: return "undecided";
    }
    return "undecided";
}

inline Json to_json(const IsoDecision& decision, const Alphabet& alphabet) {
    Json out = Json::object();
    out["verdict"] = to_string(decision.verdict);
    out["relabeling"] = decision.relabeling ? to_json(*decision.relabeling, alphabet) : Json();
    out["rotation"] = decision.rotation;
    out["inverted"] = decision.inverted;
    out["v_minimal"] = to_string(decision.v_minimal, alphabet);
    if (!decision.note.empty()) out["note"] = decision.note;
    out["conditional_on_Pk"] = true;
    return out;
}

inline Json to_json(const FrequencyProfile& profile, const Alphabet& alphabet) {
    Json out = Json::object();
    out["n"] = profile.length();
    Json letters = Json::object();
    for (int c = 0; c < alphabet.size(); ++c) {
        const Letter x(static_cast<unsigned>(c));
        letters[std::string(1, alphabet.to_char(x))] = to_string(profile.letter_freq(x));
    }
    out["letter_freq"] = std::move(letters);
    Json digrams = Json::object();
    for (int p = 0; p < alphabet.size(); ++p)
        for (int q = 0; q < alphabet.size(); ++q) {
            const Letter x(static_cast<unsigned>(p)), y(static_cast<unsigned>(q));
            if (y == x.inverse()) continue;
            std::string key{alphabet.to_char(x), alphabet.to_char(y)};
            digrams[key] = to_string(profile.digram_freq(x, y));
        }
    out["digram_freq"] = std::move(digrams);
    Json edges = Json::object();
    for (int p = 0; p < alphabet.size(); ++p)
        for (int q = p + 1; q < alphabet.size(); ++q) {
            const Letter x(static_cast<unsigned>(p)), y(static_cast<unsigned>(q));
            std::string key{alphabet.to_char(x), alphabet.to_char(y)};
            edges[key] = to_string(profile.edge_freq(x, y));
        }
    out["edge_freq"] = std::move(edges);
    return out;
}

inline Json to_json(const OrbitGrowthReport& report) {
    Json out = Json::object();
    Json counts = Json::object();
    for (const auto& [length, count] : report.counts) counts[std::to_string(length)] = count;
    out["counts"] = std::move(counts);
    out["entropy_estimate"] = report.entropy_estimate;
    out["saturated"] = report.saturated;
    return out;
}

} // namespace whitehead
