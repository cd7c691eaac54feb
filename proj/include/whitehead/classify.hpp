#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "whitehead/automorphism.hpp"
#include "whitehead/rational.hpp"
#include "whitehead/whitehead_graph.hpp"
#include "whitehead/word.hpp"

namespace whitehead {

/// A chain of Whitehead automorphisms carrying source to target: applying
/// the steps in order, freely reducing after each, yields target exactly.
struct WitnessChain {
    Word source;
    Word target;
    std::vector<Automorphism> steps;
};

inline bool verify_witness(const WitnessChain& chain) {
    Word cur = chain.source;
    for (const auto& step : chain.steps) cur = whitehead::apply(step, cur);
    return cur == chain.target;
}

namespace detail {

/// Peels w to its cyclic core, appending one conjugation step per peeled
/// letter pair: peeling x ... x^-1 applies w -> x^-1 w x.
inline Word peel_to_core(const Alphabet& alphabet, const Word& w, std::vector<Automorphism>& steps) {
    const auto& s = w.letters();
    std::size_t lo = 0, hi = s.size();
    while (hi - lo >= 2 && s[lo] == s[hi - 1].inverse()) {
        steps.emplace_back(SecondKind::conjugation_by(alphabet, s[lo]));
        ++lo;
        --hi;
    }
    return Word::from_reduced(std::vector<Letter>(s.begin() + static_cast<std::ptrdiff_t>(lo),
                                                  s.begin() + static_cast<std::ptrdiff_t>(hi)));
}

/// Rotates a cyclically reduced word left by r, appending one conjugation
/// step per rotated letter: moving y from front to back applies w -> y^-1 w y.
inline Word rotate_recording(const Alphabet& alphabet, const Word& w, std::size_t r,
                             std::vector<Automorphism>& steps) {
    if (w.empty() || r % w.size() == 0) return w;
    r %= w.size();
    const auto& s = w.letters();
    for (std::size_t i = 0; i < r; ++i)
        steps.emplace_back(SecondKind::conjugation_by(alphabet, s[i]));
    std::vector<Letter> out;
    out.reserve(s.size());
    out.insert(out.end(), s.begin() + static_cast<std::ptrdiff_t>(r), s.end());
    out.insert(out.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(r));
    return Word::from_reduced(std::move(out));
}

/// Steps of the reverse chain: inverses in reverse order.
inline std::vector<Automorphism> invert_steps(const std::vector<Automorphism>& steps) {
    std::vector<Automorphism> out;
    out.reserve(steps.size());
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.push_back(inverse(*it));
    return out;
}

inline void append_steps(std::vector<Automorphism>& dst, const std::vector<Automorphism>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

inline std::string closure_key(std::span<const Letter> s) {
    std::string key;
    key.reserve(s.size());
    for (Letter x : s) key.push_back(static_cast<char>(x.code()));
    return key;
}

inline Word closure_word(const std::string& key) {
    std::vector<Letter> letters;
    letters.reserve(key.size());
    for (char c : key) letters.emplace_back(static_cast<unsigned>(static_cast<unsigned char>(c)));
    return Word::from_reduced(std::move(letters));
}

} // namespace detail

struct MinimizationResult {
    CyclicWord minimal;
    WitnessChain witness;
};

/// Whitehead minimization: cyclically reduce, then repeatedly apply the
/// second-kind automorphism with the most negative predicted length change
/// (ties break in enumeration order) until no change is negative. The
/// witness records every applied automorphism, including the conjugations
/// implied by cyclic reduction.
inline MinimizationResult minimize(const Word& w, const Alphabet& alphabet) {
    WitnessChain witness;
    witness.source = w;
    Word cur = detail::peel_to_core(alphabet, w, witness.steps);
    if (!cur.empty()) {
        const auto moves = enumerate_second_kind(alphabet, true);
        for (;;) {
            const WhiteheadGraph graph(CyclicWord(cur), alphabet);
            std::int64_t best = 0;
            const SecondKind* chosen = nullptr;
            for (const auto& tau : moves) {
                const std::int64_t change = length_change(graph, tau);
                if (change < best) {
                    best = change;
                    chosen = &tau;
                }
            }
            if (chosen == nullptr) break;
            witness.steps.emplace_back(*chosen);
            cur = detail::peel_to_core(alphabet, chosen->apply(cur), witness.steps);
        }
    }
    witness.target = cur;
    return {CyclicWord(cur), std::move(witness)};
}

/// Strict minimality: every non-inner second-kind automorphism strictly
/// increases the cyclic length.
inline bool is_strictly_minimal(const CyclicWord& w, const Alphabet& alphabet) {
    if (w.empty())
        throw std::invalid_argument("strict minimality requires a nontrivial word");
    const WhiteheadGraph graph(w, alphabet);
    for (const auto& tau : enumerate_second_kind(alphabet, true))
        if (length_change(graph, tau) <= 0) return false;
    return true;
}

/// Largest admissible epsilon for the frequency criterion:
/// (2k-3) / (k(2k-1)(4k-3)), exclusive.
inline Rational epsilon_upper_bound(const Alphabet& alphabet) {
    const int k = alphabet.rank();
    return Rational(2 * k - 3, k * (2 * k - 1) * (4 * k - 3));
}

/// Default epsilon, half the admissible bound: (2k-3) / (2k(2k-1)(4k-3)).
inline Rational default_epsilon(const Alphabet& alphabet) {
    const int k = alphabet.rank();
    return Rational(2 * k - 3, 2 * k * (2 * k - 1) * (4 * k - 3));
}

/// Frequency criterion L(eps): every letter frequency lies strictly within
/// eps/2 of 1/2k and every edge label of the Whitehead graph, divided by the
/// length, lies strictly within eps of 1/(k(2k-1)). Satisfying it forces
/// strict minimality when 0 < eps < epsilon_upper_bound.
inline bool frequency_criterion(const CyclicWord& w, const Alphabet& alphabet,
                                const Rational& eps) {
    if (w.empty())
        throw std::invalid_argument("frequency criterion requires a nontrivial word");
    if (!(eps > Rational(0) && eps < epsilon_upper_bound(alphabet)))
        throw std::domain_error("epsilon must lie in (0, " +
                                to_string(epsilon_upper_bound(alphabet)) + "), got " +
                                to_string(eps));
    const int k = alphabet.rank();
    const auto n = static_cast<BigInt>(w.size());

    std::vector<std::int64_t> letter_count(static_cast<std::size_t>(alphabet.size()), 0);
    for (Letter x : w.letters()) ++letter_count[x.code()];
    const Rational letter_target(1, 2 * k);
    const Rational half_eps = eps / 2;
    for (int c = 0; c < alphabet.size(); ++c) {
        const Rational f(letter_count[static_cast<std::size_t>(c)], n);
        if (f <= letter_target - half_eps || f >= letter_target + half_eps) return false;
    }

    const WhiteheadGraph graph(w, alphabet);
    const Rational edge_target(1, k * (2 * k - 1));
    for (int p = 0; p < alphabet.size(); ++p)
        for (int q = p + 1; q < alphabet.size(); ++q) {
            const Rational f(graph.label(Letter(static_cast<unsigned>(p)), Letter(static_cast<unsigned>(q))), n);
            if (f <= edge_target - eps || f >= edge_target + eps) return false;
        }
    return true;
}

inline bool frequency_criterion(const CyclicWord& w, const Alphabet& alphabet) {
    return frequency_criterion(w, alphabet, default_epsilon(alphabet));
}

/// Test-stable words: strictly minimal, not a proper power, and no
/// nontrivial relabeling carries the word to a rotation of itself.
inline bool is_ts(const CyclicWord& w, const Alphabet& alphabet) {
    if (w.empty())
        throw std::invalid_argument("test stability requires a nontrivial word");
    if (!is_strictly_minimal(w, alphabet)) return false;
    if (is_proper_power(w)) return false;
    for (const auto& rho : enumerate_relabelings(alphabet)) {
        if (rho.is_identity()) continue;
        if (rotation_offset(rho.apply(w.word()).span(), w.span()).has_value()) return false;
    }
    return true;
}

/// Z words: test-stable and no relabeling carries the word to a rotation of
/// its inverse.
inline bool is_z(const CyclicWord& w, const Alphabet& alphabet) {
    if (!is_ts(w, alphabet)) return false;
    const Word inv = w.word().inverse();
    for (const auto& rho : enumerate_relabelings(alphabet))
        if (rotation_offset(rho.apply(w.word()).span(), inv.letters()).has_value()) return false;
    return true;
}

namespace detail {

struct ClosureEdge {
    std::string parent;
    Automorphism move;
};

struct Closure {
    std::map<std::string, std::optional<ClosureEdge>> nodes;
    bool saturated = true;
    bool found_target = false;
};

/// Breadth-first closure of a cyclic word under Whitehead moves whose image
/// keeps cyclic length at most max_length, deduplicated by canonical
/// rotation. The budget caps the number of discovered nodes; exceeding it
/// stops the search with saturated = false. Frontiers are processed in
/// lexicographic order per depth, so the closure and its parent edges are
/// deterministic.
inline Closure whitehead_closure(const CyclicWord& start, const Alphabet& alphabet,
                                 std::size_t max_length, std::uint64_t budget,
                                 const std::optional<std::string>& target_key) {
    Closure out;
    if (start.size() > max_length)
        throw std::invalid_argument("closure start exceeds the length cap");
    if (budget == 0) {
        out.saturated = false;
        return out;
    }
    const std::string root = closure_key(start.canonicalized().span());
    out.nodes.emplace(root, std::nullopt);
    if (target_key && *target_key == root) {
        out.found_target = true;
        return out;
    }

    const auto relabelings = enumerate_relabelings(alphabet);
    const auto second = enumerate_second_kind(alphabet, true);

    std::vector<std::string> frontier{root};
    while (!frontier.empty()) {
        std::vector<std::string> next;
        for (const std::string& key : frontier) {
            const Word rep = closure_word(key);
            if (rep.empty()) continue;

            auto visit = [&](const Word& image, const Automorphism& move) -> bool {
                const CyclicWord core = cyclic_reduce(image).core;
                std::string child = closure_key(core.canonicalized().span());
                if (out.nodes.contains(child)) return true;
                if (out.nodes.size() + 1 > budget) {
                    out.saturated = false;
                    return false;
                }
                out.nodes.emplace(child, ClosureEdge{key, move});
                if (target_key && *target_key == child) {
                    out.found_target = true;
                    return false;
                }
                next.push_back(std::move(child));
                return true;
            };

            for (const auto& rho : relabelings) {
                if (rho.is_identity()) continue;
                if (!visit(rho.apply(rep), Automorphism(rho))) return out;
            }
            const WhiteheadGraph graph(CyclicWord(rep), alphabet);
            for (const auto& tau : second) {
                const std::int64_t change = length_change(graph, tau);
                if (static_cast<std::int64_t>(rep.size()) + change >
                    static_cast<std::int64_t>(max_length))
                    continue;
                if (!visit(tau.apply(rep), Automorphism(tau))) return out;
            }
        }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

/// Moves along the parent edges from the root to the given node.
inline std::vector<Automorphism> closure_path(const Closure& closure, const std::string& node) {
    std::vector<Automorphism> path;
    std::string cur = node;
    for (;;) {
        const auto& edge = closure.nodes.at(cur);
        if (!edge.has_value()) break;
        path.push_back(edge->move);
        cur = edge->parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace detail

/// The set of orbit elements sharing the minimal cyclic length, as canonical
/// rotations. Conjugacy (rotation) is quotiented; inversion is not.
struct LevelSet {
    std::vector<CyclicWord> classes;
    bool saturated = true;
};

/// Closure of a minimal cyclic word under length-preserving Whitehead moves.
/// Throws if w is not minimal.
inline LevelSet orbit_level_set(const CyclicWord& w, const Alphabet& alphabet,
                                std::uint64_t budget = 1'000'000) {
    if (!w.empty()) {
        const WhiteheadGraph graph(w, alphabet);
        for (const auto& tau : enumerate_second_kind(alphabet, true))
            if (length_change(graph, tau) < 0)
                throw std::invalid_argument("orbit level set requires a minimal word");
    }
    const auto closure = detail::whitehead_closure(w, alphabet, w.size(), budget, std::nullopt);
    LevelSet out;
    out.saturated = closure.saturated;
    out.classes.reserve(closure.nodes.size());
    for (const auto& [key, edge] : closure.nodes)
        out.classes.emplace_back(detail::closure_word(key));
    return out;
}

enum class Verdict { equivalent, inequivalent, undecided };

struct EquivalenceOptions {
    std::uint64_t budget = 1'000'000;
    bool use_fast_path = true;
};

struct EquivalenceDecision {
    Verdict verdict = Verdict::undecided;
    std::optional<WitnessChain> witness;
    std::uint64_t nodes_explored = 0;
    bool fast_path = false;
};

namespace detail {

inline WitnessChain splice_witness(const Word& source, const Word& target,
                                   const WitnessChain& head, std::vector<Automorphism> middle,
                                   const WitnessChain& tail) {
    WitnessChain out;
    out.source = source;
    out.target = target;
    out.steps = head.steps;
    append_steps(out.steps, middle);
    append_steps(out.steps, invert_steps(tail.steps));
    return out;
}

/// Relabeling-plus-rotation match: steps carrying `from` to `to`, two
/// cyclically reduced words of equal length, if some relabeling of `from`
/// is a rotation of `to`.
inline std::optional<std::vector<Automorphism>> relabeling_rotation_steps(
        const Word& from, const Word& to, const Alphabet& alphabet) {
    for (const auto& rho : enumerate_relabelings(alphabet)) {
        const Word image = rho.apply(from);
        const auto offset = rotation_offset(image.span(), to.letters());
        if (!offset.has_value()) continue;
        std::vector<Automorphism> steps;
        if (!rho.is_identity()) steps.emplace_back(rho);
        rotate_recording(alphabet, image, *offset, steps);
        return steps;
    }
    return std::nullopt;
}

} // namespace detail

/// Whitehead's algorithm for automorphic equivalence. Minimize both words;
/// unequal minimal lengths are inequivalent. If a minimal form is strictly
/// minimal, the orbit question reduces to a relabeling-plus-rotation match.
/// Otherwise search the common level set by peak reduction, within budget.
inline EquivalenceDecision are_aut_equivalent(const Word& u, const Word& v,
                                              const Alphabet& alphabet,
                                              const EquivalenceOptions& options = {}) {
    EquivalenceDecision out;
    const MinimizationResult mu = minimize(u, alphabet);
    const MinimizationResult mv = minimize(v, alphabet);
    if (mu.minimal.size() != mv.minimal.size()) {
        out.verdict = Verdict::inequivalent;
        return out;
    }
    const Word& mu_rep = mu.witness.target;
    const Word& mv_rep = mv.witness.target;
    if (mu.minimal.empty()) {
        out.verdict = Verdict::equivalent;
        out.witness = detail::splice_witness(u, v, mu.witness, {}, mv.witness);
        return out;
    }

    if (options.use_fast_path) {
        if (is_strictly_minimal(mu.minimal, alphabet)) {
            out.fast_path = true;
            auto middle = detail::relabeling_rotation_steps(mu_rep, mv_rep, alphabet);
            if (middle.has_value()) {
                out.verdict = Verdict::equivalent;
                out.witness = detail::splice_witness(u, v, mu.witness, std::move(*middle), mv.witness);
            } else {
                out.verdict = Verdict::inequivalent;
            }
            return out;
        }
        if (is_strictly_minimal(mv.minimal, alphabet)) {
            out.fast_path = true;
            auto middle = detail::relabeling_rotation_steps(mv_rep, mu_rep, alphabet);
            if (middle.has_value()) {
                out.verdict = Verdict::equivalent;
                out.witness = detail::splice_witness(u, v, mu.witness,
                                                     detail::invert_steps(*middle), mv.witness);
            } else {
                out.verdict = Verdict::inequivalent;
            }
            return out;
        }
    }

    const std::string target = detail::closure_key(mv.minimal.canonicalized().span());
    const auto closure = detail::whitehead_closure(mu.minimal, alphabet, mu.minimal.size(),
                                                   options.budget, target);
    out.nodes_explored = closure.nodes.size();
    if (!closure.found_target) {
        out.verdict = closure.saturated ? Verdict::inequivalent : Verdict::undecided;
        return out;
    }

    // Replay the closure path on concrete rotations to record every step.
    std::vector<Automorphism> middle;
    Word cur = mu_rep;
    cur = detail::rotate_recording(alphabet, cur,
                                   detail::least_rotation_index(cur.span()), middle);
    for (const auto& move : detail::closure_path(closure, target)) {
        middle.push_back(move);
        cur = detail::peel_to_core(alphabet, whitehead::apply(move, cur), middle);
        cur = detail::rotate_recording(alphabet, cur,
                                       detail::least_rotation_index(cur.span()), middle);
    }
    const auto back = rotation_offset(cur.letters(), mv_rep.letters());
    cur = detail::rotate_recording(alphabet, cur, back.value(), middle);
    out.verdict = Verdict::equivalent;
    out.witness = detail::splice_witness(u, v, mu.witness, std::move(middle), mv.witness);
    return out;
}

enum class StabilizerConclusion { cyclic_generated_by_ad_w, finite_extension, unknown };

/// What the classification says about the stabilizer of w under Aut(F_k):
/// for test-stable cores the stabilizer of the conjugacy class is generated
/// by conjugation by w itself; strictly minimal cores admit at most the
/// listed relabeling symmetries on top; otherwise nothing is claimed.
struct StabilizerReport {
    bool sm = false;
    bool sm_prime = false;
    bool ts = false;
    bool ts_prime = false;
    bool z = false;
    StabilizerConclusion conclusion = StabilizerConclusion::unknown;
    std::vector<Relabeling> symmetries;
};

inline StabilizerReport stabilizer_report(const Word& w, const Alphabet& alphabet) {
    if (w.empty())
        throw std::invalid_argument("stabilizer report requires a nontrivial word");
    const CyclicWord core = cyclic_reduce(w).core;
    const bool cyclically_reduced = core.size() == w.size();
    StabilizerReport out;
    out.sm_prime = is_strictly_minimal(core, alphabet);
    out.sm = cyclically_reduced && out.sm_prime;
    out.ts_prime = out.sm_prime && is_ts(core, alphabet);
    out.ts = cyclically_reduced && out.ts_prime;
    out.z = out.ts_prime && is_z(core, alphabet);
    if (out.ts_prime) {
        out.conclusion = StabilizerConclusion::cyclic_generated_by_ad_w;
    } else if (out.sm_prime) {
        out.conclusion = StabilizerConclusion::finite_extension;
        for (const auto& rho : enumerate_relabelings(alphabet)) {
            if (rho.is_identity()) continue;
            if (rotation_offset(rho.apply(core.word()).span(), core.span()).has_value())
                out.symmetries.push_back(rho);
        }
    }
    return out;
}

} // namespace whitehead
