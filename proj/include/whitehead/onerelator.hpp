#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "whitehead/classify.hpp"
#include "whitehead/counting.hpp"
#include "whitehead/word.hpp"

namespace whitehead {

/// Classification of a one-relator presentation <a_1..a_k | u>. The
/// rigidity verdict is conditional throughout: for words in Z the relator
/// is recoverable from the group up to relabeling, rotation and inversion,
/// assuming the generic rigidity hypothesis for rank k.
struct RelatorReport {
    Word word;
    CyclicWord core;
    bool sm = false;
    bool ts = false;
    bool z = false;
    bool proper_power = false;
    bool primitive = false;
    bool generic_conditional = false; // rigidity applies, conditionally
};

inline RelatorReport classify_relator(const Word& u, const Alphabet& alphabet) {
    if (u.empty())
        throw std::invalid_argument("relator classification requires a nontrivial word");
    RelatorReport out;
    out.word = u;
    out.core = cyclic_reduce(u).core;
    out.sm = is_strictly_minimal(out.core, alphabet);
    out.ts = out.sm && is_ts(out.core, alphabet);
    out.z = out.ts && is_z(out.core, alphabet);
    out.proper_power = is_proper_power(out.core);
    out.primitive = minimize(u, alphabet).minimal.size() == 1;
    out.generic_conditional = out.z;
    return out;
}

enum class IsoVerdict { isomorphic, not_isomorphic, undecided };

/// Decision for G_u vs G_v with a reconstruction: when isomorphic, applying
/// the relabeling to the core of u and rotating left by `rotation` yields
/// the minimized v, inverted first when `inverted` is set.
struct IsoDecision {
    IsoVerdict verdict = IsoVerdict::undecided;
    std::optional<Relabeling> relabeling;
    std::size_t rotation = 0;
    bool inverted = false;
    Word v_minimal;
    std::string note;
};

/// One-relator isomorphism for generic relators: requires u in Z (otherwise
/// undecided), minimizes v, and searches for a relabeling carrying the core
/// of u to a rotation of the minimized v or of its inverse. Soundness of
/// the negative answer is conditional on the generic rigidity hypothesis.
inline IsoDecision isomorphic_generic(const Word& u, const Word& v, const Alphabet& alphabet) {
    if (u.empty() || v.empty())
        throw std::invalid_argument("isomorphism test requires nontrivial relators");
    IsoDecision out;
    const CyclicWord core = cyclic_reduce(u).core;
    if (!is_z(core, alphabet)) {
        out.verdict = IsoVerdict::undecided;
        out.note = "relator is not in Z; the generic classification does not apply";
        return out;
    }
    const MinimizationResult mv = minimize(v, alphabet);
    out.v_minimal = mv.witness.target;
    if (core.size() != mv.minimal.size()) {
        out.verdict = IsoVerdict::not_isomorphic;
        return out;
    }
    const Word forward = mv.witness.target;
    const Word backward = forward.inverse();
    for (const auto& rho : enumerate_relabelings(alphabet)) {
        const Word image = rho.apply(core.word());
        if (const auto offset = rotation_offset(image.span(), forward.letters())) {
            out.verdict = IsoVerdict::isomorphic;
            out.relabeling = rho;
            out.rotation = *offset;
            out.inverted = false;
            return out;
        }
        if (const auto offset = rotation_offset(image.span(), backward.letters())) {
            out.verdict = IsoVerdict::isomorphic;
            out.relabeling = rho;
            out.rotation = *offset;
            out.inverted = true;
            return out;
        }
    }
    out.verdict = IsoVerdict::not_isomorphic;
    return out;
}

struct RelatorClassCount {
    BigInt words = 0;        // cyclically reduced words of the length
    std::uint64_t classes = 0;
    bool exact = true;       // false when some pair was undecided in budget
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

inline void enumerate_cyclic_words(const Alphabet& alphabet, int length,
                                   std::vector<Letter>& stack,
                                   std::vector<CyclicWord>& out) {
    if (static_cast<int>(stack.size()) == length) {
        if (stack.front() != stack.back().inverse())
            out.emplace_back(Word::from_reduced(stack));
        return;
    }
    for (int c = 0; c < alphabet.size(); ++c) {
        const Letter x(static_cast<unsigned>(c));
        if (!stack.empty() && x == stack.back().inverse()) continue;
        stack.push_back(x);
        enumerate_cyclic_words(alphabet, length, stack, out);
        stack.pop_back();
    }
}

} // namespace detail

/// Partitions the cyclically reduced words of the given length by the
/// relation u ~ v iff u is automorphically equivalent to v or to v^-1, and
/// counts the classes. For generic relators the classes are exactly the
/// isomorphism types of the one-relator groups, conditionally on the
/// rigidity hypothesis.
inline RelatorClassCount count_relator_classes(int length, const Alphabet& alphabet,
                                               std::uint64_t budget = 1'000'000) {
    if (length <= 0) throw std::invalid_argument("relator length must be positive");
    RelatorClassCount out;
    out.words = count_words(length, alphabet, CountMode::cyclic);

    // Conjugate words are automorphically equivalent, so it is enough to
    // partition canonical rotations.
    std::vector<CyclicWord> all;
    {
        std::vector<Letter> stack;
        detail::enumerate_cyclic_words(alphabet, length, stack, all);
    }
    std::map<std::string, std::size_t> reps;
    std::vector<Word> rep_words;
    for (const auto& w : all) {
        std::string key = detail::closure_key(w.canonicalized().span());
        if (reps.emplace(key, rep_words.size()).second)
            rep_words.push_back(detail::closure_word(key));
    }

    detail::UnionFind uf(rep_words.size());
    const EquivalenceOptions options{budget, true};
    for (std::size_t i = 0; i < rep_words.size(); ++i)
        for (std::size_t j = i + 1; j < rep_words.size(); ++j) {
            if (uf.find(i) == uf.find(j)) continue;
            const auto direct = are_aut_equivalent(rep_words[i], rep_words[j], alphabet, options);
            if (direct.verdict == Verdict::equivalent) {
                uf.unite(i, j);
                continue;
            }
            if (direct.verdict == Verdict::undecided) out.exact = false;
            const auto inverted =
                are_aut_equivalent(rep_words[i], rep_words[j].inverse(), alphabet, options);
            if (inverted.verdict == Verdict::equivalent)
                uf.unite(i, j);
            else if (inverted.verdict == Verdict::undecided)
                out.exact = false;
        }

    std::uint64_t classes = 0;
    for (std::size_t i = 0; i < rep_words.size(); ++i)
        if (uf.find(i) == i) ++classes;
    out.classes = classes;
    return out;
}

} // namespace whitehead
