#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <variant>
#include <vector>

#include "whitehead/word.hpp"

namespace whitehead {

/// Whitehead automorphism of the first kind: a permutation of the letters
/// that commutes with inversion (a signed permutation of the generators).
class Relabeling {
public:
    /// Images of the generators a_1..a_k; the images of inverses follow.
    Relabeling(const Alphabet& alphabet, const std::vector<Letter>& generator_images)
        : rank_(alphabet.rank()) {
        if (static_cast<int>(generator_images.size()) != rank_)
            throw std::invalid_argument("expected one image per generator");
        std::vector<bool> seen(static_cast<std::size_t>(rank_), false);
        for (int i = 0; i < rank_; ++i) {
            const Letter img = generator_images[static_cast<std::size_t>(i)];
            alphabet.require(img);
            if (seen[static_cast<std::size_t>(img.index() - 1)])
                throw std::invalid_argument("generator images do not form a permutation");
            seen[static_cast<std::size_t>(img.index() - 1)] = true;
            image_[static_cast<std::size_t>(2 * i)] = img;
            image_[static_cast<std::size_t>(2 * i + 1)] = img.inverse();
        }
    }

    static Relabeling identity(const Alphabet& alphabet) {
        std::vector<Letter> images;
        for (int i = 1; i <= alphabet.rank(); ++i) images.push_back(Letter::generator(i, +1));
        return Relabeling(alphabet, images);
    }

    int rank() const { return rank_; }

    Letter image(Letter x) const {
        if (x.code() >= static_cast<unsigned>(2 * rank_))
            throw std::invalid_argument("letter is outside the automorphism's alphabet");
        return image_[x.code()];
    }

    bool is_identity() const {
        for (int c = 0; c < 2 * rank_; ++c)
            if (image_[static_cast<std::size_t>(c)].code() != static_cast<unsigned>(c)) return false;
        return true;
    }

    Relabeling inverse() const {
        Relabeling out = *this;
        for (int c = 0; c < 2 * rank_; ++c)
            out.image_[image_[static_cast<std::size_t>(c)].code()] = Letter(static_cast<unsigned>(c));
        return out;
    }

    Word apply(const Word& w) const {
        std::vector<Letter> out;
        out.reserve(w.size());
        for (Letter x : w) out.push_back(image(x));
        return Word::from_reduced(std::move(out));
    }

    friend bool operator==(const Relabeling& lhs, const Relabeling& rhs) {
        return lhs.rank_ == rhs.rank_ &&
               std::equal(lhs.image_.begin(), lhs.image_.begin() + 2 * lhs.rank_, rhs.image_.begin());
    }

private:
    int rank_;
    std::array<Letter, 52> image_{};
};

/// Whitehead automorphism of the second kind, given by its characteristic
/// pair (A, a): the multiplier a lies in A, a^-1 does not, and letters map to
///   x a      if x in A, x^-1 not in A,
///   a^-1 x   if x not in A, x^-1 in A,
///   a^-1 x a if both x and x^-1 are in A,
///   x        otherwise,
/// with a and a^-1 fixed. The set A is stored as a bitmask over letter codes.
class SecondKind {
public:
    SecondKind(const Alphabet& alphabet, std::uint64_t set, Letter multiplier)
        : rank_(alphabet.rank()), set_(set), multiplier_(multiplier) {
        alphabet.require(multiplier);
        if (set >> alphabet.size())
            throw std::invalid_argument("characteristic set contains letters outside the alphabet");
        if (!(set & bit(multiplier)))
            throw std::invalid_argument("characteristic set must contain the multiplier");
        if (set & bit(multiplier.inverse()))
            throw std::invalid_argument("characteristic set must not contain the multiplier's inverse");
    }

    /// The inner automorphism w -> c^-1 w c, as the pair (S \ {c^-1}, c).
    static SecondKind conjugation_by(const Alphabet& alphabet, Letter c) {
        const std::uint64_t all = (std::uint64_t{1} << alphabet.size()) - 1;
        return SecondKind(alphabet, all & ~bit(c.inverse()), c);
    }

    int rank() const { return rank_; }
    std::uint64_t set() const { return set_; }
    Letter multiplier() const { return multiplier_; }
    bool contains(Letter x) const { return (set_ & bit(x)) != 0; }

    /// A = {a}: every letter is fixed.
    bool is_identity() const { return set_ == bit(multiplier_); }

    /// A = S \ {a^-1}: the map is conjugation by the multiplier.
    bool is_inner() const {
        const std::uint64_t all = (std::uint64_t{1} << (2 * rank_)) - 1;
        return set_ == (all & ~bit(multiplier_.inverse()));
    }

    /// The inverse pair is ((A \ {a}) + {a^-1}, a^-1).
    SecondKind inverse() const {
        SecondKind out = *this;
        out.multiplier_ = multiplier_.inverse();
        out.set_ = (set_ & ~bit(multiplier_)) | bit(multiplier_.inverse());
        return out;
    }

    Word apply(const Word& w) const {
        const Letter a = multiplier_;
        const Letter ainv = a.inverse();
        std::vector<Letter> out;
        out.reserve(3 * w.size());
        for (Letter x : w) {
            if (x.code() >= static_cast<unsigned>(2 * rank_))
                throw std::invalid_argument("letter is outside the automorphism's alphabet");
            if (x == a || x == ainv) {
                detail::push_reduced(out, x);
                continue;
            }
            const bool in = contains(x);
            const bool inv_in = contains(x.inverse());
            if (inv_in) detail::push_reduced(out, ainv);
            detail::push_reduced(out, x);
            if (in) detail::push_reduced(out, a);
        }
        return Word::from_reduced(std::move(out));
    }

    friend bool operator==(const SecondKind&, const SecondKind&) = default;

private:
    static constexpr std::uint64_t bit(Letter x) { return std::uint64_t{1} << x.code(); }

    int rank_;
    std::uint64_t set_;
    Letter multiplier_;
};

using Automorphism = std::variant<Relabeling, SecondKind>;

inline Word apply(const Automorphism& tau, const Word& w) {
    return std::visit([&](const auto& t) { return t.apply(w); }, tau);
}

inline Automorphism inverse(const Automorphism& tau) {
    return std::visit([](const auto& t) { return Automorphism(t.inverse()); }, tau);
}

inline bool is_identity(const Automorphism& tau) {
    return std::visit([](const auto& t) { return t.is_identity(); }, tau);
}

/// True only for second-kind pairs that act as conjugation; relabelings and
/// the identity pair are not inner.
inline bool is_inner(const Automorphism& tau) {
    if (const auto* t = std::get_if<SecondKind>(&tau)) return t->is_inner() && !t->is_identity();
    return false;
}

enum class AutomorphismFilter { all, relabelings, second_kind, second_kind_noninner };

/// Enumerates all relabelings: generator permutations in lexicographic order,
/// and for each permutation all sign patterns as an ascending bitmask
/// (bit i flips the image of a_{i+1}). The identity comes first. 2^k k! total.
inline std::vector<Relabeling> enumerate_relabelings(const Alphabet& alphabet) {
    const int k = alphabet.rank();
    std::vector<Relabeling> out;
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 1);
    do {
        for (std::uint32_t signs = 0; signs < (std::uint32_t{1} << k); ++signs) {
            std::vector<Letter> images;
            images.reserve(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i)
                images.push_back(Letter::generator(perm[static_cast<std::size_t>(i)],
                                                   (signs >> i) & 1 ? -1 : +1));
            out.emplace_back(alphabet, images);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Enumerates second-kind automorphisms multiplier-major (letter code order);
/// for each multiplier the free part of A over S \ {a, a^-1} runs as an
/// ascending integer whose bits select letters in code order. 2k 2^(2k-2)
/// total, including the identity pair {a} and the inner pairs S \ {a^-1}.
inline std::vector<SecondKind> enumerate_second_kind(const Alphabet& alphabet,
                                                     bool noninner_only = false) {
    const int size = alphabet.size();
    std::vector<SecondKind> out;
    for (int code = 0; code < size; ++code) {
        const Letter a(static_cast<unsigned>(code));
        std::vector<int> free_codes;
        for (int c = 0; c < size; ++c)
            if (c != code && c != static_cast<int>(a.inverse().code())) free_codes.push_back(c);
        for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << free_codes.size()); ++pick) {
            std::uint64_t set = std::uint64_t{1} << code;
            for (std::size_t b = 0; b < free_codes.size(); ++b)
                if ((pick >> b) & 1) set |= std::uint64_t{1} << free_codes[b];
            SecondKind tau(alphabet, set, a);
            if (noninner_only && (tau.is_identity() || tau.is_inner())) continue;
            out.push_back(tau);
        }
    }
    return out;
}

/// Deterministic enumeration: relabelings first, then second-kind pairs.
inline std::vector<Automorphism> enumerate_automorphisms(const Alphabet& alphabet,
                                                         AutomorphismFilter filter) {
    std::vector<Automorphism> out;
    if (filter == AutomorphismFilter::all || filter == AutomorphismFilter::relabelings)
        for (auto& t : enumerate_relabelings(alphabet)) out.emplace_back(std::move(t));
    if (filter == AutomorphismFilter::all || filter == AutomorphismFilter::second_kind ||
        filter == AutomorphismFilter::second_kind_noninner)
        for (auto& t : enumerate_second_kind(
                 alphabet, filter == AutomorphismFilter::second_kind_noninner))
            out.emplace_back(std::move(t));
    return out;
}

} // namespace whitehead
