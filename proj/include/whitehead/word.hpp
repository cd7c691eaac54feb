#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "whitehead/alphabet.hpp"

namespace whitehead {

class Word;

namespace detail {

/// Appends x to a letter stack, cancelling against the top if it is x^-1.
inline void push_reduced(std::vector<Letter>& stack, Letter x) {
    if (!stack.empty() && stack.back() == x.inverse())
        stack.pop_back();
    else
        stack.push_back(x);
}

/// KMP failure table: pi[i] is the longest proper border of s[0..i).
inline std::vector<std::size_t> failure_function(std::span<const Letter> s) {
    std::vector<std::size_t> pi(s.size() + 1, 0);
    std::size_t k = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        while (k > 0 && s[i] != s[k]) k = pi[k];
        if (s[i] == s[k]) ++k;
        pi[i + 1] = k;
    }
    return pi;
}

/// First occurrence of needle in haystack, or npos. Empty needle matches at 0.
inline std::size_t kmp_find(std::span<const Letter> haystack, std::span<const Letter> needle) {
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    if (needle.empty()) return 0;
    if (needle.size() > haystack.size()) return npos;
    const auto pi = failure_function(needle);
    std::size_t k = 0;
    for (std::size_t i = 0; i < haystack.size(); ++i) {
        while (k > 0 && haystack[i] != needle[k]) k = pi[k];
        if (haystack[i] == needle[k]) ++k;
        if (k == needle.size()) return i + 1 - k;
    }
    return npos;
}

/// Booth's least-rotation algorithm: index of the lexicographically smallest
/// rotation under the letter code order.
inline std::size_t least_rotation_index(std::span<const Letter> s) {
    const std::size_t n = s.size();
    if (n == 0) return 0;
    auto at = [&](std::size_t i) { return s[i % n].code(); };
    std::size_t i = 0, j = 1, k = 0;
    while (i < n && j < n && k < n) {
        const auto a = at(i + k), b = at(j + k);
        if (a == b) {
            ++k;
            continue;
        }
        if (a > b) {
            i = i + k + 1;
            if (i == j) ++i;
        } else {
            j = j + k + 1;
            if (i == j) ++j;
        }
        k = 0;
    }
    return std::min(i, j);
}

} // namespace detail

/// A freely reduced word. The empty word is the identity.
class Word {
public:
    Word() = default;

    /// Wraps a letter sequence that is already freely reduced.
    static Word from_reduced(std::vector<Letter> letters) {
        for (std::size_t i = 0; i + 1 < letters.size(); ++i)
            if (letters[i] == letters[i + 1].inverse())
                throw std::invalid_argument("letter sequence is not freely reduced at position " +
                                            std::to_string(i));
        Word w;
        w.letters_ = std::move(letters);
        return w;
    }

    const std::vector<Letter>& letters() const { return letters_; }
    std::span<const Letter> span() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Letter operator[](std::size_t i) const { return letters_[i]; }
    auto begin() const { return letters_.begin(); }
    auto end() const { return letters_.end(); }

    Word inverse() const {
        std::vector<Letter> out;
        out.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            out.push_back(it->inverse());
        Word w;
        w.letters_ = std::move(out);
        return w;
    }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& lhs, const Word& rhs) {
        return std::lexicographical_compare_three_way(
            lhs.letters_.begin(), lhs.letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
    }

private:
    friend Word free_reduce(std::span<const Letter>);
    std::vector<Letter> letters_;
};

/// Freely reduces a raw letter sequence.
inline Word free_reduce(std::span<const Letter> raw) {
    Word w;
    w.letters_.reserve(raw.size());
    for (Letter x : raw) detail::push_reduced(w.letters_, x);
    return w;
}

/// Parses text into a raw (unreduced) letter sequence.
inline std::vector<Letter> parse_letters(std::string_view text, const Alphabet& alphabet) {
    std::vector<Letter> out;
    out.reserve(text.size());
    for (char c : text) out.push_back(alphabet.from_char(c));
    return out;
}

/// Parses text and freely reduces it.
inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
    return free_reduce(parse_letters(text, alphabet));
}

inline std::string to_string(std::span<const Letter> letters, const Alphabet& alphabet) {
    std::string out;
    out.reserve(letters.size());
    for (Letter x : letters) out.push_back(alphabet.to_char(x));
    return out;
}

inline std::string to_string(const Word& w, const Alphabet& alphabet) {
    return to_string(w.span(), alphabet);
}

/// A cyclically reduced word, i.e. a conjugacy class representative.
/// Kept as a concrete rotation; `canonical()` says whether the stored
/// rotation is the lexicographically least one.
class CyclicWord {
public:
    CyclicWord() : canonical_(true) {}

    /// Wraps an already cyclically reduced word.
    explicit CyclicWord(const Word& w) : letters_(w.letters()) {
        if (!w.empty() && w.letters().front() == w.letters().back().inverse())
            throw std::invalid_argument("word is not cyclically reduced");
        canonical_ = detail::least_rotation_index(letters_) == 0;
    }

    const std::vector<Letter>& letters() const { return letters_; }
    std::span<const Letter> span() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    bool canonical() const { return canonical_; }

    Word word() const { return Word::from_reduced(letters_); }

    CyclicWord rotated(std::size_t offset) const {
        if (empty()) return *this;
        offset %= size();
        std::vector<Letter> out;
        out.reserve(size());
        out.insert(out.end(), letters_.begin() + static_cast<std::ptrdiff_t>(offset), letters_.end());
        out.insert(out.end(), letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(offset));
        return CyclicWord(Word::from_reduced(std::move(out)));
    }

    /// The canonical rotation of this cyclic word.
    CyclicWord canonicalized() const {
        if (canonical_) return *this;
        return rotated(detail::least_rotation_index(letters_));
    }

    CyclicWord inverse() const { return CyclicWord(word().inverse()); }

    friend bool operator==(const CyclicWord& lhs, const CyclicWord& rhs) {
        return lhs.letters_ == rhs.letters_;
    }
    friend auto operator<=>(const CyclicWord& lhs, const CyclicWord& rhs) {
        return std::lexicographical_compare_three_way(
            lhs.letters_.begin(), lhs.letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
    }

private:
    std::vector<Letter> letters_;
    bool canonical_;
};

/// Result of cyclic reduction: w = conjugator * core * conjugator^-1.
struct CyclicDecomposition {
    CyclicWord core;
    Word conjugator;
};

inline CyclicDecomposition cyclic_reduce(const Word& w) {
    const auto& s = w.letters();
    std::size_t lo = 0, hi = s.size();
    while (hi - lo >= 2 && s[lo] == s[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    CyclicDecomposition out;
    out.conjugator = Word::from_reduced(std::vector<Letter>(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(lo)));
    out.core = CyclicWord(Word::from_reduced(std::vector<Letter>(s.begin() + static_cast<std::ptrdiff_t>(lo),
                                                                 s.begin() + static_cast<std::ptrdiff_t>(hi))));
    return out;
}

/// Cyclic length ||w||, the length of the cyclic core.
inline std::size_t cyclic_length(const Word& w) {
    return cyclic_reduce(w).core.size();
}

/// Offset r with rotate-left(u, r) == v, if u and v are rotations of each
/// other. Works on cyclically reduced letter sequences of equal length.
inline std::optional<std::size_t> rotation_offset(std::span<const Letter> u,
                                                  std::span<const Letter> v) {
    if (u.size() != v.size()) return std::nullopt;
    if (u.empty()) return 0;
    std::vector<Letter> doubled;
    doubled.reserve(2 * u.size());
    doubled.insert(doubled.end(), u.begin(), u.end());
    doubled.insert(doubled.end(), u.begin(), u.end());
    const std::size_t pos = detail::kmp_find(doubled, v);
    if (pos == static_cast<std::size_t>(-1)) return std::nullopt;
    return pos % u.size();
}

/// Conjugacy test: cyclic cores must be rotations of each other.
inline bool is_conjugate(const Word& u, const Word& v) {
    const CyclicWord cu = cyclic_reduce(u).core;
    const CyclicWord cv = cyclic_reduce(v).core;
    return rotation_offset(cu.span(), cv.span()).has_value();
}

/// Whether w is a proper power u^m, m >= 2, decided by the smallest period
/// of the canonical rotation.
inline bool is_proper_power(const CyclicWord& w) {
    if (w.empty())
        throw std::invalid_argument("proper power test requires a nontrivial word");
    const CyclicWord canon = w.canonicalized();
    const std::size_t n = canon.size();
    const auto pi = detail::failure_function(canon.span());
    const std::size_t period = n - pi[n];
    return period < n && n % period == 0;
}

inline bool is_proper_power(const Word& w) {
    return is_proper_power(cyclic_reduce(w).core);
}

} // namespace whitehead
