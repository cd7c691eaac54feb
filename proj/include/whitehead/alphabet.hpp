#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace whitehead {

/// A generator of the free group or its inverse.
///
/// Letters are packed into a single byte: generator i (1-based) has code
/// 2*(i-1), its inverse has code 2*(i-1)+1. The code order
/// a < a^-1 < b < b^-1 < ... is the letter order used everywhere, in
/// particular for canonical rotations.
class Letter {
public:
    constexpr Letter() = default;
    constexpr explicit Letter(unsigned code) : code_(static_cast<std::uint8_t>(code)) {}

    static constexpr Letter generator(int index, int sign) {
        return Letter(static_cast<unsigned>(2 * (index - 1) + (sign < 0 ? 1 : 0)));
    }

    constexpr unsigned code() const { return code_; }
    constexpr int index() const { return static_cast<int>(code_ / 2) + 1; }
    constexpr int sign() const { return (code_ & 1u) ? -1 : +1; }
    constexpr Letter inverse() const { return Letter(code_ ^ 1u); }

    friend constexpr auto operator<=>(Letter, Letter) = default;

private:
    std::uint8_t code_ = 0;
};

/// Rank-k alphabet {a_1, a_1^-1, ..., a_k, a_k^-1} with the text encoding
/// a..z for generators and A..Z for their inverses.
class Alphabet {
public:
    explicit Alphabet(int rank) : rank_(rank) {
        if (rank < 2 || rank > 26)
            throw std::invalid_argument("alphabet rank must be between 2 and 26, got " +
                                        std::to_string(rank));
    }

    int rank() const { return rank_; }
    int size() const { return 2 * rank_; }

    bool contains(Letter x) const { return x.code() < static_cast<unsigned>(size()); }

    char to_char(Letter x) const {
        require(x);
        char base = x.sign() > 0 ? 'a' : 'A';
        return static_cast<char>(base + x.index() - 1);
    }

    Letter from_char(char c) const {
        Letter x;
        if (c >= 'a' && c <= 'z')
            x = Letter::generator(c - 'a' + 1, +1);
        else if (c >= 'A' && c <= 'Z')
            x = Letter::generator(c - 'A' + 1, -1);
        else
            throw std::invalid_argument(std::string("invalid letter '") + c + "'");
        if (!contains(x))
            throw std::invalid_argument(std::string("letter '") + c + "' is outside rank " +
                                        std::to_string(rank_));
        return x;
    }

    void require(Letter x) const {
        if (!contains(x))
            throw std::invalid_argument("letter code " + std::to_string(x.code()) +
                                        " is outside rank " + std::to_string(rank_));
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    int rank_;
};

} // namespace whitehead
