#pragma once

#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "whitehead/alphabet.hpp"

namespace whitehead {

using BigInt = boost::multiprecision::cpp_int;

enum class CountMode { reduced, ball, cyclic };

namespace detail {

/// Square matrix with exact integer entries, sized 2k x 2k.
class BigMatrix {
public:
    explicit BigMatrix(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim) {}

    BigInt& at(int r, int c) { return data_[static_cast<std::size_t>(r) * dim_ + c]; }
    const BigInt& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * dim_ + c]; }
    int dim() const { return dim_; }

    static BigMatrix identity(int dim) {
        BigMatrix m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
        return m;
    }

    BigMatrix operator*(const BigMatrix& rhs) const {
        BigMatrix out(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int l = 0; l < dim_; ++l) {
                const BigInt& a = at(i, l);
                if (a == 0) continue;
                for (int j = 0; j < dim_; ++j) out.at(i, j) += a * rhs.at(l, j);
            }
        return out;
    }

    BigMatrix pow(int exponent) const {
        BigMatrix result = identity(dim_);
        BigMatrix base = *this;
        while (exponent > 0) {
            if (exponent & 1) result = result * base;
            base = base * base;
            exponent >>= 1;
        }
        return result;
    }

    BigInt trace() const {
        BigInt t = 0;
        for (int i = 0; i < dim_; ++i) t += at(i, i);
        return t;
    }

private:
    int dim_;
    std::vector<BigInt> data_;
};

/// Adjacency matrix of admissible transitions: entry (x, y) is 1 unless
/// y is the inverse of x.
inline BigMatrix transition_matrix(const Alphabet& alphabet) {
    const int dim = alphabet.size();
    BigMatrix m(dim);
    for (int x = 0; x < dim; ++x)
        for (int y = 0; y < dim; ++y)
            if (Letter(static_cast<unsigned>(y)) != Letter(static_cast<unsigned>(x)).inverse())
                m.at(x, y) = 1;
    return m;
}

} // namespace detail

/// Exact counts of words of F_k:
///   reduced: freely reduced words of length exactly n, 2k(2k-1)^(n-1);
///   ball:    freely reduced words of length at most n;
///   cyclic:  cyclically reduced words of length exactly n, the trace of the
///            n-th power of the transition matrix.
inline BigInt count_words(int length, const Alphabet& alphabet, CountMode mode) {
    if (length < 0) throw std::invalid_argument("word length must be nonnegative");
    const int k = alphabet.rank();
    switch (mode) {
        case CountMode::reduced: {
            if (length == 0) return 1;
            BigInt count = 2 * k;
            for (int i = 1; i < length; ++i) count *= 2 * k - 1;
            return count;
        }
        case CountMode::ball: {
            BigInt pow = 1;
            for (int i = 0; i < length; ++i) pow *= 2 * k - 1;
            return 1 + k * (pow - 1) / (k - 1);
        }
        case CountMode::cyclic: {
            if (length == 0) return 1;
            return detail::transition_matrix(alphabet).pow(length).trace();
        }
    }
    throw std::invalid_argument("unknown count mode");
}

} // namespace whitehead
