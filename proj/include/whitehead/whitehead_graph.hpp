#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "whitehead/automorphism.hpp"
#include "whitehead/word.hpp"

namespace whitehead {

/// Weighted Whitehead graph of a cyclic word: vertices are the 2k letters,
/// and each cyclic digram xy contributes 1 to the undirected edge {x^-1, y}.
/// An edge label therefore counts occurrences of xy together with y^-1 x^-1,
/// there are no loops, and the labels sum to the cyclic length.
class WhiteheadGraph {
public:
    WhiteheadGraph(const CyclicWord& w, const Alphabet& alphabet)
        : rank_(alphabet.rank()),
          total_(static_cast<std::int64_t>(w.size())),
          label_(static_cast<std::size_t>(alphabet.size()) * alphabet.size(), 0) {
        if (w.empty())
            throw std::invalid_argument("Whitehead graph requires a nontrivial word");
        const auto& s = w.letters();
        const std::size_t n = s.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Letter x = s[i];
            const Letter y = s[(i + 1) % n];
            alphabet.require(x);
            add_edge(x.inverse(), y);
        }
    }

    int rank() const { return rank_; }
    std::int64_t total() const { return total_; }

    std::int64_t label(Letter p, Letter q) const {
        return label_[static_cast<std::size_t>(p.code()) * (2 * rank_) + q.code()];
    }

    /// Sum of labels of edges incident to x; equals the number of
    /// occurrences of x plus occurrences of x^-1.
    std::int64_t degree(Letter x) const {
        std::int64_t d = 0;
        for (int c = 0; c < 2 * rank_; ++c) d += label(x, Letter(static_cast<unsigned>(c)));
        return d;
    }

    friend bool operator==(const WhiteheadGraph&, const WhiteheadGraph&) = default;

private:
    void add_edge(Letter p, Letter q) {
        label_[static_cast<std::size_t>(p.code()) * (2 * rank_) + q.code()] += 1;
        label_[static_cast<std::size_t>(q.code()) * (2 * rank_) + p.code()] += 1;
    }

    int rank_;
    std::int64_t total_;
    std::vector<std::int64_t> label_;
};

/// Predicted change of cyclic length under a second-kind automorphism with
/// pair (A, a): the sum of labels crossing between A^-1 and its complement,
/// minus the degree of the multiplier. The inverses enter because edges join
/// x^-1 to y: the multiplier appended to x and the inverse prepended to y
/// cancel exactly when x and y^-1 both lie in A, that is when both endpoints
/// of the edge lie in A^-1.
inline std::int64_t length_change(const WhiteheadGraph& graph, const SecondKind& tau) {
    if (graph.rank() != tau.rank())
        throw std::invalid_argument("graph and automorphism ranks differ");
    const int size = 2 * graph.rank();
    std::int64_t crossing = 0;
    for (int p = 0; p < size; ++p) {
        if (!tau.contains(Letter(static_cast<unsigned>(p)).inverse())) continue;
        for (int q = 0; q < size; ++q)
            if (!tau.contains(Letter(static_cast<unsigned>(q)).inverse()))
                crossing += graph.label(Letter(static_cast<unsigned>(p)), Letter(static_cast<unsigned>(q)));
    }
    return crossing - graph.degree(tau.multiplier());
}

} // namespace whitehead
