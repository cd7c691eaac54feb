#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "whitehead/rational.hpp"
#include "whitehead/word.hpp"

namespace whitehead {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// splitmix64 stream. Per-sample streams are split deterministically from
/// (seed, index) as mix64(seed + golden * (index + 1)), so samples can be
/// drawn in any order.
class Rng {
public:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;

    Rng(std::uint64_t seed, std::uint64_t index) : state_(mix64(seed + golden * (index + 1))) {}

    std::uint64_t next() {
        state_ += golden;
        return mix64(state_);
    }

    /// Unbiased draw from [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        for (;;) {
            const std::uint64_t z = next();
            if (z < limit) return z % bound;
        }
    }

private:
    std::uint64_t state_;
};

} // namespace detail

struct SamplerConfig {
    int length = 0;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
};

/// Uniform sample from the freely reduced words of the given length: the
/// first letter is uniform over 2k, each following letter uniform over the
/// 2k-1 non-inverses of its predecessor. Every word has probability
/// exactly 1 / (2k (2k-1)^(n-1)).
inline Word sample_freely_reduced(const Alphabet& alphabet, const SamplerConfig& config) {
    if (config.length < 0)
        throw std::invalid_argument("sample length must be nonnegative");
    detail::Rng rng(config.seed, config.index);
    const unsigned size = static_cast<unsigned>(alphabet.size());
    std::vector<Letter> letters;
    letters.reserve(static_cast<std::size_t>(config.length));
    for (int i = 0; i < config.length; ++i) {
        if (i == 0) {
            letters.emplace_back(static_cast<unsigned>(rng.below(size)));
            continue;
        }
        const unsigned banned = letters.back().inverse().code();
        unsigned pick = static_cast<unsigned>(rng.below(size - 1));
        if (pick >= banned) ++pick;
        letters.emplace_back(pick);
    }
    return Word::from_reduced(std::move(letters));
}

/// Uniform sample from the cyclically reduced words of the given length, by
/// rejection from the freely reduced sampler on the same stream. The
/// acceptance probability is at least 1/2k.
inline CyclicWord sample_cyclically_reduced(const Alphabet& alphabet, const SamplerConfig& config,
                                            std::uint64_t* rejections = nullptr) {
    if (config.length < 0)
        throw std::invalid_argument("sample length must be nonnegative");
    detail::Rng rng(config.seed, config.index);
    const unsigned size = static_cast<unsigned>(alphabet.size());
    if (rejections) *rejections = 0;
    for (;;) {
        std::vector<Letter> letters;
        letters.reserve(static_cast<std::size_t>(config.length));
        for (int i = 0; i < config.length; ++i) {
            if (i == 0) {
                letters.emplace_back(static_cast<unsigned>(rng.below(size)));
                continue;
            }
            const unsigned banned = letters.back().inverse().code();
            unsigned pick = static_cast<unsigned>(rng.below(size - 1));
            if (pick >= banned) ++pick;
            letters.emplace_back(pick);
        }
        if (letters.empty() || letters.front() != letters.back().inverse())
            return CyclicWord(Word::from_reduced(std::move(letters)));
        if (rejections) ++*rejections;
    }
}

/// Exact empirical frequencies of a cyclic word: letters, ordered cyclic
/// digrams (position i followed by position i+1, wrapping around), and the
/// edge labels of the Whitehead graph. Each family sums to 1.
class FrequencyProfile {
public:
    FrequencyProfile(const CyclicWord& w, const Alphabet& alphabet)
        : rank_(alphabet.rank()),
          n_(static_cast<std::int64_t>(w.size())),
          letter_count_(static_cast<std::size_t>(alphabet.size()), 0),
          digram_count_(static_cast<std::size_t>(alphabet.size()) * alphabet.size(), 0) {
        if (w.empty())
            throw std::invalid_argument("frequency profile requires a nontrivial word");
        const auto& s = w.letters();
        for (std::size_t i = 0; i < s.size(); ++i) {
            alphabet.require(s[i]);
            ++letter_count_[s[i].code()];
            const Letter y = s[(i + 1) % s.size()];
            ++digram_count_[static_cast<std::size_t>(s[i].code()) * alphabet.size() + y.code()];
        }
    }

    std::int64_t length() const { return n_; }
    int rank() const { return rank_; }

    std::int64_t letter_count(Letter x) const { return letter_count_[x.code()]; }
    Rational letter_freq(Letter x) const { return Rational(letter_count(x), n_); }

    /// Count of the ordered cyclic digram xy.
    std::int64_t digram_count(Letter x, Letter y) const {
        return digram_count_[static_cast<std::size_t>(x.code()) * (2 * rank_) + y.code()];
    }
    Rational digram_freq(Letter x, Letter y) const { return Rational(digram_count(x, y), n_); }

    /// Label of the Whitehead graph edge {p, q}: occurrences of the digram
    /// p^-1 q together with q^-1 p.
    std::int64_t edge_count(Letter p, Letter q) const {
        return digram_count(p.inverse(), q) + digram_count(q.inverse(), p);
    }
    Rational edge_freq(Letter p, Letter q) const { return Rational(edge_count(p, q), n_); }

private:
    int rank_;
    std::int64_t n_;
    std::vector<std::int64_t> letter_count_;
    std::vector<std::int64_t> digram_count_;
};

inline FrequencyProfile empirical_frequencies(const CyclicWord& w, const Alphabet& alphabet) {
    return FrequencyProfile(w, alphabet);
}

namespace detail {

/// Perron eigenvalue of a nonnegative irreducible matrix by power iteration.
inline double perron_eigenvalue(const std::vector<double>& m, int dim, double tol,
                                int max_iterations = 200000) {
    std::vector<double> v(static_cast<std::size_t>(dim), 1.0);
    std::vector<double> w(static_cast<std::size_t>(dim), 0.0);
    double eigen = 0.0;
    for (int iter = 0; iter < max_iterations; ++iter) {
        double norm = 0.0;
        for (int i = 0; i < dim; ++i) {
            double acc = 0.0;
            for (int j = 0; j < dim; ++j)
                acc += m[static_cast<std::size_t>(i) * dim + j] * v[static_cast<std::size_t>(j)];
            w[static_cast<std::size_t>(i)] = acc;
            norm = std::max(norm, acc);
        }
        // The norm alone can stall for an iteration while the iterate is
        // still moving (the max row need not see the shrinking entries), so
        // require the normalized vector to settle too.
        double drift = 0.0;
        for (int i = 0; i < dim; ++i) {
            w[static_cast<std::size_t>(i)] /= norm;
            drift = std::max(drift,
                             std::abs(w[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i)]));
        }
        const double previous = eigen;
        eigen = norm;
        std::swap(v, w);
        if (iter > 0 && drift <= tol && std::abs(eigen - previous) <= tol * std::abs(eigen))
            return eigen;
    }
    throw std::runtime_error("power iteration did not converge");
}

} // namespace detail

/// Large-deviation rate function for the frequency of one letter along the
/// stationary Markov process generating reduced words:
///     I(x) = sup over theta of [theta x - log perron(Pi_theta)],
/// where Pi is the transition matrix (uniform over the 2k-1 non-inverses)
/// and Pi_theta scales column j by exp(theta [j == target]). The supremum
/// is located by golden-section search over theta_range; theta = 0 and the
/// endpoints are also taken as candidates. I(1/2k) = 0.
inline double rate_function(double x, const Alphabet& alphabet,
                            Letter target = Letter::generator(1, +1),
                            std::pair<double, double> theta_range = {-20.0, 20.0},
                            double tol = 1e-9) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("rate function argument must lie in [0, 1]");
    if (!(theta_range.first < theta_range.second))
        throw std::invalid_argument("invalid theta range");
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    alphabet.require(target);

    const int dim = alphabet.size();
    const double p = 1.0 / (dim - 1);
    auto objective = [&](double theta) {
        std::vector<double> m(static_cast<std::size_t>(dim) * dim, 0.0);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                if (Letter(static_cast<unsigned>(j)) == Letter(static_cast<unsigned>(i)).inverse())
                    continue;
                double entry = p;
                if (static_cast<unsigned>(j) == target.code()) entry *= std::exp(theta);
                m[static_cast<std::size_t>(i) * dim + j] = entry;
            }
        return theta * x - std::log(detail::perron_eigenvalue(m, dim, tol));
    };

    double lo = theta_range.first, hi = theta_range.second;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = objective(c);
    double fd = objective(d);
    while (hi - lo > tol) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = objective(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = objective(d);
        }
    }

    double best = std::max(fc, fd);
    for (double theta : {0.0, theta_range.first, theta_range.second}) {
        if (theta < theta_range.first || theta > theta_range.second) continue;
        best = std::max(best, objective(theta));
    }
    return best;
}

} // namespace whitehead
