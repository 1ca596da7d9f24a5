#pragma once

// Random generators shared by the property tests. Every generator draws from
// an explicitly seeded engine so failures reproduce from the seed.

#include "filtrate/coeff.hpp"
#include "filtrate/series.hpp"
#include "filtrate/words.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace filtrate::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return range(0, 1) == 1; }

    GroupWord word(int alphabet, int max_length) {
        std::vector<Letter> letters;
        const long len = range(0, max_length);
        for (long k = 0; k < len; ++k) {
            const int gen = static_cast<int>(range(1, alphabet));
            letters.push_back(coin() ? gen : -gen);
        }
        return GroupWord(alphabet, letters);
    }

    Monomial monomial(int alphabet, int length) {
        Monomial w;
        for (int k = 0; k < length; ++k)
            w.push_back(static_cast<std::uint8_t>(range(1, alphabet)));
        return w;
    }

    /// Series with `terms` random monomials of length in [min_len, max_len]
    /// and coefficients in [-bound, bound].
    TruncSeries series(const Ring& ring, int alphabet, int cap, int terms, int min_len,
                       int max_len, long bound) {
        TruncSeries s(ring, alphabet, cap);
        for (int k = 0; k < terms; ++k)
            s.add_term(monomial(alphabet, static_cast<int>(range(min_len, max_len))),
                       Integer(range(-bound, bound)));
        return s;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline TruncSeries one_minus(const TruncSeries& s) {
    return TruncSeries::one(s.ring(), s.alphabet_size(), s.cap()) - s;
}

} // namespace filtrate::testing
