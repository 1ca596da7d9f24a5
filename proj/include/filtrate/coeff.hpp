#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace filtrate {

using Integer = mpz_class;

/// Coefficient ring Z/mZ. A modulus of 0 denotes Z itself, so that a family
/// of quotients Z/e(n,d)Z stays uniform when e(n,d) = 0.
class Ring {
public:
    Ring() = default;
    explicit Ring(Integer modulus);

    static Ring integers() { return Ring{}; }
    static Ring mod(unsigned long m) { return Ring{Integer(m)}; }

    const Integer& modulus() const noexcept { return modulus_; }
    bool is_integers() const noexcept { return modulus_ == 0; }

    /// Canonical representative: identity over Z, residue in [0, m) otherwise.
    Integer reduce(const Integer& value) const;
    bool is_unit(const Integer& value) const;
    /// Inverse of a unit; throws PreconditionError otherwise.
    Integer unit_inverse(const Integer& value) const;

    /// "Z" or "Z/<m>".
    std::string to_string() const;

    friend bool operator==(const Ring& a, const Ring& b) { return a.modulus_ == b.modulus_; }

private:
    Integer modulus_ = 0;
};

/// Parses the ring grammar "Z" | "Z/<m>" with m >= 1.
Ring parse_ring(std::string_view text);

inline Integer reduce(const Integer& value, const Ring& ring) { return ring.reduce(value); }

/// value in dZ; for d = 0 this means value == 0.
bool divisible(const Integer& value, const Integer& d);

using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t integer_rank(IntegerMatrix matrix);

/// p-adic valuation of a nonzero integer.
unsigned long valuation(const Integer& value, unsigned long p);

bool is_prime(unsigned long n);

Integer binomial(const Integer& top, unsigned long k);

} // namespace filtrate
