#include "filtrate/coeff.hpp"

#include "filtrate/error.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace filtrate {

Ring::Ring(Integer modulus) : modulus_(std::move(modulus)) {
    if (modulus_ < 0)
        throw PreconditionError("ring modulus must be non-negative");
}

Integer Ring::reduce(const Integer& value) const {
    if (modulus_ == 0)
        return value;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), modulus_.get_mpz_t());
    return r;
}

bool Ring::is_unit(const Integer& value) const {
    if (modulus_ == 0)
        return value == 1 || value == -1;
    if (modulus_ == 1)
        return true;
    Integer g;
    mpz_gcd(g.get_mpz_t(), value.get_mpz_t(), modulus_.get_mpz_t());
    return g == 1;
}

Integer Ring::unit_inverse(const Integer& value) const {
    if (!is_unit(value))
        throw PreconditionError("constant term " + value.get_str() + " is not a unit in " +
                                to_string());
    if (modulus_ == 0)
        return value;
    if (modulus_ == 1)
        return 0;
    Integer inv;
    mpz_invert(inv.get_mpz_t(), reduce(value).get_mpz_t(), modulus_.get_mpz_t());
    return inv;
}

std::string Ring::to_string() const {
    return modulus_ == 0 ? std::string("Z") : "Z/" + modulus_.get_str();
}

Ring parse_ring(std::string_view text) {
    if (text == "Z")
        return Ring::integers();
    if (text.size() < 3 || text.substr(0, 2) != "Z/")
        throw ParseError("ring must be \"Z\" or \"Z/<m>\"", 0);
    auto digits = text.substr(2);
    for (std::size_t k = 0; k < digits.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(digits[k])))
            throw ParseError("expected decimal modulus", k + 2);
    Integer m(std::string(digits), 10);
    if (m < 1)
        throw ParseError("modulus must be at least 1", 2);
    return Ring(m);
}

bool divisible(const Integer& value, const Integer& d) {
    if (d == 0)
        return value == 0;
    return mpz_divisible_p(value.get_mpz_t(), d.get_mpz_t()) != 0;
}

std::size_t integer_rank(IntegerMatrix m) {
    // Bareiss elimination; every division below is exact.
    const std::size_t rows = m.size();
    if (rows == 0)
        return 0;
    const std::size_t cols = m.front().size();
    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c) {
                Integer v = m[rank][col] * m[r][c] - m[r][col] * m[rank][c];
                mpz_divexact(m[r][c].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

unsigned long valuation(const Integer& value, unsigned long p) {
    Integer v = abs(value);
    unsigned long k = 0;
    while (v != 0 && mpz_divisible_ui_p(v.get_mpz_t(), p)) {
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
        ++k;
    }
    return k;
}

bool is_prime(unsigned long n) {
    if (n < 2)
        return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Integer binomial(const Integer& top, unsigned long k) {
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), top.get_mpz_t(), k);
    return r;
}

} // namespace filtrate
