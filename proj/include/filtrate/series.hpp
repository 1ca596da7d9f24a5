#pragma once

#include "filtrate/coeff.hpp"
#include "filtrate/words.hpp"

#include <map>
#include <utility>
#include <vector>

namespace filtrate {

struct ShortlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return shortlex_less(a, b); }
};

/// Element of R<<x1..xk>> modulo all monomials of length > cap.
///
/// Coefficients are kept in canonical form: reduced into the ring, zero
/// entries never stored, keys ordered by (length, lexicographic).
class TruncSeries {
public:
    using Terms = std::map<Monomial, Integer, ShortlexLess>;

    TruncSeries(Ring ring, int alphabet_size, int cap);

    static TruncSeries constant(Ring ring, int alphabet_size, int cap, const Integer& c);
    static TruncSeries one(Ring ring, int alphabet_size, int cap) {
        return constant(std::move(ring), alphabet_size, cap, 1);
    }
    /// c * w (dropped when |w| > cap).
    static TruncSeries monomial(Ring ring, int alphabet_size, int cap, const Monomial& w,
                                const Integer& c = 1);

    const Ring& ring() const noexcept { return ring_; }
    int alphabet_size() const noexcept { return alphabet_; }
    int cap() const noexcept { return cap_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Adds c * w in place; ignored beyond the cap.
    void add_term(const Monomial& w, const Integer& c);

    /// Coefficient of w. Throws PreconditionError when |w| exceeds the cap,
    /// since the truncation does not determine it.
    Integer coefficient(const Monomial& w) const;

    /// Homogeneous component of degree d.
    TruncSeries component(int d) const;

    /// Same series viewed at a smaller (or equal) cap.
    TruncSeries truncate(int cap) const;

    TruncSeries& operator+=(const TruncSeries& rhs);
    TruncSeries& operator-=(const TruncSeries& rhs);
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

    friend bool operator==(const TruncSeries& a, const TruncSeries& b);

private:
    void check_compatible(const TruncSeries& rhs) const;

    Ring ring_;
    int alphabet_;
    int cap_;
    Terms terms_;
};

TruncSeries add(const TruncSeries& a, const TruncSeries& b);
TruncSeries mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries scale(const Integer& c, const TruncSeries& a);

/// Two-sided inverse. Writing a = c(1 - b) with c the constant term and b of
/// zero constant term, the inverse is (sum_{k<=cap} b^k) c^{-1}.
/// Throws PreconditionError when c is not a unit.
TruncSeries inverse(const TruncSeries& a);

/// Magnus expansion of g in R<<X>> truncated at `cap`: x_i -> 1 + x_i.
TruncSeries magnus(const GroupWord& g, const Ring& ring, int cap);

inline Integer coefficient(const TruncSeries& s, const Monomial& w) { return s.coefficient(w); }

} // namespace filtrate
