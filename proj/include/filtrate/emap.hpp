#pragma once

#include "filtrate/coeff.hpp"
#include "filtrate/series.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace filtrate {

/// Exponent table e(n, i), 1 <= i <= n, of a filtration
///   prod_i (F^{(i,0)})^{e(n,i)}.
///
/// The named families are:
///   Trivial        e(n,i) = 0 for i < n (lower central series);
///   Constant(a)    e(n,i) = a^{n-i};
///   SequenceGcd(A) e(n,i) = gcd of the products of n-i entries among a_1..a_{n-1};
///   Zassenhaus(p,t) e(n,i) = p^{t j}, j minimal with i p^j >= n;
///   Explicit       rows given verbatim (possibly only some n).
/// Every family has e(n,n) = 1. Divisibility by 0 means equality to 0.
class EMap {
public:
    enum class Kind { Trivial, Constant, SequenceGcd, Zassenhaus, Explicit };

    static EMap trivial();
    static EMap constant(Integer a);
    static EMap sequence_gcd(std::vector<Integer> a);
    static EMap zassenhaus(unsigned long p, unsigned long t);
    /// rows[n] = (e(n,1), ..., e(n,n)).
    static EMap explicit_table(std::map<int, std::vector<Integer>> rows);

    Kind kind() const noexcept { return kind_; }

    /// e(n, i). Throws PreconditionError when i is outside [1, n] or the
    /// row n is not defined for this map.
    Integer operator()(int n, int i) const;

    /// Whether row n is defined (SequenceGcd needs a_1..a_{n-1}; Explicit
    /// tables define only their listed rows).
    bool defines(int n) const;

    /// Levels <= n_max whose rows are defined.
    std::vector<int> levels(int n_max) const;

    const Integer& constant_base() const { return a_; }
    const std::vector<Integer>& sequence() const { return sequence_; }
    unsigned long prime() const noexcept { return p_; }
    unsigned long exponent() const noexcept { return t_; }
    const std::map<int, std::vector<Integer>>& table() const noexcept { return rows_; }

    /// "trivial", "const:4", "gcdseq:2,3", "zass:2,1" or "explicit".
    std::string to_string() const;

private:
    EMap() = default;

    Integer sequence_gcd_value(int n, int i) const;

    Kind kind_ = Kind::Trivial;
    Integer a_ = 0;
    std::vector<Integer> sequence_;
    unsigned long p_ = 0;
    unsigned long t_ = 0;
    std::map<int, std::vector<Integer>> rows_;

    struct GcdMemo;
    std::shared_ptr<GcdMemo> memo_;
};

Integer evaluate(const EMap& e, int n, int i);

/// Minimal j >= 0 with i * p^j >= n, by integer comparison.
unsigned long ceil_log(unsigned long n, unsigned long i, unsigned long p);

/// First failing index of an e-map audit. Fields not meaningful for a given
/// check are left at 0.
struct EMapViolation {
    int n = 0;
    int i = 0;
    /// l for the binomial condition, r for condition (iii).
    int k = 0;
    unsigned long prime = 0;
    std::string detail;
};

struct AuditResult {
    bool ok = true;
    std::optional<EMapViolation> violation;

    explicit operator bool() const noexcept { return ok; }
};

/// e(n,n) = 1 and e(n,i) in e(n,i+1)Z for all defined n <= n_max.
AuditResult check_descending(const EMap& e, int n_max);

/// binom(e(n,i), l) in e(n, il)Z whenever 1 <= l <= e(n,i) and il <= n.
AuditResult check_binomial(const EMap& e, int n_max);

/// For ip^r <= n with v_p(e(n,i)) >= r: v_p(e(n,i)) - r >= v_p(e(n, ip^r)).
/// A zero entry has infinite valuation and always satisfies the bound.
AuditResult check_condition_iii(const EMap& e, int n_max);

/// e'(n,i) = gcd(e(n,1), ..., e(n,i)) as an explicit table for n <= n_max.
/// Requires e(n,n) = 1 on every defined row.
EMap normalize(const EMap& e, int n_max);

/// Shape of a recursive filtration
///   G_(1) = G,  G_(n) = G_(g(n))^{f(n)} prod_{(s,t) in T, s+t=n} [G_(s), G_(t)].
struct RecursionShape {
    std::function<Integer(int)> f;
    std::function<int(int)> g;
    std::function<bool(int, int)> in_t;
};

/// e(s,i) e(t,j) in e(s+t, i+j)Z for (s,t) in T with s + t <= max_sum.
AuditResult check_commutator_condition(const EMap& e, const RecursionShape& shape, int max_sum);

/// binom(f(n), l) e(g(n),j_1)...e(g(n),j_l) in e(n, j_1+...+j_l)Z for
/// 2 <= n <= n_max, 1 <= l <= f(n), 1 <= j_k <= g(n), sum j_k <= n.
AuditResult check_power_condition(const EMap& e, const RecursionShape& shape, int n_max);

/// First coefficient of s that keeps s out of the ideal
///   sum_i e(n,i) d^i   (d = ideal of series without constant term).
struct IdealViolation {
    Monomial word;
    Integer coefficient;
    /// Required divisor for this degree (0 means the coefficient must vanish).
    Integer divisor;
};

/// Membership of an integral series s in sum_{i=1}^n e(n,i) d^i. Degree k
/// coefficients must be divisible by gcd(e(n,1), ..., e(n,k)) for k < n,
/// which is e(n,k) itself when e is descending; degrees >= n are free.
/// Requires ring Z and cap >= n - 1 (throws PreconditionError otherwise).
std::optional<IdealViolation> ideal_violation(const TruncSeries& s, const EMap& e, int n);

bool ideal_member(const TruncSeries& s, const EMap& e, int n);

/// Parses "trivial" | "const:<a>" | "gcdseq:<a1>,<a2>,..." | "zass:<p>,<t>" |
/// "file:<path>" where the file holds [{"n": n, "values": [e(n,1), ...]}, ...].
EMap parse_emap(std::string_view text);

/// Same JSON row format as the "file:" spec, from an in-memory string.
EMap parse_emap_table(std::string_view json_text);

} // namespace filtrate
