#pragma once

#include "filtrate/coeff.hpp"
#include "filtrate/emap.hpp"
#include "filtrate/words.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace filtrate {

/// Upper-triangular unipotent matrix over Z/mZ (m = 0 for Z). Only the
/// strictly upper part is stored; indices are 1-based as (i, j), i < j.
class UniMatrix {
public:
    UniMatrix(int size, Ring ring);

    static UniMatrix identity(int size, Ring ring) { return UniMatrix(size, std::move(ring)); }

    int size() const noexcept { return size_; }
    const Ring& ring() const noexcept { return ring_; }

    /// Entry (i, j) for any 1 <= i, j <= size (1 on the diagonal, 0 below).
    Integer at(int i, int j) const;
    void set(int i, int j, const Integer& value);

    /// Identity test; with ignore_corner the (1, size) entry is disregarded,
    /// i.e. the test is taken in U_n(R) / Z_n(R).
    bool is_identity(bool ignore_corner = false) const;

    friend UniMatrix operator*(const UniMatrix& a, const UniMatrix& b);
    friend bool operator==(const UniMatrix& a, const UniMatrix& b) = default;

    UniMatrix inverse() const;

    /// Rows of the full matrix, for printing.
    std::vector<std::vector<Integer>> rows() const;

private:
    friend class PhiAccumulator;

    std::size_t offset(int i, int j) const {
        return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(size_) +
               static_cast<std::size_t>(j - 1);
    }

    int size_;
    Ring ring_;
    std::vector<Integer> entries_; // full size*size storage; only i < j used
};

/// The representation phi_{R,w}: F -> U_{|w|+1}(R) whose (i, j) entry is the
/// Magnus coefficient of g at the subword w_i ... w_{j-1}. Evaluated as a
/// product of the generator images, so it does not go through the series code.
UniMatrix phi(const Monomial& w, const GroupWord& g, const Ring& ring);

enum class Route { Series, Kernels, Both };

/// Membership target: the subgroup mu_Z^{-1}(1 + sum_i e(n,i) d^i).
class FiltrationSpec {
public:
    /// Throws PreconditionError when row `level` of the e-map is undefined or
    /// not descending.
    FiltrationSpec(EMap emap, int level, Route route = Route::Both);

    const EMap& emap() const noexcept { return emap_; }
    int level() const noexcept { return level_; }
    Route route() const noexcept { return route_; }

private:
    EMap emap_;
    int level_;
    Route route_;
};

/// Why an element fails: the coefficient at `word` (of length `degree`) is
/// not divisible by the required exponent. `coefficient` is the value in the
/// ring where the failure was observed (Z for the series route, Z/e(n,d) for
/// the kernel route).
struct Witness {
    int degree = 0;
    Monomial word;
    Integer coefficient;
};

struct Membership {
    bool member = true;
    std::optional<Witness> witness;
};

/// Decides membership from the Magnus expansion: mu(g) - 1 must lie in the
/// ideal sum_i e(n,i) d^i, checked on degrees 1 .. n-1.
Membership member_series(const GroupWord& g, const FiltrationSpec& spec);

/// Decides membership as the intersection of the kernels of
/// phi_{Z/e(n,d)Z, w} for 1 <= d <= n-1 and all |w| = d.
/// Stops at the first non-identity image.
Membership member_kernels(const GroupWord& g, const FiltrationSpec& spec);

// ---------------------------------------------------------------------------
// Sampling

struct SampleBudget {
    std::size_t count = 30;
    /// Maximum length of the random words at the bottom of the recursion.
    int max_word_length = 6;
    /// Maximum number of factors multiplied together at each level.
    int fan_out = 2;
    int alphabet_size = 2;
};

/// G^{(1,A)} = G, G^{(n,A)} = (G^{(n-1,A)})^{a_{n-1}} [G^{(n-1,A)}, G].
struct AFiltration {
    std::vector<Integer> a;
};

/// G_{(1,q)} = G, G_{(n,q)} = G_{(ceil(n/p),q)}^q prod_{s+t=n} [G_{(s,q)}, G_{(t,q)}],
/// with q = p^t.
struct QZassenhaus {
    unsigned long p = 2;
    unsigned long t = 1;
};

using RecursiveScheme = std::variant<AFiltration, QZassenhaus>;

/// The e-map whose product filtration equals the scheme's recursive one:
/// SequenceGcd(A) or Zassenhaus(p, t).
EMap matching_emap(const RecursiveScheme& scheme);

/// f, g and T of the recursion.
RecursionShape recursion_shape(const RecursiveScheme& scheme);

/// Random elements of the n-th recursive subgroup, built by following the
/// recursion: each level-n element is a product of f(n)-th powers of level
/// g(n) elements and commutators [u, v] of level s and t elements, (s,t) in T,
/// s + t = n. Deterministic in `seed`.
std::vector<GroupWord> sample_recursive(const RecursiveScheme& scheme, int n,
                                        const SampleBudget& budget, std::uint64_t seed);

/// Random elements of prod_{i=1}^n (F^{(i,0)})^{e(n,i)}: products of e(n,i)-th
/// powers of basic commutators of weight i whose leaves are replaced by random
/// words. Factors with e(n,i) = 0 are skipped except i = n.
std::vector<GroupWord> product_sampler(const EMap& e, int n, const SampleBudget& budget,
                                       std::uint64_t seed);

} // namespace filtrate
