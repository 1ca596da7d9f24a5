#include "filtrate/filtration.hpp"

#include "filtrate/error.hpp"
#include "filtrate/series.hpp"

#include <cstdlib>
#include <random>

namespace filtrate {

UniMatrix::UniMatrix(int size, Ring ring) : size_(size), ring_(std::move(ring)) {
    if (size < 1)
        throw PreconditionError("matrix size must be positive");
    entries_.assign(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0);
}

Integer UniMatrix::at(int i, int j) const {
    if (i < 1 || j < 1 || i > size_ || j > size_)
        throw PreconditionError("matrix index out of range");
    if (i == j)
        return ring_.reduce(1);
    if (i > j)
        return 0;
    return entries_[offset(i, j)];
}

void UniMatrix::set(int i, int j, const Integer& value) {
    if (i < 1 || j > size_ || i >= j)
        throw PreconditionError("only strictly upper entries of a unipotent matrix can be set");
    entries_[offset(i, j)] = ring_.reduce(value);
}

bool UniMatrix::is_identity(bool ignore_corner) const {
    for (int i = 1; i <= size_; ++i)
        for (int j = i + 1; j <= size_; ++j) {
            if (ignore_corner && i == 1 && j == size_)
                continue;
            if (entries_[offset(i, j)] != 0)
                return false;
        }
    return true;
}

UniMatrix operator*(const UniMatrix& a, const UniMatrix& b) {
    if (a.size_ != b.size_ || !(a.ring_ == b.ring_))
        throw PreconditionError("matrix shapes or rings differ");
    UniMatrix out(a.size_, a.ring_);
    for (int i = 1; i <= a.size_; ++i)
        for (int j = i + 1; j <= a.size_; ++j) {
            // sum_k a(i,k) b(k,j) over i <= k <= j, with unit diagonals.
            Integer v = a.entries_[a.offset(i, j)] + b.entries_[b.offset(i, j)];
            for (int k = i + 1; k < j; ++k)
                v += a.entries_[a.offset(i, k)] * b.entries_[b.offset(k, j)];
            out.entries_[out.offset(i, j)] = out.ring_.reduce(v);
        }
    return out;
}

UniMatrix UniMatrix::inverse() const {
    // (I + N)^{-1} is the fixed point of r <- I - N r, reached after size - 1
    // steps since N is nilpotent.
    UniMatrix neg(size_, ring_);
    for (int i = 1; i <= size_; ++i)
        for (int j = i + 1; j <= size_; ++j)
            neg.entries_[offset(i, j)] = ring_.reduce(-entries_[offset(i, j)]);
    UniMatrix result(size_, ring_);
    for (int step = 1; step < size_; ++step) {
        UniMatrix next(size_, ring_);
        for (int i = 1; i <= size_; ++i)
            for (int j = i + 1; j <= size_; ++j) {
                Integer v = neg.entries_[offset(i, j)];
                for (int k = i + 1; k < j; ++k)
                    v += neg.entries_[offset(i, k)] * result.entries_[offset(k, j)];
                next.entries_[offset(i, j)] = ring_.reduce(v);
            }
        result = std::move(next);
    }
    return result;
}

std::vector<std::vector<Integer>> UniMatrix::rows() const {
    std::vector<std::vector<Integer>> out(static_cast<std::size_t>(size_));
    for (int i = 1; i <= size_; ++i)
        for (int j = 1; j <= size_; ++j)
            out[static_cast<std::size_t>(i - 1)].push_back(at(i, j));
    return out;
}

// ---------------------------------------------------------------------------
// phi_{R,w}

/// Accumulates phi_w(g) letter by letter. The image of x_k is I + N_k with
/// N_k(i, i+1) = 1 exactly when w_i = k; right multiplication by it adds
/// column j-1 into column j for each such j, and right multiplication by its
/// inverse is the corresponding back-substitution.
class PhiAccumulator {
public:
    PhiAccumulator(const Monomial& w, const Ring& ring)
        : w_(w), m_(static_cast<int>(w.size()) + 1, ring) {}

    void apply(Letter l) {
        const auto k = static_cast<std::uint8_t>(std::abs(l));
        const int n = m_.size_;
        if (l > 0) {
            for (int j = n; j >= 2; --j)
                if (w_[static_cast<std::size_t>(j - 2)] == k)
                    add_column(j, j - 1, 1);
        } else {
            for (int j = 2; j <= n; ++j)
                if (w_[static_cast<std::size_t>(j - 2)] == k)
                    add_column(j, j - 1, -1);
        }
    }

    UniMatrix& matrix() { return m_; }

private:
    // column dst += sign * column src (src = dst - 1), over rows 1..dst-1.
    void add_column(int dst, int src, int sign) {
        for (int i = 1; i < dst; ++i) {
            Integer& target = m_.entries_[m_.offset(i, dst)];
            if (i == src)
                target += sign;
            else
                target += sign * m_.entries_[m_.offset(i, src)];
            target = m_.ring_.reduce(target);
        }
    }

    const Monomial& w_;
    UniMatrix m_;
};

UniMatrix phi(const Monomial& w, const GroupWord& g, const Ring& ring) {
    if (w.empty())
        throw PreconditionError("phi needs a non-empty monomial");
    for (auto x : w)
        if (x < 1 || x > g.alphabet_size())
            throw PreconditionError("monomial " + to_string(w) + " outside the word's alphabet");
    PhiAccumulator acc(w, ring);
    for (Letter l : g.letters())
        acc.apply(l);
    return std::move(acc.matrix());
}

// ---------------------------------------------------------------------------
// Membership

FiltrationSpec::FiltrationSpec(EMap emap, int level, Route route)
    : emap_(std::move(emap)), level_(level), route_(route) {
    if (level < 1)
        throw PreconditionError("filtration level must be positive");
    if (!emap_.defines(level))
        throw PreconditionError("e-map " + emap_.to_string() + " does not define level " +
                                std::to_string(level));
    if (emap_(level, level) != 1)
        throw PreconditionError("e-map row " + std::to_string(level) + " has e(n,n) != 1");
    for (int i = 1; i < level; ++i)
        if (!divisible(emap_(level, i), emap_(level, i + 1)))
            throw PreconditionError("e-map row " + std::to_string(level) +
                                    " is not descending at i = " + std::to_string(i));
}

Membership member_series(const GroupWord& g, const FiltrationSpec& spec) {
    const int n = spec.level();
    if (n == 1)
        return {};
    TruncSeries s = magnus(g, Ring::integers(), n - 1);
    s.add_term({}, -1);
    if (auto v = ideal_violation(s, spec.emap(), n))
        return {false, Witness{static_cast<int>(v->word.size()), v->word, v->coefficient}};
    return {};
}

Membership member_kernels(const GroupWord& g, const FiltrationSpec& spec) {
    const int n = spec.level();
    for (int d = 1; d < n; ++d) {
        const Ring ring(spec.emap()(n, d));
        if (ring.modulus() == 1)
            continue; // U(Z/1Z) is trivial
        Monomial w(static_cast<std::size_t>(d), 1);
        const auto k = static_cast<std::uint8_t>(g.alphabet_size());
        while (true) {
            const UniMatrix m = phi(w, g, ring);
            for (int len = 1; len <= d; ++len)
                for (int i = 1; i + len <= d + 1; ++i) {
                    const Integer c = m.at(i, i + len);
                    if (c != 0) {
                        Monomial sub(w.begin() + (i - 1), w.begin() + (i - 1 + len));
                        return {false, Witness{len, std::move(sub), c}};
                    }
                }
            int pos = d - 1;
            while (pos >= 0 && w[static_cast<std::size_t>(pos)] == k)
                w[static_cast<std::size_t>(pos--)] = 1;
            if (pos < 0)
                break;
            ++w[static_cast<std::size_t>(pos)];
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Sampling

EMap matching_emap(const RecursiveScheme& scheme) {
    if (const auto* a = std::get_if<AFiltration>(&scheme))
        return EMap::sequence_gcd(a->a);
    const auto& q = std::get<QZassenhaus>(scheme);
    return EMap::zassenhaus(q.p, q.t);
}

namespace {

Integer q_of(const QZassenhaus& q) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), q.p, q.t);
    return r;
}

long as_exponent(const Integer& v) {
    if (!v.fits_slong_p())
        throw PreconditionError("exponent " + v.get_str() + " too large to expand as a word");
    return v.get_si();
}

class Sampler {
public:
    Sampler(const SampleBudget& budget, std::uint64_t seed) : budget_(budget), rng_(seed) {
        if (budget.max_word_length < 0 || budget.fan_out < 1)
            throw PreconditionError("sampling budget needs max_word_length >= 0 and fan_out >= 1");
    }

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return uniform(0, 1) == 1; }

    // Freely reduced, non-empty unless max_length is 0.
    GroupWord random_word(int max_length) {
        return extend({}, max_length == 0 ? 0 : uniform(1, max_length));
    }

    // x_k followed by a reduced tail of up to `tail` letters.
    GroupWord anchored_word(int k, int tail) { return extend({k}, uniform(0, tail)); }

    GroupWord maybe_invert(GroupWord g) { return coin() ? invert(g) : g; }

    const SampleBudget& budget() const { return budget_; }

private:
    GroupWord extend(std::vector<Letter> letters, int extra) {
        const std::size_t len = letters.size() + static_cast<std::size_t>(extra);
        while (letters.size() < len) {
            const int gen = uniform(1, budget_.alphabet_size);
            const Letter l = coin() ? gen : -gen;
            if (letters.empty() || letters.back() != -l)
                letters.push_back(l);
        }
        return GroupWord(budget_.alphabet_size, letters);
    }

    SampleBudget budget_;
    std::mt19937_64 rng_;
};

GroupWord sample_level(const RecursiveScheme& scheme, int n, Sampler& rng) {
    const int alphabet = rng.budget().alphabet_size;
    if (n == 1)
        return rng.random_word(rng.budget().max_word_length);

    long exponent = 0;
    int lower = 0;
    if (const auto* a = std::get_if<AFiltration>(&scheme)) {
        if (static_cast<std::size_t>(n - 1) > a->a.size())
            throw PreconditionError("A-filtration needs a_1..a_" + std::to_string(n - 1));
        exponent = as_exponent(a->a[static_cast<std::size_t>(n - 2)]);
        lower = n - 1;
    } else {
        const auto& q = std::get<QZassenhaus>(scheme);
        exponent = as_exponent(q_of(q));
        lower = static_cast<int>((static_cast<unsigned long>(n) + q.p - 1) / q.p);
    }

    GroupWord product(alphabet);
    const int factors = rng.uniform(1, rng.budget().fan_out);
    for (int f = 0; f < factors; ++f) {
        const bool use_power = exponent != 0 && rng.coin();
        GroupWord factor(alphabet);
        if (use_power) {
            factor = power(sample_level(scheme, lower, rng), exponent);
        } else if (std::holds_alternative<AFiltration>(scheme)) {
            factor = commutator(sample_level(scheme, n - 1, rng), sample_level(scheme, 1, rng));
        } else {
            const int s = rng.uniform(1, n - 1);
            factor = commutator(sample_level(scheme, s, rng), sample_level(scheme, n - s, rng));
        }
        product *= rng.maybe_invert(std::move(factor));
    }
    return product;
}

} // namespace

RecursionShape recursion_shape(const RecursiveScheme& scheme) {
    if (const auto* a = std::get_if<AFiltration>(&scheme)) {
        auto seq = a->a;
        return RecursionShape{
            [seq](int n) {
                if (static_cast<std::size_t>(n - 1) > seq.size())
                    throw PreconditionError("A-filtration needs a_" + std::to_string(n - 1));
                return seq[static_cast<std::size_t>(n - 2)];
            },
            [](int n) { return n - 1; },
            [](int, int t) { return t == 1; },
        };
    }
    const auto q = std::get<QZassenhaus>(scheme);
    const Integer qv = q_of(q);
    return RecursionShape{
        [qv](int) { return qv; },
        [p = q.p](int n) {
            return static_cast<int>((static_cast<unsigned long>(n) + p - 1) / p);
        },
        [](int, int) { return true; },
    };
}

std::vector<GroupWord> sample_recursive(const RecursiveScheme& scheme, int n,
                                        const SampleBudget& budget, std::uint64_t seed) {
    if (n < 1)
        throw PreconditionError("level must be positive");
    if (const auto* q = std::get_if<QZassenhaus>(&scheme); q && !is_prime(q->p))
        throw PreconditionError("q-Zassenhaus scheme needs a prime p");
    Sampler rng(budget, seed);
    std::vector<GroupWord> out;
    out.reserve(budget.count);
    for (std::size_t k = 0; k < budget.count; ++k)
        out.push_back(sample_level(scheme, n, rng));
    return out;
}

std::vector<GroupWord> product_sampler(const EMap& e, int n, const SampleBudget& budget,
                                       std::uint64_t seed) {
    if (n < 1)
        throw PreconditionError("level must be positive");
    FiltrationSpec check(e, n); // validates that row n is descending
    Sampler rng(budget, seed);
    const int alphabet = budget.alphabet_size;

    std::vector<int> weights;
    std::vector<long> exponents;
    std::vector<std::vector<Monomial>> lyndon;
    for (int i = 1; i <= n; ++i) {
        const Integer ei = e(n, i);
        if (ei == 0 && i != n)
            continue;
        weights.push_back(i);
        exponents.push_back(as_exponent(ei));
        lyndon.push_back(lyndon_words(alphabet, i));
    }

    std::vector<GroupWord> out;
    out.reserve(budget.count);
    for (std::size_t k = 0; k < budget.count; ++k) {
        GroupWord product(alphabet);
        const int factors = rng.uniform(1, budget.fan_out);
        for (int f = 0; f < factors; ++f) {
            const auto slot = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(weights.size()) - 1));
            const int weight = weights[slot];
            const auto& candidates = lyndon[slot];
            if (candidates.empty())
                continue; // a single letter has no Lyndon words of weight >= 2
            const auto& u = candidates[static_cast<std::size_t>(
                rng.uniform(0, static_cast<int>(candidates.size()) - 1))];
            std::vector<GroupWord> substitution;
            const int leaf_length = std::max(1, budget.max_word_length / weight);
            // x_i -> x_i r_i keeps distinct leaves from collapsing.
            for (int x = 1; x <= alphabet; ++x)
                substitution.push_back(rng.anchored_word(x, leaf_length - 1));
            GroupWord element = realize(basic_commutator(u), substitution);
            product *= rng.maybe_invert(power(element, exponents[slot]));
        }
        out.push_back(std::move(product));
    }
    return out;
}

} // namespace filtrate
