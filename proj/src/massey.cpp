#include "filtrate/massey.hpp"

#include "filtrate/error.hpp"
#include "filtrate/series.hpp"

namespace filtrate {

int mobius(unsigned long n) {
    if (n == 0)
        throw PreconditionError("mobius(0) is undefined");
    int sign = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        sign = -sign;
    }
    if (n > 1)
        sign = -sign;
    return sign;
}

Integer necklace(unsigned long m, unsigned long n) {
    if (m < 1 || n < 1)
        throw PreconditionError("necklace needs positive arguments");
    Integer sum = 0;
    for (unsigned long d = 1; d <= n; ++d) {
        if (n % d != 0)
            continue;
        const int mu = mobius(d);
        if (mu == 0)
            continue;
        Integer term;
        mpz_ui_pow_ui(term.get_mpz_t(), m, n / d);
        sum += mu * term;
    }
    if (!mpz_divisible_ui_p(sum.get_mpz_t(), n))
        throw InvariantError("necklace sum not divisible by n");
    Integer out;
    mpz_divexact_ui(out.get_mpz_t(), sum.get_mpz_t(), n);
    return out;
}

namespace {

TruncSeries level_expansion(const GroupWord& g, int n) {
    if (n < 1)
        throw PreconditionError("level must be positive");
    TruncSeries s = magnus(g, Ring::integers(), n);
    for (const auto& [w, c] : s.terms()) {
        if (w.empty() || static_cast<int>(w.size()) >= n)
            continue;
        throw PreconditionError(to_string(g) + " is not in the level-" + std::to_string(n) +
                                " lower central subgroup (coefficient " + c.get_str() + " at " +
                                to_string(w) + ")");
    }
    return s;
}

} // namespace

Integer pairing_value(const GroupWord& g, const std::map<Monomial, Integer>& weights, int n) {
    const TruncSeries s = level_expansion(g, n);
    Integer total = 0;
    for (const auto& [w, r] : weights) {
        if (static_cast<int>(w.size()) != n)
            throw PreconditionError("weight on " + to_string(w) + " is not on a length-" +
                                    std::to_string(n) + " word");
        total += r * s.coefficient(w);
    }
    return total;
}

IntegerMatrix pairing_rows(const std::vector<GroupWord>& elements, int n) {
    if (elements.empty())
        return {};
    const auto columns = enumerate_monomials(elements.front().alphabet_size(), n);
    IntegerMatrix out;
    out.reserve(elements.size());
    for (const auto& g : elements) {
        const TruncSeries s = level_expansion(g, n);
        std::vector<Integer> row;
        row.reserve(columns.size());
        for (const auto& w : columns)
            row.push_back(s.coefficient(w));
        out.push_back(std::move(row));
    }
    return out;
}

PairingMatrix pairing_matrix(int alphabet_size, int n) {
    if (n < 2)
        throw PreconditionError("the pairing matrix needs level n >= 2");
    PairingMatrix pm;
    pm.level = n;
    pm.row_lyndon = lyndon_words(alphabet_size, n);
    for (const auto& u : pm.row_lyndon)
        pm.row_labels.push_back(realize(basic_commutator(u), alphabet_size));
    pm.column_labels = enumerate_monomials(alphabet_size, n);
    pm.entries = pairing_rows(pm.row_labels, n);
    return pm;
}

std::size_t massey_rank(int alphabet_size, int n) {
    return integer_rank(pairing_matrix(alphabet_size, n).entries);
}

} // namespace filtrate
