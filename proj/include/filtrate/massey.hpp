#pragma once

#include "filtrate/coeff.hpp"
#include "filtrate/words.hpp"

#include <map>
#include <vector>

namespace filtrate {

/// Mobius function.
int mobius(unsigned long n);

/// Number of aperiodic necklaces of length n over m letters,
///   l_m(n) = (1/n) sum_{d | n} mu(d) m^{n/d}.
Integer necklace(unsigned long m, unsigned long n);

/// Pairing of g in F^{(n,0)} with integer weights on length-n words:
///   sum_w r_w * (phi_w(g))_{1,n+1} = sum_w r_w * mu_w(g).
/// Throws PreconditionError if g is not in F^{(n,0)} or a weight sits on a
/// word of the wrong length.
Integer pairing_value(const GroupWord& g, const std::map<Monomial, Integer>& weights, int n);

/// Rows: realized standard bracketings of the Lyndon words of length n.
/// Columns: all words of length n in lexicographic order.
/// Entry (g, w): Magnus coefficient of g at w.
struct PairingMatrix {
    int level = 0;
    std::vector<Monomial> row_lyndon;
    std::vector<GroupWord> row_labels;
    std::vector<Monomial> column_labels;
    IntegerMatrix entries;
};

PairingMatrix pairing_matrix(int alphabet_size, int n);

/// Rank over Q of the pairing matrix; equals necklace(alphabet_size, n).
std::size_t massey_rank(int alphabet_size, int n);

/// Rows for arbitrary elements of F^{(n,0)} against all length-n words.
IntegerMatrix pairing_rows(const std::vector<GroupWord>& elements, int n);

} // namespace filtrate
