#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace filtrate {

/// A letter of a free-group word: generator index (1-based) with sign.
/// Stored as a signed integer: +i for x_i, -i for x_i^{-1}.
using Letter = int;

/// Element of the free group F on generators x1..xk, kept freely reduced.
///
/// Commutator convention: [a, b] = a^{-1} b^{-1} a b. Texts disagree on this;
/// this is the convention under which the Magnus image of [g, h] has leading
/// term mu(g) mu(h) - mu(h) mu(g).
class GroupWord {
public:
    GroupWord() = default;
    explicit GroupWord(int alphabet_size) : alphabet_(alphabet_size) {}
    /// Builds the free reduction of `letters`; validates indices.
    GroupWord(int alphabet_size, const std::vector<Letter>& letters);

    static GroupWord generator(int alphabet_size, int index);

    int alphabet_size() const noexcept { return alphabet_; }
    const std::vector<Letter>& letters() const noexcept { return letters_; }
    std::size_t length() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }

    /// Appends letters with free cancellation.
    GroupWord& operator*=(const GroupWord& rhs);

    friend GroupWord operator*(GroupWord a, const GroupWord& b) { return a *= b; }
    friend bool operator==(const GroupWord& a, const GroupWord& b) = default;

private:
    void push(Letter l);

    int alphabet_ = 1;
    std::vector<Letter> letters_;
};

GroupWord multiply(const GroupWord& a, const GroupWord& b);
GroupWord invert(const GroupWord& a);
GroupWord commutator(const GroupWord& a, const GroupWord& b);
GroupWord power(const GroupWord& a, long k);

/// Parses the word grammar:
///   word := term ("*" term)* ; term := atom ("^" signed-int)? ;
///   atom := "x" positive-int | "[" word "," word "]" | "(" word ")" | "e"
/// Whitespace is ignored. Throws ParseError with the offending position.
GroupWord parse_word(std::string_view text, int alphabet_size);

/// Inverse of parse_word: "e" for the identity, otherwise "x1*x2^-1*x1^2".
std::string to_string(const GroupWord& g);

/// A word in the free monoid on x1..xk; indexes power-series coefficients.
using Monomial = std::vector<std::uint8_t>;

/// "x1x2x1"; the empty monomial prints as "1".
std::string to_string(const Monomial& w);
/// Parses "x1x2x1" (or "1" / "" for the empty monomial).
Monomial parse_monomial(std::string_view text, int alphabet_size);

/// Shortlex order: by length, then lexicographically.
bool shortlex_less(const Monomial& a, const Monomial& b);

/// All alphabet_size^length monomials of the given length, lexicographic.
std::vector<Monomial> enumerate_monomials(int alphabet_size, int length);

bool is_lyndon(const Monomial& w);

/// Lyndon words of exactly the given length in lexicographic order (Duval).
std::vector<Monomial> lyndon_words(int alphabet_size, int length);

/// Bracket tree whose leaves are generators.
class BasicCommutator {
public:
    static BasicCommutator leaf(int generator);
    static BasicCommutator bracket(BasicCommutator left, BasicCommutator right);

    bool is_leaf() const noexcept { return !left_; }
    int generator() const noexcept { return generator_; }
    const BasicCommutator& left() const { return *left_; }
    const BasicCommutator& right() const { return *right_; }
    int weight() const noexcept { return weight_; }

    /// Leaf sequence; for a standard bracketing this is the Lyndon word.
    Monomial leaves() const;
    /// "[x1,[x1,x2]]"
    std::string to_string() const;

private:
    int generator_ = 0;
    int weight_ = 1;
    std::shared_ptr<const BasicCommutator> left_;
    std::shared_ptr<const BasicCommutator> right_;
};

/// Standard bracketing of a Lyndon word: split at its longest proper Lyndon
/// suffix and recurse. Throws PreconditionError if `lyndon` is not Lyndon.
BasicCommutator basic_commutator(const Monomial& lyndon);

/// Evaluates the bracket tree in F, leaves as generators.
GroupWord realize(const BasicCommutator& bc, int alphabet_size);

/// Evaluates the bracket tree with leaf x_i replaced by substitution[i-1].
/// The result lies in the weight-th term of the lower central series.
GroupWord realize(const BasicCommutator& bc, const std::vector<GroupWord>& substitution);

} // namespace filtrate
