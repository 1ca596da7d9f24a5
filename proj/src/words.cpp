#include "filtrate/words.hpp"

#include "filtrate/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace filtrate {

namespace {

void check_alphabet(int alphabet_size) {
    if (alphabet_size < 1 || alphabet_size > 255)
        throw PreconditionError("alphabet size must lie in [1, 255]");
}

} // namespace

GroupWord::GroupWord(int alphabet_size, const std::vector<Letter>& letters)
    : alphabet_(alphabet_size) {
    check_alphabet(alphabet_size);
    letters_.reserve(letters.size());
    for (Letter l : letters) {
        if (l == 0 || std::abs(l) > alphabet_size)
            throw PreconditionError("generator index " + std::to_string(std::abs(l)) +
                                    " outside alphabet of size " + std::to_string(alphabet_size));
        push(l);
    }
}

GroupWord GroupWord::generator(int alphabet_size, int index) {
    return GroupWord(alphabet_size, {index});
}

void GroupWord::push(Letter l) {
    if (!letters_.empty() && letters_.back() == -l)
        letters_.pop_back();
    else
        letters_.push_back(l);
}

GroupWord& GroupWord::operator*=(const GroupWord& rhs) {
    if (rhs.alphabet_ != alphabet_)
        throw PreconditionError("words over different alphabets");
    for (Letter l : rhs.letters_)
        push(l);
    return *this;
}

GroupWord multiply(const GroupWord& a, const GroupWord& b) { return a * b; }

GroupWord invert(const GroupWord& a) {
    std::vector<Letter> out(a.letters().rbegin(), a.letters().rend());
    for (auto& l : out)
        l = -l;
    return GroupWord(a.alphabet_size(), out);
}

GroupWord commutator(const GroupWord& a, const GroupWord& b) {
    return invert(a) * invert(b) * a * b;
}

GroupWord power(const GroupWord& a, long k) {
    GroupWord base = k < 0 ? invert(a) : a;
    unsigned long n = k < 0 ? 0UL - static_cast<unsigned long>(k) : static_cast<unsigned long>(k);
    GroupWord result(a.alphabet_size());
    // Square-and-multiply keeps the intermediate words reduced.
    while (n != 0) {
        if (n & 1UL)
            result *= base;
        n >>= 1;
        if (n != 0)
            base *= GroupWord(base);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class WordParser {
public:
    WordParser(std::string_view text, int alphabet_size) : text_(text), alphabet_(alphabet_size) {}

    GroupWord parse() {
        GroupWord w = word();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return w;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    long integer(bool allow_sign) {
        skip_space();
        bool negative = false;
        if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            negative = text_[pos_] == '-';
            ++pos_;
            skip_space();
        }
        const std::size_t start = pos_;
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            if (value > (std::numeric_limits<long>::max() - 9) / 10)
                fail("integer too large");
            value = value * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == start)
            fail("expected integer");
        return negative ? -value : value;
    }

    GroupWord word() {
        GroupWord w = term();
        while (accept('*'))
            w *= term();
        return w;
    }

    GroupWord term() {
        GroupWord a = atom();
        if (accept('^'))
            a = power(a, integer(true));
        return a;
    }

    GroupWord atom() {
        skip_space();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == 'x') {
            ++pos_;
            const std::size_t at = pos_;
            long index = integer(false);
            if (index < 1 || index > alphabet_) {
                pos_ = at;
                fail("generator x" + std::to_string(index) + " outside alphabet of size " +
                     std::to_string(alphabet_));
            }
            return GroupWord::generator(alphabet_, static_cast<int>(index));
        }
        if (c == 'e') {
            ++pos_;
            return GroupWord(alphabet_);
        }
        if (c == '[') {
            ++pos_;
            GroupWord u = word();
            expect(',');
            GroupWord v = word();
            expect(']');
            return commutator(u, v);
        }
        if (c == '(') {
            ++pos_;
            GroupWord u = word();
            expect(')');
            return u;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    int alphabet_;
    std::size_t pos_ = 0;
};

} // namespace

GroupWord parse_word(std::string_view text, int alphabet_size) {
    check_alphabet(alphabet_size);
    return WordParser(text, alphabet_size).parse();
}

std::string to_string(const GroupWord& g) {
    if (g.empty())
        return "e";
    std::ostringstream out;
    const auto& ls = g.letters();
    for (std::size_t k = 0; k < ls.size();) {
        std::size_t run = 1;
        while (k + run < ls.size() && ls[k + run] == ls[k])
            ++run;
        if (k != 0)
            out << '*';
        out << 'x' << std::abs(ls[k]);
        const long exponent = ls[k] < 0 ? -static_cast<long>(run) : static_cast<long>(run);
        if (exponent != 1)
            out << '^' << exponent;
        k += run;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Monomials

std::string to_string(const Monomial& w) {
    if (w.empty())
        return "1";
    std::string s;
    for (auto x : w)
        s += "x" + std::to_string(x);
    return s;
}

Monomial parse_monomial(std::string_view text, int alphabet_size) {
    check_alphabet(alphabet_size);
    Monomial w;
    if (text.empty() || text == "1")
        return w;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != 'x')
            throw ParseError("expected 'x'", pos);
        ++pos;
        const std::size_t start = pos;
        int index = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            index = index * 10 + (text[pos] - '0');
            if (index > 255)
                throw ParseError("generator index too large", start);
            ++pos;
        }
        if (pos == start)
            throw ParseError("expected generator index", pos);
        if (index < 1 || index > alphabet_size)
            throw ParseError("generator x" + std::to_string(index) + " outside alphabet", start);
        w.push_back(static_cast<std::uint8_t>(index));
    }
    return w;
}

bool shortlex_less(const Monomial& a, const Monomial& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

std::vector<Monomial> enumerate_monomials(int alphabet_size, int length) {
    check_alphabet(alphabet_size);
    if (length < 0)
        throw PreconditionError("monomial length must be non-negative");
    std::vector<Monomial> out;
    Monomial w(static_cast<std::size_t>(length), 1);
    // Odometer in lexicographic order.
    while (true) {
        out.push_back(w);
        int k = length - 1;
        while (k >= 0 && w[static_cast<std::size_t>(k)] == alphabet_size) {
            w[static_cast<std::size_t>(k)] = 1;
            --k;
        }
        if (k < 0)
            break;
        ++w[static_cast<std::size_t>(k)];
    }
    return out;
}

bool is_lyndon(const Monomial& w) {
    if (w.empty())
        return false;
    for (std::size_t r = 1; r < w.size(); ++r) {
        Monomial rot(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
        if (!(w < rot))
            return false;
    }
    return true;
}

std::vector<Monomial> lyndon_words(int alphabet_size, int length) {
    check_alphabet(alphabet_size);
    if (length < 1)
        throw PreconditionError("Lyndon word length must be positive");
    // Duval's generation: all Lyndon words of length <= n in lexicographic order.
    std::vector<Monomial> out;
    const auto n = static_cast<std::size_t>(length);
    Monomial w{1};
    while (!w.empty()) {
        if (w.size() == n)
            out.push_back(w);
        const std::size_t m = w.size();
        while (w.size() < n)
            w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == alphabet_size)
            w.pop_back();
        if (!w.empty())
            ++w.back();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Basic commutators

BasicCommutator BasicCommutator::leaf(int generator) {
    BasicCommutator bc;
    bc.generator_ = generator;
    return bc;
}

BasicCommutator BasicCommutator::bracket(BasicCommutator left, BasicCommutator right) {
    BasicCommutator bc;
    bc.weight_ = left.weight_ + right.weight_;
    bc.left_ = std::make_shared<const BasicCommutator>(std::move(left));
    bc.right_ = std::make_shared<const BasicCommutator>(std::move(right));
    return bc;
}

Monomial BasicCommutator::leaves() const {
    if (is_leaf())
        return {static_cast<std::uint8_t>(generator_)};
    Monomial w = left_->leaves();
    const Monomial r = right_->leaves();
    w.insert(w.end(), r.begin(), r.end());
    return w;
}

std::string BasicCommutator::to_string() const {
    if (is_leaf())
        return "x" + std::to_string(generator_);
    return "[" + left_->to_string() + "," + right_->to_string() + "]";
}

BasicCommutator basic_commutator(const Monomial& lyndon) {
    if (!is_lyndon(lyndon))
        throw PreconditionError(to_string(lyndon) + " is not a Lyndon word");
    if (lyndon.size() == 1)
        return BasicCommutator::leaf(lyndon.front());
    for (std::size_t split = 1; split < lyndon.size(); ++split) {
        Monomial suffix(lyndon.begin() + static_cast<std::ptrdiff_t>(split), lyndon.end());
        if (is_lyndon(suffix)) {
            Monomial prefix(lyndon.begin(), lyndon.begin() + static_cast<std::ptrdiff_t>(split));
            return BasicCommutator::bracket(basic_commutator(prefix), basic_commutator(suffix));
        }
    }
    // A single letter is always a Lyndon suffix, so the loop returns.
    throw InvariantError("no Lyndon suffix found");
}

GroupWord realize(const BasicCommutator& bc, int alphabet_size) {
    if (bc.is_leaf())
        return GroupWord::generator(alphabet_size, bc.generator());
    return commutator(realize(bc.left(), alphabet_size), realize(bc.right(), alphabet_size));
}

GroupWord realize(const BasicCommutator& bc, const std::vector<GroupWord>& substitution) {
    if (bc.is_leaf()) {
        const auto k = static_cast<std::size_t>(bc.generator());
        if (k == 0 || k > substitution.size())
            throw PreconditionError("no substitution for generator x" + std::to_string(k));
        return substitution[k - 1];
    }
    return commutator(realize(bc.left(), substitution), realize(bc.right(), substitution));
}

} // namespace filtrate
