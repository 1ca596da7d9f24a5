#include "filtrate/error.hpp"
#include "filtrate/words.hpp"
#include "oracle.hpp"
#include "testing.hpp"

#include <doctest.h>

#include <set>

using namespace filtrate;

TEST_CASE("free reduction") {
    const GroupWord w(2, {1, 2, -2, -1, 1});
    CHECK(w.letters() == std::vector<Letter>{1});
    CHECK(GroupWord(2, {1, -1}).empty());
    CHECK_THROWS_AS(GroupWord(2, {3}), PreconditionError);
    CHECK_THROWS_AS(GroupWord(2, {0}), PreconditionError);
}

TEST_CASE("commutator convention a^-1 b^-1 a b") {
    const auto a = GroupWord::generator(2, 1), b = GroupWord::generator(2, 2);
    CHECK(commutator(a, b).letters() == std::vector<Letter>{-1, -2, 1, 2});
    CHECK(parse_word("[x1,x2]", 2) == commutator(a, b));
}

TEST_CASE("group operation examples") {
    const auto x1 = GroupWord::generator(2, 1);
    CHECK(multiply(x1, invert(x1)).empty());
    CHECK(commutator(x1, x1).empty());
    CHECK(power(parse_word("x1*x2", 2), -1).letters() == std::vector<Letter>{-2, -1});
    CHECK(parse_word("x1*x1^-1", 2).empty());
}

TEST_CASE("powers") {
    const auto a = parse_word("x1*x2", 2);
    CHECK(power(a, 0).empty());
    CHECK(power(a, 3) == a * a * a);
    CHECK(power(a, -2) == invert(a) * invert(a));
}

TEST_CASE("word grammar") {
    CHECK(parse_word("e", 2).empty());
    CHECK(parse_word(" x1 ^ 3 ", 1).letters() == std::vector<Letter>{1, 1, 1});
    CHECK(parse_word("x2^-1", 2).letters() == std::vector<Letter>{-2});
    CHECK(parse_word("(x1*x2)^2", 2).letters() == std::vector<Letter>{1, 2, 1, 2});
    CHECK(parse_word("[x1,[x1,x2]]", 2) ==
          commutator(GroupWord::generator(2, 1), parse_word("[x1,x2]", 2)));
    CHECK(parse_word("[x1,x2]^-1", 2).letters() == std::vector<Letter>{-2, -1, 2, 1});
}

TEST_CASE("parse errors carry positions") {
    for (const char* bad : {"x1**", "x", "x0", "[x1,x2", "x1^", "(x1", "y1", "", "x1)"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_word(bad, 2), ParseError);
    }
    try {
        parse_word("x1**", 2);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 3);
    }
    CHECK_THROWS_AS(parse_word("x3", 2), ParseError);
}

TEST_CASE("printing") {
    CHECK(to_string(GroupWord(2)) == "e");
    CHECK(to_string(parse_word("x1^2*x2^-1", 2)) == "x1^2*x2^-1");
    CHECK(to_string(Monomial{}) == "1");
    CHECK(to_string(Monomial{1, 2, 1}) == "x1x2x1");
    CHECK(parse_monomial("x1x2x1", 2) == Monomial{1, 2, 1});
    CHECK(parse_monomial("1", 2).empty());
    CHECK_THROWS_AS(parse_monomial("x1x3", 2), ParseError);
}

TEST_CASE("property: print/parse round trip") {
    testing::Gen gen(11);
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = static_cast<int>(gen.range(1, 4));
        const auto g = gen.word(k, 12);
        CHECK(parse_word(to_string(g), k) == g);
    }
}

TEST_CASE("property: group axioms") {
    testing::Gen gen(12);
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = gen.word(3, 8), b = gen.word(3, 8), c = gen.word(3, 8);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a * invert(a)).empty());
        CHECK(invert(a * b) == invert(b) * invert(a));
        CHECK(commutator(a, b) == invert(commutator(b, a)));
        // Output is freely reduced.
        const auto& ls = (a * b).letters();
        for (std::size_t i = 1; i < ls.size(); ++i)
            CHECK(ls[i] != -ls[i - 1]);
    }
}

TEST_CASE("monomial enumeration and shortlex") {
    const auto all = enumerate_monomials(2, 3);
    REQUIRE(all.size() == 8);
    CHECK(all.front() == Monomial{1, 1, 1});
    CHECK(all[1] == Monomial{1, 1, 2});
    CHECK(all.back() == Monomial{2, 2, 2});
    CHECK(enumerate_monomials(3, 0) == std::vector<Monomial>{Monomial{}});
    CHECK(shortlex_less(Monomial{2}, Monomial{1, 1}));
    CHECK(shortlex_less(Monomial{1, 2}, Monomial{2, 1}));
    CHECK_FALSE(shortlex_less(Monomial{1}, Monomial{1}));
}

TEST_CASE("Lyndon words") {
    CHECK(lyndon_words(2, 1) == std::vector<Monomial>{{1}, {2}});
    CHECK(lyndon_words(2, 2) == std::vector<Monomial>{{1, 2}});
    CHECK(lyndon_words(2, 3) == std::vector<Monomial>{{1, 1, 2}, {1, 2, 2}});
    CHECK(lyndon_words(2, 4) == std::vector<Monomial>{{1, 1, 1, 2}, {1, 1, 2, 2}, {1, 2, 2, 2}});
}

TEST_CASE("property: Duval agrees with brute force") {
    for (int k = 1; k <= 3; ++k)
        for (int n = 1; n <= 6; ++n) {
            std::vector<Monomial> brute;
            for (const auto& w : enumerate_monomials(k, n))
                if (oracle::lyndon_by_rotation(w))
                    brute.push_back(w);
            CHECK(lyndon_words(k, n) == brute);
            for (const auto& w : enumerate_monomials(k, n))
                CHECK(is_lyndon(w) == oracle::lyndon_by_rotation(w));
        }
}

TEST_CASE("standard bracketing") {
    CHECK(basic_commutator({1, 2}).to_string() == "[x1,x2]");
    CHECK(basic_commutator({1, 1, 2}).to_string() == "[x1,[x1,x2]]");
    CHECK(basic_commutator({1, 2, 2}).to_string() == "[[x1,x2],x2]");
    CHECK(basic_commutator({1, 1, 2, 2}).to_string() == "[x1,[[x1,x2],x2]]");
    CHECK(basic_commutator({1, 2, 1, 2, 2}).to_string() == "[[x1,x2],[[x1,x2],x2]]");
    CHECK_THROWS_AS(basic_commutator({2, 1}), PreconditionError);
    CHECK_THROWS_AS(basic_commutator({}), PreconditionError);
}

TEST_CASE("property: bracketing preserves leaves and weight, right factor is Lyndon") {
    for (int k = 1; k <= 3; ++k)
        for (int n = 1; n <= 7; ++n)
            for (const auto& w : lyndon_words(k, n)) {
                const auto bc = basic_commutator(w);
                CHECK(bc.leaves() == w);
                CHECK(bc.weight() == n);
                if (!bc.is_leaf()) {
                    CHECK(is_lyndon(bc.left().leaves()));
                    CHECK(is_lyndon(bc.right().leaves()));
                    // Longest proper Lyndon suffix.
                    const auto right_len = bc.right().leaves().size();
                    for (std::size_t start = 1; start < w.size() - right_len; ++start) {
                        const Monomial suffix(w.begin() + static_cast<long>(start), w.end());
                        CHECK_FALSE(is_lyndon(suffix));
                    }
                }
            }
}

TEST_CASE("realize with substitution") {
    const auto bc = basic_commutator({1, 2});
    const auto u = parse_word("x1*x2", 2), v = parse_word("x2^3", 2);
    CHECK(realize(bc, std::vector<GroupWord>{u, v}) == commutator(u, v));
    CHECK(realize(bc, 2) == parse_word("[x1,x2]", 2));
}
