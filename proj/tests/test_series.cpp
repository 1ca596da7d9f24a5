#include "filtrate/error.hpp"
#include "filtrate/series.hpp"
#include "oracle.hpp"
#include "testing.hpp"

#include <doctest.h>

using namespace filtrate;

namespace {

TruncSeries from_poly(const oracle::Poly& p, const Ring& r, int k, int cap) {
    TruncSeries s(r, k, cap);
    for (const auto& [w, c] : p)
        s.add_term(w, c);
    return s;
}

} // namespace

TEST_CASE("Magnus expansion of a commutator") {
    const auto s = magnus(parse_word("[x1,x2]", 2), Ring::integers(), 2);
    TruncSeries expected = TruncSeries::one(Ring::integers(), 2, 2);
    expected.add_term({1, 2}, 1);
    expected.add_term({2, 1}, -1);
    CHECK(s == expected);
}

TEST_CASE("Magnus expansion of an inverse generator") {
    const auto s = magnus(parse_word("x1^-1", 1), Ring::integers(), 2);
    CHECK(s.coefficient({}) == 1);
    CHECK(s.coefficient({1}) == -1);
    CHECK(s.coefficient({1, 1}) == 1);
    CHECK(s.terms().size() == 3);
    CHECK_THROWS_AS(s.coefficient({1, 1, 1}), PreconditionError);
}

TEST_CASE("Magnus over Z/m reduces coefficients") {
    const auto s = magnus(parse_word("x1^5", 1), Ring::mod(5), 3);
    // (1+x)^5 = 1 + 5x + 10x^2 + 10x^3 + ...
    CHECK(s == TruncSeries::one(Ring::mod(5), 1, 3));
    const auto t = magnus(parse_word("x1^-1", 1), Ring::mod(3), 2);
    CHECK(t.coefficient({1}) == 2);
}

TEST_CASE("arithmetic basics") {
    const Ring z = Ring::integers();
    const auto x = TruncSeries::monomial(z, 2, 3, {1});
    const auto y = TruncSeries::monomial(z, 2, 3, {2});
    const auto xy = x * y;
    CHECK(xy.coefficient({1, 2}) == 1);
    CHECK(xy.coefficient({2, 1}) == 0);
    CHECK((x - x).is_zero());
    CHECK((x * x * x * x).is_zero()); // beyond the cap
    CHECK(scale(3, x).coefficient({1}) == 3);
    CHECK(add(x, y).terms().size() == 2);
    CHECK(x.component(1) == x);
    CHECK(x.component(2).is_zero());
    CHECK_THROWS_AS(inverse(x), PreconditionError);
    CHECK_THROWS_AS(x + TruncSeries(z, 2, 2), PreconditionError);
    CHECK_THROWS_AS(TruncSeries(z, 2, 0), PreconditionError);
}

TEST_CASE("products and inverses") {
    const Ring z = Ring::integers();
    const auto x1 = TruncSeries::monomial(z, 2, 2, {1});
    const auto x2 = TruncSeries::monomial(z, 2, 2, {2});
    const auto one = TruncSeries::one(z, 2, 2);
    CHECK(mul(x1, x2) == TruncSeries::monomial(z, 2, 2, {1, 2}));
    CHECK_FALSE(mul(x1, x2) == mul(x2, x1));
    const auto p = mul(one + x1, one + x2);
    CHECK(p == one + x1 + x2 + TruncSeries::monomial(z, 2, 2, {1, 2}));
    CHECK(p.truncate(1) == (one + x1 + x2).truncate(1));

    TruncSeries geo = TruncSeries::one(z, 1, 3);
    geo.add_term({1}, -1);
    geo.add_term({1, 1}, 1);
    geo.add_term({1, 1, 1}, -1);
    CHECK(inverse(TruncSeries::one(z, 1, 3) + TruncSeries::monomial(z, 1, 3, {1})) == geo);
    CHECK(inverse(one) == one);

    TruncSeries expected = one - x1 - x2;
    for (const auto& w : enumerate_monomials(2, 2))
        expected.add_term(w, 1);
    CHECK(inverse(one + x1 + x2) == expected);
    CHECK(inverse(TruncSeries::constant(Ring::mod(7), 1, 2, 3)) ==
          TruncSeries::constant(Ring::mod(7), 1, 2, 5));
}

TEST_CASE("coefficient lookups") {
    const Ring z = Ring::integers();
    CHECK(coefficient(magnus(parse_word("x1*x2", 2), z, 2), {1, 2}) == 1);
    CHECK(coefficient(magnus(parse_word("[x1,x2]", 2), z, 2), {1}) == 0);
    CHECK(coefficient(TruncSeries::one(z, 2, 1), {}) == 1);
    CHECK(magnus(parse_word("x1", 2), z, 3) ==
          TruncSeries::one(z, 2, 3) + TruncSeries::monomial(z, 2, 3, {1}));
}

TEST_CASE("property: geometric series inverts 1 - beta") {
    testing::Gen gen(105);
    for (int trial = 0; trial < 200; ++trial) {
        const int cap = static_cast<int>(gen.range(1, 4));
        const Ring r = gen.coin() ? Ring::integers() : Ring::mod(6);
        const auto beta = gen.series(r, 2, cap, 5, 1, cap, 4);
        TruncSeries sum(r, 2, cap), power = TruncSeries::one(r, 2, cap);
        for (int k = 0; k <= cap; ++k) {
            sum += power;
            power = power * beta;
        }
        CHECK(testing::one_minus(beta) * sum == TruncSeries::one(r, 2, cap));
    }
}

TEST_CASE("zero elision and canonical form") {
    TruncSeries s(Ring::mod(4), 1, 2);
    s.add_term({1}, 2);
    s.add_term({1}, 2);
    CHECK(s.is_zero());
    s.add_term({1}, -1);
    CHECK(s.coefficient({1}) == 3);
}

TEST_CASE("property: Magnus agrees with the sparse product oracle") {
    testing::Gen gen(101);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = static_cast<int>(gen.range(1, 3));
        const int cap = static_cast<int>(gen.range(1, 5));
        const auto g = gen.word(k, 10);
        const auto ref = oracle::magnus(g, cap);
        CHECK(magnus(g, Ring::integers(), cap) == from_poly(ref, Ring::integers(), k, cap));
        const auto m = static_cast<unsigned long>(gen.range(2, 9));
        CHECK(magnus(g, Ring::mod(m), cap) == from_poly(ref, Ring::mod(m), k, cap));
    }
}

TEST_CASE("property: Magnus is a homomorphism") {
    testing::Gen gen(102);
    for (int trial = 0; trial < 500; ++trial) {
        const int cap = static_cast<int>(gen.range(1, 5));
        const Ring r = trial % 2 == 0 ? Ring::integers() : Ring::mod(6);
        const auto a = gen.word(3, 8), b = gen.word(3, 8);
        CHECK(magnus(a * b, r, cap) == magnus(a, r, cap) * magnus(b, r, cap));
        CHECK(magnus(invert(a), r, cap) == inverse(magnus(a, r, cap)));
        CHECK(magnus(GroupWord(3), r, cap) == TruncSeries::one(r, 3, cap));
    }
}

TEST_CASE("property: ring axioms on random series") {
    testing::Gen gen(103);
    for (int trial = 0; trial < 150; ++trial) {
        const Ring r = gen.coin() ? Ring::integers() : Ring::mod(static_cast<unsigned long>(gen.range(2, 10)));
        const int cap = static_cast<int>(gen.range(1, 4));
        auto a = gen.series(r, 2, cap, 6, 0, cap, 5);
        auto b = gen.series(r, 2, cap, 6, 0, cap, 5);
        auto c = gen.series(r, 2, cap, 6, 0, cap, 5);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) - b == a);
        // Inverse of a series with constant term 1 (always a unit).
        auto u = gen.series(r, 2, cap, 6, 1, cap, 5);
        u += TruncSeries::one(r, 2, cap);
        const auto ui = inverse(u);
        CHECK(u * ui == TruncSeries::one(r, 2, cap));
        CHECK(ui * u == TruncSeries::one(r, 2, cap));
        // Truncation is a ring map.
        if (cap > 1)
            CHECK((a * b).truncate(cap - 1) == a.truncate(cap - 1) * b.truncate(cap - 1));
    }
}

TEST_CASE("property: sum of components recovers the series") {
    testing::Gen gen(104);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = gen.series(Ring::integers(), 3, 4, 10, 0, 4, 9);
        TruncSeries sum(Ring::integers(), 3, 4);
        for (int d = 0; d <= 4; ++d)
            sum += s.component(d);
        CHECK(sum == s);
    }
}
