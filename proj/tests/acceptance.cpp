// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "filtrate/emap.hpp"
#include "filtrate/filtration.hpp"
#include "filtrate/massey.hpp"
#include "properties.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace filtrate;
namespace prop = filtrate::properties;

namespace {

constexpr std::uint64_t kSeed = 20261019;

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome from(const prop::Tally& t) {
    std::string d = std::to_string(t.checked) + " checks, " + std::to_string(t.failures) +
                    " failures";
    if (t.failures > 0)
        d += "; first: " + t.first_failure;
    return {t.ok(), d};
}

Outcome route_agreement() { return from(prop::route_agreement(kSeed, 2000)); }

Outcome magnus_floor() {
    prop::Tally t;
    for (int m = 2; m <= 3; ++m)
        for (int n = 1; n <= 5; ++n)
            t += prop::magnus_floor(m, n);
    return from(t);
}

prop::Tally audit(const EMap& e, int n_max) {
    prop::Tally t;
    const auto b = check_binomial(e, n_max);
    const auto c = check_condition_iii(e, n_max);
    t.expect(b.ok, e.to_string() + " binomial" + (b.violation ? ": " + b.violation->detail : ""));
    t.expect(c.ok, e.to_string() + " (iii)" + (c.violation ? ": " + c.violation->detail : ""));
    return t;
}

Outcome binomial_audits() {
    testing::Gen gen(kSeed + 3);
    prop::Tally t;
    for (int k = 0; k < 10; ++k) {
        std::vector<Integer> a;
        for (int j = 0; j < 7; ++j)
            a.emplace_back(gen.range(0, 12));
        t += audit(EMap::sequence_gcd(a), 8);
    }
    for (long a = 0; a <= 8; ++a)
        t += audit(EMap::constant(a), 8);
    for (unsigned long p : {2ul, 3ul, 5ul})
        for (unsigned long q = 1; q <= 3; ++q)
            t += audit(EMap::zassenhaus(p, q), 8);

    // (iii) implies binomial on random descending tables.
    static const long factors[] = {1, 1, 2, 2, 3, 4, 5, 6, 8, 9, 27, 16};
    std::size_t with_iii = 0;
    for (int k = 0; k < 200; ++k) {
        std::map<int, std::vector<Integer>> rows;
        const int n_max = static_cast<int>(gen.range(2, 8));
        for (int n = 1; n <= n_max; ++n) {
            std::vector<Integer> row(static_cast<std::size_t>(n));
            row.back() = 1;
            for (int i = n - 1; i >= 1; --i)
                row[static_cast<std::size_t>(i - 1)] =
                    gen.range(0, 11) == 0 ? Integer(0)
                                          : row[static_cast<std::size_t>(i)] * factors[gen.range(0, 11)];
            rows[n] = row;
        }
        const auto e = EMap::explicit_table(rows);
        if (check_condition_iii(e, n_max)) {
            ++with_iii;
            t.expect(check_binomial(e, n_max).ok, "random table " + std::to_string(k));
        } else {
            t.pass();
        }
    }
    Outcome o = from(t);
    o.detail += "; " + std::to_string(with_iii) + "/200 random tables satisfy (iii)";
    return o;
}

Outcome recursion_inclusions() {
    const std::vector<RecursiveScheme> schemes{
        AFiltration{{0, 0, 0, 0}}, AFiltration{{2, 3, 4, 6}}, AFiltration{{5, 2, 0, 3}},
        QZassenhaus{2, 1},         QZassenhaus{3, 1},         QZassenhaus{2, 2}};
    prop::Tally t;
    std::uint64_t seed = kSeed + 4;
    for (const auto& s : schemes)
        for (int n = 1; n <= 5; ++n) {
            t += prop::recursion_inclusion(s, n, 200, ++seed);
            if (const auto* a = std::get_if<AFiltration>(&s); a && n >= 2)
                t += prop::permutation_invariance(*a, n, 200, ++seed);
            if (const auto* q = std::get_if<QZassenhaus>(&s); q && n >= 2)
                t += prop::monotonicity(*q, n, 200, ++seed);
        }
    return from(t);
}

Outcome cross_ring() { return from(prop::cross_ring(kSeed + 5, 300)); }

Outcome massey() {
    const long expected[2][4] = {{1, 2, 3, 6}, {3, 8, 18, 48}};
    prop::Tally t;
    for (int m = 2; m <= 3; ++m)
        for (int n = 2; n <= 5; ++n) {
            const auto rank = massey_rank(m, n);
            const auto l = necklace(static_cast<unsigned long>(m), static_cast<unsigned long>(n));
            const long frozen = expected[m - 2][n - 2];
            t.expect(l == frozen && rank == l.get_ui(),
                     "m=" + std::to_string(m) + " n=" + std::to_string(n) + " rank=" +
                         std::to_string(rank) + " necklace=" + l.get_str());
        }
    return from(t);
}

Outcome closure_and_homomorphisms() {
    prop::Tally t;
    t += prop::closure(kSeed + 7, 200);
    t += prop::phi_homomorphism(kSeed + 8, 300);
    t += prop::corner_additivity(kSeed + 9, 100);
    return from(t);
}

Outcome ideal_round_trip() { return from(prop::ideal_round_trip(kSeed + 10, 300)); }

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 route agreement", route_agreement},
        {"2 Magnus-Witt floor", magnus_floor},
        {"3 binomiality audits", binomial_audits},
        {"4 recursion inclusions", recursion_inclusions},
        {"5 cross-ring Zassenhaus", cross_ring},
        {"6 Massey rank", massey},
        {"7 closure and homomorphisms", closure_and_homomorphisms},
        {"8 ideal round trip", ideal_round_trip},
    };
    std::printf("acceptance seed %llu\n", static_cast<unsigned long long>(kSeed));
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  criterion %s  (%.2fs)  %s\n", o.pass ? "PASS" : "FAIL", name, secs,
                    o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
