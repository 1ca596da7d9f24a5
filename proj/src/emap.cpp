#include "filtrate/emap.hpp"

#include "filtrate/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <mutex>
#include <sstream>

namespace filtrate {

struct EMap::GcdMemo {
    std::mutex mutex;
    std::map<std::pair<int, int>, Integer> values;
};

EMap EMap::trivial() { return EMap{}; }

EMap EMap::constant(Integer a) {
    if (a < 0)
        throw PreconditionError("constant e-map base must be non-negative");
    EMap e;
    e.kind_ = Kind::Constant;
    e.a_ = std::move(a);
    return e;
}

EMap EMap::sequence_gcd(std::vector<Integer> a) {
    for (const auto& x : a)
        if (x < 0)
            throw PreconditionError("sequence entries must be non-negative");
    EMap e;
    e.kind_ = Kind::SequenceGcd;
    e.sequence_ = std::move(a);
    e.memo_ = std::make_shared<GcdMemo>();
    return e;
}

EMap EMap::zassenhaus(unsigned long p, unsigned long t) {
    if (!is_prime(p))
        throw PreconditionError("Zassenhaus e-map needs a prime, got " + std::to_string(p));
    if (t < 1)
        throw PreconditionError("Zassenhaus e-map needs t >= 1");
    EMap e;
    e.kind_ = Kind::Zassenhaus;
    e.p_ = p;
    e.t_ = t;
    return e;
}

EMap EMap::explicit_table(std::map<int, std::vector<Integer>> rows) {
    for (const auto& [n, values] : rows) {
        if (n < 1 || static_cast<int>(values.size()) != n)
            throw PreconditionError("row n=" + std::to_string(n) + " must list exactly n values");
        for (const auto& v : values)
            if (v < 0)
                throw PreconditionError("e-map values must be non-negative");
    }
    EMap e;
    e.kind_ = Kind::Explicit;
    e.rows_ = std::move(rows);
    return e;
}

bool EMap::defines(int n) const {
    if (n < 1)
        return false;
    switch (kind_) {
    case Kind::SequenceGcd:
        return static_cast<std::size_t>(n - 1) <= sequence_.size();
    case Kind::Explicit:
        return rows_.count(n) != 0;
    default:
        return true;
    }
}

std::vector<int> EMap::levels(int n_max) const {
    std::vector<int> out;
    for (int n = 1; n <= n_max; ++n)
        if (defines(n))
            out.push_back(n);
    return out;
}

Integer EMap::operator()(int n, int i) const {
    if (i < 1 || i > n)
        throw PreconditionError("e(" + std::to_string(n) + "," + std::to_string(i) +
                                ") needs 1 <= i <= n");
    if (!defines(n))
        throw PreconditionError("e-map " + to_string() + " does not define row n=" +
                                std::to_string(n));
    switch (kind_) {
    case Kind::Trivial:
        return i == n ? 1 : 0;
    case Kind::Constant: {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), a_.get_mpz_t(), static_cast<unsigned long>(n - i));
        return r;
    }
    case Kind::SequenceGcd:
        return i == n ? Integer(1) : sequence_gcd_value(n, i);
    case Kind::Zassenhaus: {
        const unsigned long j =
            ceil_log(static_cast<unsigned long>(n), static_cast<unsigned long>(i), p_);
        Integer r;
        mpz_ui_pow_ui(r.get_mpz_t(), p_, t_ * j);
        return r;
    }
    case Kind::Explicit:
        return rows_.at(n)[static_cast<std::size_t>(i - 1)];
    }
    throw InvariantError("unknown e-map kind");
}

Integer EMap::sequence_gcd_value(int n, int i) const {
    {
        std::lock_guard lock(memo_->mutex);
        auto it = memo_->values.find({n, i});
        if (it != memo_->values.end())
            return it->second;
    }
    // gcd of prod_{j in J} a_j over |J| = n - i, J subset of {1..n-1}.
    const int pool = n - 1;
    const int size = n - i;
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k)
        pick[static_cast<std::size_t>(k)] = k;
    Integer g = 0;
    while (true) {
        Integer prod = 1;
        for (int idx : pick)
            prod *= sequence_[static_cast<std::size_t>(idx)];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), prod.get_mpz_t());
        if (g == 1)
            break; // cannot get any smaller
        int k = size - 1;
        while (k >= 0 && pick[static_cast<std::size_t>(k)] == pool - size + k)
            --k;
        if (k < 0)
            break;
        ++pick[static_cast<std::size_t>(k)];
        for (int m = k + 1; m < size; ++m)
            pick[static_cast<std::size_t>(m)] = pick[static_cast<std::size_t>(m) - 1] + 1;
    }
    std::lock_guard lock(memo_->mutex);
    memo_->values.emplace(std::make_pair(n, i), g);
    return g;
}

std::string EMap::to_string() const {
    switch (kind_) {
    case Kind::Trivial:
        return "trivial";
    case Kind::Constant:
        return "const:" + a_.get_str();
    case Kind::SequenceGcd: {
        std::string s = "gcdseq:";
        for (std::size_t k = 0; k < sequence_.size(); ++k)
            s += (k ? "," : "") + sequence_[k].get_str();
        return s;
    }
    case Kind::Zassenhaus:
        return "zass:" + std::to_string(p_) + "," + std::to_string(t_);
    case Kind::Explicit:
        return "explicit";
    }
    return "?";
}

Integer evaluate(const EMap& e, int n, int i) { return e(n, i); }

unsigned long ceil_log(unsigned long n, unsigned long i, unsigned long p) {
    if (i == 0 || p < 2)
        throw PreconditionError("ceil_log needs i >= 1 and p >= 2");
    unsigned long j = 0;
    Integer reach = i;
    while (reach < n) {
        reach *= p;
        ++j;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Audits

namespace {

AuditResult fail(EMapViolation v) { return AuditResult{false, std::move(v)}; }

std::string idx(int n, int i) { return "(" + std::to_string(n) + "," + std::to_string(i) + ")"; }

} // namespace

AuditResult check_descending(const EMap& e, int n_max) {
    for (int n : e.levels(n_max)) {
        if (e(n, n) != 1)
            return fail({n, n, 0, 0, "e" + idx(n, n) + " = " + e(n, n).get_str() + " != 1"});
        for (int i = 1; i < n; ++i) {
            const Integer a = e(n, i);
            const Integer b = e(n, i + 1);
            if (!divisible(a, b))
                return fail({n, i, 0, 0,
                             "e" + idx(n, i) + " = " + a.get_str() + " not divisible by e" +
                                 idx(n, i + 1) + " = " + b.get_str()});
        }
    }
    return {};
}

AuditResult check_binomial(const EMap& e, int n_max) {
    for (int n : e.levels(n_max)) {
        for (int i = 1; i <= n; ++i) {
            const Integer top = e(n, i);
            if (top == 0)
                continue;
            // il <= n bounds l by n regardless of how large e(n,i) is.
            for (int l = 1; i * l <= n && top >= l; ++l) {
                const Integer b = binomial(top, static_cast<unsigned long>(l));
                const Integer d = e(n, i * l);
                if (!divisible(b, d))
                    return fail({n, i, l, 0,
                                 "binom(" + top.get_str() + "," + std::to_string(l) + ") = " +
                                     b.get_str() + " not divisible by e" + idx(n, i * l) + " = " +
                                     d.get_str()});
            }
        }
    }
    return {};
}

AuditResult check_condition_iii(const EMap& e, int n_max) {
    for (int n : e.levels(n_max)) {
        for (int i = 1; i <= n; ++i) {
            const Integer value = e(n, i);
            if (value == 0)
                continue;
            for (int p = 2; i * p <= n; ++p) {
                if (!is_prime(static_cast<unsigned long>(p)))
                    continue;
                const unsigned long v = valuation(value, static_cast<unsigned long>(p));
                long ipr = i;
                for (unsigned long r = 1; (ipr *= p) <= n; ++r) {
                    if (v < r)
                        break;
                    const Integer target = e(n, static_cast<int>(ipr));
                    const bool ok = target != 0 &&
                                    v - r >= valuation(target, static_cast<unsigned long>(p));
                    if (!ok)
                        return fail({n, i, static_cast<int>(r), static_cast<unsigned long>(p),
                                     "v_" + std::to_string(p) + "(e" + idx(n, i) + ") - " +
                                         std::to_string(r) + " < v_" + std::to_string(p) + "(e" +
                                         idx(n, static_cast<int>(ipr)) + ")"});
                }
            }
        }
    }
    return {};
}

EMap normalize(const EMap& e, int n_max) {
    std::map<int, std::vector<Integer>> rows;
    for (int n : e.levels(n_max)) {
        if (e(n, n) != 1)
            throw PreconditionError("normalize needs e(n,n) = 1; e" + idx(n, n) + " = " +
                                    e(n, n).get_str());
        std::vector<Integer> row;
        Integer g = 0;
        for (int i = 1; i <= n; ++i) {
            const Integer v = e(n, i);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            row.push_back(g);
        }
        rows.emplace(n, std::move(row));
    }
    return EMap::explicit_table(std::move(rows));
}

AuditResult check_commutator_condition(const EMap& e, const RecursionShape& shape, int max_sum) {
    for (int s = 1; s < max_sum; ++s) {
        for (int t = 1; s + t <= max_sum; ++t) {
            if (!shape.in_t(s, t) || !e.defines(s) || !e.defines(t) || !e.defines(s + t))
                continue;
            for (int i = 1; i <= s; ++i)
                for (int j = 1; j <= t; ++j) {
                    const Integer lhs = e(s, i) * e(t, j);
                    const Integer d = e(s + t, i + j);
                    if (!divisible(lhs, d))
                        return fail({s + t, i + j, 0, 0,
                                     "e" + idx(s, i) + " e" + idx(t, j) + " = " + lhs.get_str() +
                                         " not divisible by e" + idx(s + t, i + j) + " = " +
                                         d.get_str()});
                }
        }
    }
    return {};
}

namespace {

// Enumerates non-decreasing (j_1 <= ... <= j_l) with j_k <= bound and sum <= n.
bool power_condition_rec(const EMap& e, int n, int gn, const Integer& fn, std::vector<int>& js,
                         int sum, const Integer& product, EMapViolation& out) {
    const int l = static_cast<int>(js.size());
    if (l >= 1) {
        const Integer lhs = binomial(fn, static_cast<unsigned long>(l)) * product;
        const Integer d = e(n, sum);
        if (!divisible(lhs, d)) {
            std::string list;
            for (int j : js)
                list += (list.empty() ? "" : ",") + std::to_string(j);
            out = {n, sum, l, 0,
                   "binom(f(n)," + std::to_string(l) + ") * prod e(g(n), {" + list + "}) = " +
                       lhs.get_str() + " not divisible by e" + idx(n, sum) + " = " + d.get_str()};
            return false;
        }
    }
    if (fn <= l)
        return true;
    const int start = js.empty() ? 1 : js.back();
    for (int j = start; j <= gn && sum + j <= n; ++j) {
        js.push_back(j);
        const bool ok = power_condition_rec(e, n, gn, fn, js, sum + j, product * e(gn, j), out);
        js.pop_back();
        if (!ok)
            return false;
    }
    return true;
}

} // namespace

AuditResult check_power_condition(const EMap& e, const RecursionShape& shape, int n_max) {
    for (int n = 2; n <= n_max; ++n) {
        const int gn = shape.g(n);
        if (!e.defines(n) || !e.defines(gn))
            continue;
        const Integer fn = shape.f(n);
        std::vector<int> js;
        EMapViolation v;
        if (!power_condition_rec(e, n, gn, fn, js, 0, Integer(1), v))
            return fail(std::move(v));
    }
    return {};
}

// ---------------------------------------------------------------------------
// Ideal membership

std::optional<IdealViolation> ideal_violation(const TruncSeries& s, const EMap& e, int n) {
    if (!s.ring().is_integers())
        throw PreconditionError("ideal membership is decided over Z only");
    if (n < 1)
        throw PreconditionError("level must be positive");
    if (s.cap() < n - 1)
        throw PreconditionError("series cap " + std::to_string(s.cap()) + " below level - 1 = " +
                                std::to_string(n - 1));
    // divisor[k] = gcd(e(n,1..k))
    std::vector<Integer> divisor(static_cast<std::size_t>(n), 0);
    Integer g = 0;
    for (int k = 1; k < n; ++k) {
        const Integer v = e(n, k);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        divisor[static_cast<std::size_t>(k)] = g;
    }
    for (const auto& [w, c] : s.terms()) {
        const auto d = static_cast<int>(w.size());
        if (d >= n)
            break;
        if (!divisible(c, divisor[static_cast<std::size_t>(d)]))
            return IdealViolation{w, c, divisor[static_cast<std::size_t>(d)]};
    }
    return std::nullopt;
}

bool ideal_member(const TruncSeries& s, const EMap& e, int n) {
    return !ideal_violation(s, e, n).has_value();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::vector<Integer> parse_integer_list(std::string_view text, std::size_t base) {
    std::vector<Integer> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start)
            throw ParseError("expected non-negative integer", base + pos);
        out.emplace_back(std::string(text.substr(start, pos - start)), 10);
        if (pos == text.size())
            return out;
        if (text[pos] != ',')
            throw ParseError("expected ','", base + pos);
        ++pos;
    }
}

} // namespace

EMap parse_emap_table(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw ParseError(std::string("e-map table: ") + ex.what(), ex.byte);
    }
    if (!doc.is_array())
        throw ParseError("e-map table must be a JSON array of {\"n\", \"values\"} rows");
    std::map<int, std::vector<Integer>> rows;
    for (const auto& row : doc) {
        if (!row.is_object() || !row.contains("n") || !row.contains("values") ||
            !row["n"].is_number_integer() || !row["values"].is_array())
            throw ParseError("e-map row must be {\"n\": int, \"values\": [...]}");
        std::vector<Integer> values;
        for (const auto& v : row["values"]) {
            std::string digits;
            if (v.is_number_integer())
                digits = v.dump();
            else if (v.is_string())
                digits = v.get<std::string>();
            Integer x;
            if (digits.empty() || x.set_str(digits, 10) != 0)
                throw ParseError("e-map values must be integers or decimal strings");
            values.push_back(x);
        }
        rows[row["n"].get<int>()] = std::move(values);
    }
    try {
        return EMap::explicit_table(std::move(rows));
    } catch (const PreconditionError& ex) {
        throw ParseError(ex.what());
    }
}

EMap parse_emap(std::string_view text) {
    auto starts = [&](std::string_view prefix) { return text.substr(0, prefix.size()) == prefix; };
    if (text == "trivial")
        return EMap::trivial();
    if (starts("const:")) {
        auto v = parse_integer_list(text.substr(6), 6);
        if (v.size() != 1)
            throw ParseError("const: takes one value", 6);
        return EMap::constant(v.front());
    }
    if (starts("gcdseq:"))
        return EMap::sequence_gcd(parse_integer_list(text.substr(7), 7));
    if (starts("zass:")) {
        auto v = parse_integer_list(text.substr(5), 5);
        if (v.size() != 2 || !v[0].fits_ulong_p() || !v[1].fits_ulong_p())
            throw ParseError("zass: takes <p>,<t>", 5);
        const unsigned long p = v[0].get_ui();
        const unsigned long t = v[1].get_ui();
        if (!is_prime(p))
            throw ParseError("zass: p = " + std::to_string(p) + " is not prime", 5);
        if (t < 1)
            throw ParseError("zass: t must be positive", 5);
        return EMap::zassenhaus(p, t);
    }
    if (starts("file:")) {
        const std::string path(text.substr(5));
        std::ifstream in(path);
        if (!in)
            throw ParseError("cannot read e-map table " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_emap_table(buffer.str());
    }
    throw ParseError("unknown e-map spec \"" + std::string(text) +
                         "\" (expected trivial | const:<a> | gcdseq:<a1>,... | zass:<p>,<t> | "
                         "file:<path>)",
                     0);
}

} // namespace filtrate
