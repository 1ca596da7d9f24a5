#include "filtrate/series.hpp"

#include "filtrate/error.hpp"

#include <cstdlib>
#include <string>

namespace filtrate {

TruncSeries::TruncSeries(Ring ring, int alphabet_size, int cap)
    : ring_(std::move(ring)), alphabet_(alphabet_size), cap_(cap) {
    if (alphabet_size < 1 || alphabet_size > 255)
        throw PreconditionError("alphabet size must lie in [1, 255]");
    if (cap < 1)
        throw PreconditionError("degree cap must be positive");
}

TruncSeries TruncSeries::constant(Ring ring, int alphabet_size, int cap, const Integer& c) {
    TruncSeries s(std::move(ring), alphabet_size, cap);
    s.add_term({}, c);
    return s;
}

TruncSeries TruncSeries::monomial(Ring ring, int alphabet_size, int cap, const Monomial& w,
                                  const Integer& c) {
    TruncSeries s(std::move(ring), alphabet_size, cap);
    s.add_term(w, c);
    return s;
}

void TruncSeries::add_term(const Monomial& w, const Integer& c) {
    if (static_cast<int>(w.size()) > cap_)
        return;
    for (auto x : w)
        if (x < 1 || x > alphabet_)
            throw PreconditionError("monomial " + to_string(w) + " outside alphabet");
    auto [it, inserted] = terms_.try_emplace(w, 0);
    it->second = ring_.reduce(it->second + c);
    if (it->second == 0)
        terms_.erase(it);
}

Integer TruncSeries::coefficient(const Monomial& w) const {
    if (static_cast<int>(w.size()) > cap_)
        throw PreconditionError("coefficient of " + to_string(w) + " requested beyond cap " +
                                std::to_string(cap_));
    auto it = terms_.find(w);
    return it == terms_.end() ? Integer(0) : it->second;
}

TruncSeries TruncSeries::component(int d) const {
    TruncSeries out(ring_, alphabet_, cap_);
    for (const auto& [w, c] : terms_)
        if (static_cast<int>(w.size()) == d)
            out.terms_.emplace(w, c);
    return out;
}

TruncSeries TruncSeries::truncate(int cap) const {
    if (cap > cap_)
        throw PreconditionError("cannot raise the cap of a truncated series");
    TruncSeries out(ring_, alphabet_, cap);
    for (const auto& [w, c] : terms_)
        if (static_cast<int>(w.size()) <= cap)
            out.terms_.emplace(w, c);
    return out;
}

void TruncSeries::check_compatible(const TruncSeries& rhs) const {
    if (!(ring_ == rhs.ring_) || alphabet_ != rhs.alphabet_ || cap_ != rhs.cap_)
        throw PreconditionError("series parameters differ: " + ring_.to_string() + "/" +
                                std::to_string(alphabet_) + "/" + std::to_string(cap_) + " vs " +
                                rhs.ring_.to_string() + "/" + std::to_string(rhs.alphabet_) +
                                "/" + std::to_string(rhs.cap_));
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& rhs) {
    check_compatible(rhs);
    for (const auto& [w, c] : rhs.terms_)
        add_term(w, c);
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& rhs) {
    check_compatible(rhs);
    for (const auto& [w, c] : rhs.terms_)
        add_term(w, -c);
    return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_compatible(b);
    TruncSeries out(a.ring_, a.alphabet_, a.cap_);
    Monomial w;
    for (const auto& [u, cu] : a.terms_) {
        const int room = a.cap_ - static_cast<int>(u.size());
        for (const auto& [v, cv] : b.terms_) {
            // Terms are ordered by length, so the rest are too long as well.
            if (static_cast<int>(v.size()) > room)
                break;
            w = u;
            w.insert(w.end(), v.begin(), v.end());
            out.add_term(w, cu * cv);
        }
    }
    return out;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.ring_ == b.ring_ && a.alphabet_ == b.alphabet_ && a.cap_ == b.cap_ &&
           a.terms_ == b.terms_;
}

TruncSeries add(const TruncSeries& a, const TruncSeries& b) { return a + b; }
TruncSeries mul(const TruncSeries& a, const TruncSeries& b) { return a * b; }

TruncSeries scale(const Integer& c, const TruncSeries& a) {
    TruncSeries out(a.ring(), a.alphabet_size(), a.cap());
    for (const auto& [w, x] : a.terms())
        out.add_term(w, c * x);
    return out;
}

TruncSeries inverse(const TruncSeries& a) {
    const Integer c = a.coefficient({});
    const Integer c_inv = a.ring().unit_inverse(c);
    // a * c^{-1} = 1 - beta
    TruncSeries one = TruncSeries::one(a.ring(), a.alphabet_size(), a.cap());
    TruncSeries beta = one - scale(c_inv, a);
    TruncSeries sum = one;
    TruncSeries power = one;
    for (int k = 1; k <= a.cap(); ++k) {
        power = power * beta;
        if (power.is_zero())
            break;
        sum += power;
    }
    return scale(c_inv, sum);
}

// ---------------------------------------------------------------------------
// Magnus expansion
//
// Evaluated on a dense buffer indexed by monomials of length <= cap: a
// monomial u of length l with letters u_1..u_l sits at
//   offset[l] + sum_j (u_j - 1) k^{l-j}.
// Right multiplication by (1 + x_i) adds s[u] into s[u x_i]; right
// multiplication by (1 + x_i)^{-1} solves t (1 + x_i) = s by
// t[u x_i] = s[u x_i] - t[u], processed by increasing length.

namespace {

class DenseSeries {
public:
    DenseSeries(const Ring& ring, int alphabet_size, int cap)
        : ring_(ring), k_(static_cast<std::size_t>(alphabet_size)), cap_(cap) {
        std::size_t total = 0;
        std::size_t layer = 1;
        for (int l = 0; l <= cap; ++l) {
            offset_.push_back(total);
            width_.push_back(layer);
            total += layer;
            if (total > (std::size_t{1} << 24))
                throw PreconditionError("alphabet_size^cap too large for a dense expansion");
            layer *= k_;
        }
        coeffs_.assign(total, 0);
        coeffs_[0] = ring_.reduce(1);
    }

    void right_multiply_generator(std::size_t gen) {
        for (int l = cap_ - 1; l >= 0; --l) {
            const auto src = offset_[static_cast<std::size_t>(l)];
            const auto dst = offset_[static_cast<std::size_t>(l) + 1];
            for (std::size_t j = 0; j < width_[static_cast<std::size_t>(l)]; ++j) {
                const Integer& c = coeffs_[src + j];
                if (c == 0)
                    continue;
                Integer& target = coeffs_[dst + j * k_ + gen];
                target += c;
                normalize(target);
            }
        }
    }

    void right_multiply_inverse_generator(std::size_t gen) {
        for (int l = 1; l <= cap_; ++l) {
            const auto src = offset_[static_cast<std::size_t>(l) - 1];
            const auto dst = offset_[static_cast<std::size_t>(l)];
            for (std::size_t j = 0; j < width_[static_cast<std::size_t>(l) - 1]; ++j) {
                const Integer& c = coeffs_[src + j];
                if (c == 0)
                    continue;
                Integer& target = coeffs_[dst + j * k_ + gen];
                target -= c;
                normalize(target);
            }
        }
    }

    TruncSeries to_sparse() const {
        TruncSeries out(ring_, static_cast<int>(k_), cap_);
        Monomial w;
        for (int l = 0; l <= cap_; ++l) {
            const auto base = offset_[static_cast<std::size_t>(l)];
            for (std::size_t j = 0; j < width_[static_cast<std::size_t>(l)]; ++j) {
                const Integer& c = coeffs_[base + j];
                if (c == 0)
                    continue;
                w.assign(static_cast<std::size_t>(l), 1);
                std::size_t rest = j;
                for (int p = l - 1; p >= 0; --p) {
                    w[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(rest % k_ + 1);
                    rest /= k_;
                }
                out.add_term(w, c);
            }
        }
        return out;
    }

private:
    void normalize(Integer& v) const {
        if (!ring_.is_integers())
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), ring_.modulus().get_mpz_t());
    }

    Ring ring_;
    std::size_t k_;
    int cap_;
    std::vector<std::size_t> offset_;
    std::vector<std::size_t> width_;
    std::vector<Integer> coeffs_;
};

} // namespace

TruncSeries magnus(const GroupWord& g, const Ring& ring, int cap) {
    if (cap < 1)
        throw PreconditionError("degree cap must be positive");
    DenseSeries s(ring, g.alphabet_size(), cap);
    for (Letter l : g.letters()) {
        const auto gen = static_cast<std::size_t>(std::abs(l) - 1);
        if (l > 0)
            s.right_multiply_generator(gen);
        else
            s.right_multiply_inverse_generator(gen);
    }
    return s.to_sparse();
}

} // namespace filtrate
