#ifndef HSD_SERIES_HPP
#define HSD_SERIES_HPP

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hsd/errors.hpp"
#include "hsd/polynomial.hpp"

namespace hsd {

/// Univariate power series truncated at `order`: exactly `order` stored
/// coefficients c_0..c_{order-1}, every identity understood modulo terms of
/// degree >= order. Operations refuse to mix orders (OrderMismatch) or
/// ambient primes (PrimeMismatch) rather than silently re-truncate; use
/// truncated() to change order explicitly.
template <coefficient_field C>
class TruncSeries {
   public:
    TruncSeries(std::uint32_t order, std::uint64_t p) : order_(order), p_(p) {
        if (order == 0) throw Error(errc::bad_input, "series order must be positive");
        c_.assign(order, C::zero(p));
    }

    TruncSeries(std::vector<C> coefficients, std::uint64_t p)
        : order_(static_cast<std::uint32_t>(coefficients.size())), p_(p), c_(std::move(coefficients)) {
        if (c_.empty()) throw Error(errc::bad_input, "series order must be positive");
        for (const C& a : c_)
            if (a.prime() != p_) throw Error(errc::prime_mismatch, "series coefficients over mixed fields");
    }

    static TruncSeries zero(std::uint32_t order, std::uint64_t p) { return TruncSeries(order, p); }

    static TruncSeries constant(C value, std::uint32_t order) {
        TruncSeries r(order, value.prime());
        r.c_[0] = std::move(value);
        return r;
    }

    /// The series T itself (zero when order is 1).
    static TruncSeries variable(std::uint32_t order, std::uint64_t p) {
        TruncSeries r(order, p);
        if (order > 1) r.c_[1] = C::one(p);
        return r;
    }

    static TruncSeries monomial(C coefficient, std::uint32_t degree, std::uint32_t order) {
        TruncSeries r(order, coefficient.prime());
        if (degree < order) r.c_[degree] = std::move(coefficient);
        return r;
    }

    std::uint32_t order() const { return order_; }
    std::uint64_t prime() const { return p_; }

    const C& coeff(std::uint32_t i) const {
        if (i >= order_) throw Error(errc::bad_input, "series coefficient index beyond the order");
        return c_[i];
    }

    void set_coeff(std::uint32_t i, C value) {
        if (i >= order_) throw Error(errc::bad_input, "series coefficient index beyond the order");
        if (value.prime() != p_) throw Error(errc::prime_mismatch, "series coefficient over a different field");
        c_[i] = std::move(value);
    }

    bool is_zero() const {
        for (const C& a : c_)
            if (!a.is_zero()) return false;
        return true;
    }

    TruncSeries truncated(std::uint32_t new_order) const {
        if (new_order == 0 || new_order > order_)
            throw Error(errc::order_mismatch, "can only truncate to a smaller positive order");
        TruncSeries r(new_order, p_);
        for (std::uint32_t i = 0; i < new_order; ++i) r.c_[i] = c_[i];
        return r;
    }

    TruncSeries operator-() const {
        TruncSeries r(order_, p_);
        for (std::uint32_t i = 0; i < order_; ++i) r.c_[i] = -c_[i];
        return r;
    }

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) {
        a.check(b);
        for (std::uint32_t i = 0; i < a.order_; ++i) a.c_[i] = a.c_[i] + b.c_[i];
        return a;
    }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) {
        a.check(b);
        for (std::uint32_t i = 0; i < a.order_; ++i) a.c_[i] = a.c_[i] - b.c_[i];
        return a;
    }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.check(b);
        TruncSeries r(a.order_, a.p_);
        for (std::uint32_t i = 0; i < a.order_; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::uint32_t j = 0; i + j < a.order_; ++j) {
                if (b.c_[j].is_zero()) continue;
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
            }
        }
        return r;
    }

    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    TruncSeries scaled(const C& k) const {
        TruncSeries r(order_, p_);
        for (std::uint32_t i = 0; i < order_; ++i) r.c_[i] = c_[i] * k;
        return r;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        a.check(b);
        for (std::uint32_t i = 0; i < a.order_; ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

    TruncSeries pow(std::uint64_t e) const {
        // A series with zero constant term dies at exponent >= order.
        if (c_[0].is_zero() && e >= order_) return zero(order_, p_);
        TruncSeries base = *this, r = constant(C::one(p_), order_);
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

   private:
    void check(const TruncSeries& o) const {
        if (order_ != o.order_)
            throw Error(errc::order_mismatch, "series of orders " + std::to_string(order_) + " and " +
                                                  std::to_string(o.order_));
        if (p_ != o.p_) throw Error(errc::prime_mismatch, "series over mixed fields");
    }

    std::uint32_t order_;
    std::uint64_t p_;
    std::vector<C> c_;
};

/// Multiplicative inverse of a unit series (invertible constant term);
/// the usual triangular recurrence b_k = -a_0^{-1} sum_{i>=1} a_i b_{k-i}.
template <coefficient_field C>
TruncSeries<C> inverse(const TruncSeries<C>& a) {
    if (a.coeff(0).is_zero())
        throw Error(errc::not_invertible, "series with zero constant term has no inverse");
    const std::uint32_t n = a.order();
    TruncSeries<C> b(n, a.prime());
    C a0_inv = C::one(a.prime()) / a.coeff(0);
    b.set_coeff(0, a0_inv);
    for (std::uint32_t k = 1; k < n; ++k) {
        C acc = C::zero(a.prime());
        for (std::uint32_t i = 1; i <= k; ++i) {
            if (a.coeff(i).is_zero()) continue;
            acc = acc + a.coeff(i) * b.coeff(k - i);
        }
        b.set_coeff(k, -(a0_inv * acc));
    }
    return b;
}

/// f(g(T)) truncated to the common order; Horner over the series ring.
/// Requires g(0) = 0 so that the substitution is defined on truncations.
template <coefficient_field C>
TruncSeries<C> compose(const TruncSeries<C>& f, const TruncSeries<C>& g) {
    if (f.order() != g.order())
        throw Error(errc::order_mismatch, "composing series of different orders");
    if (f.prime() != g.prime()) throw Error(errc::prime_mismatch, "composing series over mixed fields");
    if (!g.coeff(0).is_zero())
        throw Error(errc::nonzero_constant_term, "inner series of a composition must vanish at 0");
    const std::uint32_t n = f.order();
    TruncSeries<C> acc = TruncSeries<C>::constant(f.coeff(n - 1), n);
    for (std::uint32_t i = n - 1; i-- > 0;) {
        acc = acc * g;
        acc.set_coeff(0, acc.coeff(0) + f.coeff(i));
    }
    return acc;
}

/// Compositional inverse: Q with P(Q) = Q(P) = T up to the order. Requires
/// P(0) = 0 and an invertible linear coefficient. Newton iteration with
/// order doubling: if Q is correct mod T^k then
///     Q - (P(Q) - T) / P'(Q)
/// is correct mod T^{2k}, because P(Q*) - P(Q) = P'(Q) h + h^2 (...) for the
/// true inverse Q* = Q + h and the remainder has valuation 2k. Only p_1 and
/// the unit series P'(Q) are inverted, so the iteration is valid in any
/// characteristic; the formal derivative may lose terms (k p_k = 0 mod p)
/// without harm.
template <coefficient_field C>
    requires std::constructible_from<C, Fp>
TruncSeries<C> revert(const TruncSeries<C>& P) {
    if (!P.coeff(0).is_zero())
        throw Error(errc::not_invertible, "reversion needs a zero constant term");
    const std::uint32_t n = P.order();
    if (n < 2 || P.coeff(1).is_zero())
        throw Error(errc::not_invertible, "reversion needs an invertible linear coefficient");
    const std::uint64_t p = P.prime();

    auto padded = [&](const TruncSeries<C>& f, std::uint32_t order) {
        TruncSeries<C> r(order, p);
        for (std::uint32_t i = 0; i < f.order() && i < order; ++i) r.set_coeff(i, f.coeff(i));
        return r;
    };
    // P' at the working order; the top coefficient is unknown there, which
    // only disturbs terms beyond the stage's target precision.
    auto derivative_at = [&](std::uint32_t order) {
        TruncSeries<C> r(order, p);
        for (std::uint32_t k = 1; k < n && k - 1 < order; ++k)
            r.set_coeff(k - 1, P.coeff(k) * C(Fp(k, p)));
        return r;
    };

    TruncSeries<C> q(2, p);
    q.set_coeff(1, C::one(p) / P.coeff(1));
    for (std::uint32_t m = q.order(); m < n;) {
        m = std::min<std::uint32_t>(2 * m, n);
        TruncSeries<C> guess = padded(q, m);
        TruncSeries<C> residue = compose(padded(P, m), guess) - TruncSeries<C>::variable(m, p);
        TruncSeries<C> slope = compose(derivative_at(m), guess);
        q = guess - residue * inverse(slope);
    }
    return q;
}

template <coefficient_field C>
std::string to_string(const TruncSeries<C>& f, const std::string& var = "T") {
    std::string out;
    for (std::uint32_t i = 0; i < f.order(); ++i) {
        const C& a = f.coeff(i);
        if (a.is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += coefficient_text(a);
            continue;
        }
        if (!a.is_one()) out += coefficient_text(a) + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

/// Coefficients with internal structure are parenthesized so series text
/// re-parses to the same value.
template <coefficient_field C>
std::string coefficient_text(const C& a) {
    std::string t = to_string(a);
    bool atomic = t.find_first_of("+-*/ ") == std::string::npos;
    if (atomic || (t.front() == '(' && t.back() == ')')) return t;
    return "(" + t + ")";
}

template <coefficient_field C>
std::ostream& operator<<(std::ostream& os, const TruncSeries<C>& f) {
    return os << to_string(f);
}

}  // namespace hsd

#endif
