#ifndef HSD_BISERIES_HPP
#define HSD_BISERIES_HPP

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsd/errors.hpp"
#include "hsd/fp.hpp"
#include "hsd/series.hpp"

namespace hsd {

/// Bivariate power series in U and T truncated by total degree: coefficients
/// c_{i,j} are stored for all i + j < order. Total-degree truncation makes
/// the substitution T -> U + T exact through degree order-1, which is what
/// every two-variable identity in this library is checked against.
template <coefficient_field C>
class TruncBiSeries {
   public:
    TruncBiSeries(std::uint32_t order, std::uint64_t p) : order_(order), p_(p) {
        if (order == 0) throw Error(errc::bad_input, "series order must be positive");
        c_.assign(static_cast<std::size_t>(order) * (order + 1) / 2, C::zero(p));
    }

    static TruncBiSeries zero(std::uint32_t order, std::uint64_t p) { return TruncBiSeries(order, p); }

    static TruncBiSeries constant(C value, std::uint32_t order) {
        TruncBiSeries r(order, value.prime());
        r.c_[0] = std::move(value);
        return r;
    }

    std::uint32_t order() const { return order_; }
    std::uint64_t prime() const { return p_; }

    const C& at(std::uint32_t u_exp, std::uint32_t t_exp) const { return c_[index(u_exp, t_exp)]; }

    void set(std::uint32_t u_exp, std::uint32_t t_exp, C value) {
        if (value.prime() != p_) throw Error(errc::prime_mismatch, "coefficient over a different field");
        c_[index(u_exp, t_exp)] = std::move(value);
    }

    bool is_zero() const {
        for (const C& a : c_)
            if (!a.is_zero()) return false;
        return true;
    }

    TruncBiSeries operator-() const {
        TruncBiSeries r(order_, p_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
        return r;
    }

    friend TruncBiSeries operator+(TruncBiSeries a, const TruncBiSeries& b) {
        a.check(b);
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = a.c_[i] + b.c_[i];
        return a;
    }
    friend TruncBiSeries operator-(TruncBiSeries a, const TruncBiSeries& b) {
        a.check(b);
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = a.c_[i] - b.c_[i];
        return a;
    }

    friend TruncBiSeries operator*(const TruncBiSeries& a, const TruncBiSeries& b) {
        a.check(b);
        TruncBiSeries r(a.order_, a.p_);
        for (std::uint32_t i1 = 0; i1 < a.order_; ++i1)
            for (std::uint32_t j1 = 0; i1 + j1 < a.order_; ++j1) {
                const C& x = a.at(i1, j1);
                if (x.is_zero()) continue;
                for (std::uint32_t i2 = 0; i1 + j1 + i2 < a.order_; ++i2)
                    for (std::uint32_t j2 = 0; i1 + j1 + i2 + j2 < a.order_; ++j2) {
                        const C& y = b.at(i2, j2);
                        if (y.is_zero()) continue;
                        std::size_t k = r.index(i1 + i2, j1 + j2);
                        r.c_[k] = r.c_[k] + x * y;
                    }
            }
        return r;
    }

    TruncBiSeries& operator+=(const TruncBiSeries& o) { return *this = *this + o; }
    TruncBiSeries& operator-=(const TruncBiSeries& o) { return *this = *this - o; }
    TruncBiSeries& operator*=(const TruncBiSeries& o) { return *this = *this * o; }

    friend bool operator==(const TruncBiSeries& a, const TruncBiSeries& b) {
        a.check(b);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const TruncBiSeries& a, const TruncBiSeries& b) { return !(a == b); }

    TruncBiSeries pow(std::uint64_t e) const {
        if (c_[0].is_zero() && e >= order_) return zero(order_, p_);
        TruncBiSeries base = *this, r = constant(C::one(p_), order_);
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    /// Specialization U = 0: the univariate series in T.
    TruncSeries<C> at_u_zero() const {
        TruncSeries<C> r(order_, p_);
        for (std::uint32_t j = 0; j < order_; ++j) r.set_coeff(j, at(0, j));
        return r;
    }

    /// Specialization T = 0: the univariate series in U.
    TruncSeries<C> at_t_zero() const {
        TruncSeries<C> r(order_, p_);
        for (std::uint32_t i = 0; i < order_; ++i) r.set_coeff(i, at(i, 0));
        return r;
    }

   private:
    std::size_t index(std::uint32_t u_exp, std::uint32_t t_exp) const {
        if (u_exp + t_exp >= order_)
            throw Error(errc::bad_input, "bivariate coefficient index beyond the total-degree order");
        // Row i holds the order-i entries (i, 0..order-i-1).
        std::size_t i = u_exp;
        std::size_t row_offset = i * order_ - i * (i - 1) / 2;
        return row_offset + t_exp;
    }

    void check(const TruncBiSeries& o) const {
        if (order_ != o.order_)
            throw Error(errc::order_mismatch, "bivariate series of orders " + std::to_string(order_) +
                                                  " and " + std::to_string(o.order_));
        if (p_ != o.p_) throw Error(errc::prime_mismatch, "bivariate series over mixed fields");
    }

    std::uint32_t order_;
    std::uint64_t p_;
    std::vector<C> c_;
};

template <coefficient_field C>
TruncBiSeries<C> scaled(const TruncBiSeries<C>& f, const C& k) {
    TruncBiSeries<C> r(f.order(), f.prime());
    for (std::uint32_t i = 0; i < f.order(); ++i)
        for (std::uint32_t j = 0; i + j < f.order(); ++j) r.set(i, j, f.at(i, j) * k);
    return r;
}

/// Unit inverse by a Neumann sum: f = c(1 - E) with E vanishing at the
/// origin, so 1/f = (sum E^k) / c and the sum stops at the order.
template <coefficient_field C>
TruncBiSeries<C> inverse(const TruncBiSeries<C>& f) {
    const C c0 = f.at(0, 0);
    if (c0.is_zero())
        throw Error(errc::not_invertible, "bivariate series with zero constant term has no inverse");
    const std::uint32_t n = f.order();
    C c0_inv = C::one(f.prime()) / c0;
    TruncBiSeries<C> e = TruncBiSeries<C>::constant(C::one(f.prime()), n) - scaled(f, c0_inv);
    TruncBiSeries<C> acc = TruncBiSeries<C>::constant(C::one(f.prime()), n);
    TruncBiSeries<C> term = TruncBiSeries<C>::constant(C::one(f.prime()), n);
    for (std::uint32_t k = 1; k < n; ++k) {
        term *= e;
        if (term.is_zero()) break;
        acc += term;
    }
    return scaled(acc, c0_inv);
}

/// A univariate series viewed bivariately as a series in T.
template <coefficient_field C>
TruncBiSeries<C> as_t_series(const TruncSeries<C>& f) {
    TruncBiSeries<C> r(f.order(), f.prime());
    for (std::uint32_t j = 0; j < f.order(); ++j) r.set(0, j, f.coeff(j));
    return r;
}

/// A univariate series viewed bivariately as a series in U.
template <coefficient_field C>
TruncBiSeries<C> as_u_series(const TruncSeries<C>& f) {
    TruncBiSeries<C> r(f.order(), f.prime());
    for (std::uint32_t i = 0; i < f.order(); ++i) r.set(i, 0, f.coeff(i));
    return r;
}

/// f(U + T): the coefficient of U^a T^b is C(a+b, a) c_{a+b}(f), binomials
/// taken mod p by Lucas. Exact at total degree order-1, which is the reason
/// bivariate truncation is by total degree.
template <coefficient_field C>
    requires std::constructible_from<C, Fp>
TruncBiSeries<C> substitute_u_plus_t(const TruncSeries<C>& f) {
    TruncBiSeries<C> r(f.order(), f.prime());
    for (std::uint32_t m = 0; m < f.order(); ++m) {
        const C& cm = f.coeff(m);
        if (cm.is_zero()) continue;
        for (std::uint32_t a = 0; a <= m; ++a) {
            Fp binom = lucas_binomial(m, a, f.prime());
            if (binom.is_zero()) continue;
            r.set(a, m - a, cm * C(binom));
        }
    }
    return r;
}

/// Coefficient-wise application of phi : C -> series in U, assembling
/// sum_j phi(c_j) T^j truncated by total degree. phi must return series of
/// the same order. This realizes the T-linear extension of a coefficient map.
template <coefficient_field C, class Phi>
TruncBiSeries<C> map_coefficients(const TruncSeries<C>& f, Phi&& phi) {
    const std::uint32_t n = f.order();
    TruncBiSeries<C> r(n, f.prime());
    for (std::uint32_t j = 0; j < n; ++j) {
        TruncSeries<C> img = phi(f.coeff(j));
        if (img.order() != n)
            throw Error(errc::order_mismatch, "coefficient map must preserve the order");
        if (img.prime() != f.prime())
            throw Error(errc::prime_mismatch, "coefficient map must preserve the field");
        for (std::uint32_t i = 0; i + j < n; ++i) r.set(i, j, img.coeff(i));
    }
    return r;
}

template <coefficient_field C>
struct BiMismatch {
    std::uint32_t u_exp, t_exp;
    C lhs, rhs;
};

/// First coefficient where two equal-order bivariate series differ, in
/// graded order (total degree, then U-exponent); nullopt when equal.
template <coefficient_field C>
std::optional<BiMismatch<C>> first_mismatch(const TruncBiSeries<C>& a, const TruncBiSeries<C>& b) {
    if (a.order() != b.order())
        throw Error(errc::order_mismatch, "comparing bivariate series of different orders");
    for (std::uint32_t m = 0; m < a.order(); ++m)
        for (std::uint32_t i = 0; i <= m; ++i) {
            const C& x = a.at(i, m - i);
            const C& y = b.at(i, m - i);
            if (!(x == y)) return BiMismatch<C>{i, m - i, x, y};
        }
    return std::nullopt;
}

template <coefficient_field C>
std::string to_string(const TruncBiSeries<C>& f, const std::string& u = "U", const std::string& t = "T") {
    std::string out;
    for (std::uint32_t m = 0; m < f.order(); ++m)
        for (std::uint32_t i = 0; i <= m; ++i) {
            const C& a = f.at(i, m - i);
            if (a.is_zero()) continue;
            if (!out.empty()) out += " + ";
            std::string mono;
            if (i > 0) mono += u + (i > 1 ? "^" + std::to_string(i) : "");
            if (m - i > 0) {
                if (!mono.empty()) mono += "*";
                mono += t + (m - i > 1 ? "^" + std::to_string(m - i) : "");
            }
            if (mono.empty()) {
                out += coefficient_text(a);
            } else if (a.is_one()) {
                out += mono;
            } else {
                out += coefficient_text(a) + "*" + mono;
            }
        }
    return out.empty() ? "0" : out;
}

}  // namespace hsd

#endif
