#ifndef HSD_RATIONAL_HPP
#define HSD_RATIONAL_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "hsd/errors.hpp"
#include "hsd/fp.hpp"
#include "hsd/polynomial.hpp"

namespace hsd {

/// Reduced fraction of polynomials over K: the denominator is monic and
/// nonzero, gcd(numerator, denominator) = 1, and zero is 0/1. The normal
/// form is canonical, so equality is structural comparison.
template <coefficient_field K>
class RationalFunction {
   public:
    explicit RationalFunction(std::uint64_t p)
        : num_(Polynomial<K>::zero(p)), den_(Polynomial<K>::one(p)) {}

    explicit RationalFunction(K constant)
        : num_(Polynomial<K>(constant)), den_(Polynomial<K>::one(constant.prime())) {}

    explicit RationalFunction(Polynomial<K> numerator)
        : num_(std::move(numerator)), den_(Polynomial<K>::one(num_.prime())) {}

    RationalFunction(Polynomial<K> numerator, Polynomial<K> denominator)
        : num_(std::move(numerator)), den_(std::move(denominator)) {
        if (num_.prime() != den_.prime())
            throw Error(errc::prime_mismatch, "rational function over mixed fields");
        if (den_.is_zero()) throw Error(errc::division_by_zero, "zero denominator");
        reduce();
    }

    static RationalFunction zero(std::uint64_t p) { return RationalFunction(p); }
    static RationalFunction one(std::uint64_t p) { return RationalFunction(K::one(p)); }

    /// The generator `s` of F_p(s).
    static RationalFunction generator(std::uint64_t p) {
        return RationalFunction(Polynomial<K>::generator(p));
    }

    const Polynomial<K>& num() const { return num_; }
    const Polynomial<K>& den() const { return den_; }
    std::uint64_t prime() const { return num_.prime(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    /// True when the value lies in the prime field (degree-0 numerator over 1).
    bool is_constant() const { return den_.is_one() && num_.degree() <= 0; }

    K constant_value() const {
        if (!is_constant()) throw Error(errc::bad_input, "not a constant rational function");
        return num_.coeff(0);
    }

    RationalFunction operator-() const { return RationalFunction(-num_, den_, normalized_tag{}); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw Error(errc::division_by_zero, "division by the zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    RationalFunction inverse() const { return one(prime()) / *this; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

   private:
    struct normalized_tag {};
    RationalFunction(Polynomial<K> n, Polynomial<K> d, normalized_tag)
        : num_(std::move(n)), den_(std::move(d)) {}

    void reduce() {
        if (num_.is_zero()) {
            den_ = Polynomial<K>::one(den_.prime());
            return;
        }
        if (den_.is_one()) return;
        Polynomial<K> g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        if (!den_.is_monic()) {
            K lead_inv = K::one(den_.prime()) / den_.leading();
            num_ = num_.scaled(lead_inv);
            den_ = den_.scaled(lead_inv);
        }
    }

    Polynomial<K> num_;
    Polynomial<K> den_;
};

using Ratfun = RationalFunction<Fp>;

namespace detail {

/// p^e-th root of a polynomial over F_p. Frobenius fixes the prime field,
/// so f = g^{p^e} exactly when every exponent with a nonzero coefficient is
/// divisible by p^e, and the root keeps the same coefficients.
inline Polynomial<Fp> polynomial_pth_root(const Polynomial<Fp>& f, std::uint64_t q) {
    if (f.is_zero()) return f;
    std::vector<Fp> out;
    out.reserve(static_cast<std::size_t>(f.degree()) / q + 1);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(f.degree()); ++i) {
        Fp a = f.coeff(i);
        if (i % q == 0) {
            out.push_back(a);
        } else if (!a.is_zero()) {
            throw Error(errc::not_a_pth_power,
                        "exponent " + std::to_string(i) + " is not divisible by " + std::to_string(q));
        }
    }
    return Polynomial<Fp>(std::move(out), f.prime());
}

}  // namespace detail

/// g with g^{p^e} = f, when it exists in F_p(s). Both parts of the reduced
/// fraction must be p^e-th powers; otherwise NotAPthPower.
inline Ratfun pth_root(const Ratfun& f, std::uint32_t e) {
    if (e == 0) return f;
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (q > (std::uint64_t(1) << 62) / f.prime())
            throw Error(errc::bad_input, "p^e overflows a machine word");
        q *= f.prime();
    }
    return Ratfun(detail::polynomial_pth_root(f.num(), q), detail::polynomial_pth_root(f.den(), q));
}

template <coefficient_field K>
std::string to_string(const RationalFunction<K>& f, const std::string& var = "s") {
    if (f.den().is_one()) return to_string(f.num(), var);
    return "(" + to_string(f.num(), var) + ")/(" + to_string(f.den(), var) + ")";
}

template <coefficient_field K>
std::ostream& operator<<(std::ostream& os, const RationalFunction<K>& f) {
    return os << to_string(f);
}

}  // namespace hsd

#endif
