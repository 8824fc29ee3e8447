#ifndef HSD_FP_HPP
#define HSD_FP_HPP

#include <cstdint>
#include <ostream>
#include <string>

#include "hsd/errors.hpp"

namespace hsd {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit inputs (the first twelve prime
/// witnesses suffice for the full range).
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// An element of the prime field F_p with run-time modulus. Every value
/// carries its modulus; mixing moduli in one operation throws PrimeMismatch.
/// The modulus is assumed prime (validated at the parsing/CLI boundary, not
/// per element); inverses exist for every nonzero value.
class Fp {
   public:
    Fp(std::uint64_t value, std::uint64_t p) : p_(p) {
        if (p < 2) throw Error(errc::bad_input, "modulus must be at least 2");
        if (p >> 62) throw Error(errc::bad_input, "modulus too large for overflow-free arithmetic");
        v_ = value % p;
    }

    static Fp zero(std::uint64_t p) { return Fp(0, p); }
    static Fp one(std::uint64_t p) { return Fp(1, p); }

    /// Embeds a signed integer, reducing negative values into [0, p).
    static Fp from_int(std::int64_t value, std::uint64_t p) {
        std::int64_t m = static_cast<std::int64_t>(p);
        std::int64_t r = value % m;
        if (r < 0) r += m;
        return Fp(static_cast<std::uint64_t>(r), p);
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t prime() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }

    Fp& operator+=(const Fp& o) {
        check(o);
        v_ += o.v_;
        if (v_ >= p_) v_ -= p_;
        return *this;
    }
    Fp& operator-=(const Fp& o) {
        check(o);
        v_ = (v_ >= o.v_) ? v_ - o.v_ : v_ + p_ - o.v_;
        return *this;
    }
    Fp& operator*=(const Fp& o) {
        check(o);
        v_ = detail::mulmod(v_, o.v_, p_);
        return *this;
    }
    Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }

    friend bool operator==(const Fp& a, const Fp& b) {
        a.check(b);
        return a.v_ == b.v_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    /// Extended Euclid; DivisionByZero on the zero element.
    Fp inverse() const {
        if (v_ == 0) throw Error(errc::division_by_zero, "inverse of zero in F_p");
        std::int64_t t = 0, nt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(v_);
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return Fp(static_cast<std::uint64_t>(t), p_);
    }

    Fp pow(std::uint64_t e) const { return Fp(detail::powmod(v_, e, p_), p_); }

    friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v_; }

   private:
    void check(const Fp& o) const {
        if (p_ != o.p_) throw Error(errc::prime_mismatch, "mixed F_p moduli");
    }

    std::uint64_t v_;
    std::uint64_t p_;
};

namespace detail {

// C(a,b) mod p for digits a,b < p, multiplicative form.
inline std::uint64_t small_binomial_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    if (b > a) return 0;
    if (b > a - b) b = a - b;
    Fp r = Fp::one(p);
    for (std::uint64_t i = 1; i <= b; ++i) {
        r *= Fp(a - b + i, p);
        r /= Fp(i, p);
    }
    return r.value();
}

}  // namespace detail

/// Binomial coefficient C(n,k) mod p via Lucas' theorem: write n and k in
/// base p and multiply the digit binomials C(n_i, k_i). The result is zero
/// exactly when some digit of k exceeds the corresponding digit of n.
inline Fp lucas_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    Fp r = Fp::one(p);
    while (n > 0 || k > 0) {
        std::uint64_t nd = n % p, kd = k % p;
        if (kd > nd) return Fp::zero(p);
        r *= Fp(detail::small_binomial_mod(nd, kd, p), p);
        n /= p;
        k /= p;
    }
    return r;
}

inline std::string to_string(const Fp& a) { return std::to_string(a.value()); }

}  // namespace hsd

#endif
