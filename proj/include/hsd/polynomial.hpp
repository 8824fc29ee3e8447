#ifndef HSD_POLYNOMIAL_HPP
#define HSD_POLYNOMIAL_HPP

#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hsd/errors.hpp"
#include "hsd/fp.hpp"

namespace hsd {

/// Coefficient domains used throughout: exact field elements that know the
/// ambient characteristic.
template <class K>
concept coefficient_field = requires(const K a, const K b, std::uint64_t p) {
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { a / b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.prime() } -> std::convertible_to<std::uint64_t>;
    { K::zero(p) } -> std::convertible_to<K>;
    { K::one(p) } -> std::convertible_to<K>;
};

/// Dense univariate polynomial over K in the variable `s`. Coefficients are
/// stored low to high with no trailing zeros; the zero polynomial keeps an
/// empty vector. degree() returns -1 for zero, standing in for the usual
/// "degree minus infinity". Every polynomial, including zero, carries its
/// prime so results never lose the ambient field.
template <coefficient_field K>
class Polynomial {
   public:
    explicit Polynomial(std::uint64_t p) : p_(p) {}

    explicit Polynomial(K constant) : p_(constant.prime()) {
        if (!constant.is_zero()) c_.push_back(std::move(constant));
    }

    Polynomial(std::vector<K> coefficients, std::uint64_t p) : p_(p), c_(std::move(coefficients)) {
        for (const K& a : c_)
            if (a.prime() != p_) throw Error(errc::prime_mismatch, "polynomial coefficients over mixed fields");
        prune();
    }

    static Polynomial zero(std::uint64_t p) { return Polynomial(p); }
    static Polynomial one(std::uint64_t p) { return Polynomial(K::one(p)); }

    /// The generator `s` itself.
    static Polynomial generator(std::uint64_t p) {
        return Polynomial(std::vector<K>{K::zero(p), K::one(p)}, p);
    }

    static Polynomial monomial(K coefficient, std::size_t degree) {
        std::uint64_t p = coefficient.prime();
        std::vector<K> c(degree + 1, K::zero(p));
        c.back() = std::move(coefficient);
        return Polynomial(std::move(c), p);
    }

    std::uint64_t prime() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

    /// -1 encodes the degree of the zero polynomial.
    std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }

    K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K::zero(p_); }

    const K& leading() const {
        if (c_.empty()) throw Error(errc::bad_input, "leading coefficient of the zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    const std::vector<K>& coefficients() const { return c_; }

    Polynomial operator-() const {
        Polynomial r(p_);
        r.c_.reserve(c_.size());
        for (const K& a : c_) r.c_.push_back(-a);
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check(o);
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), K::zero(p_));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        prune();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check(o);
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), K::zero(p_));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        prune();
        return *this;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return Polynomial(a.p_);
        std::vector<K> c(a.c_.size() + b.c_.size() - 1, K::zero(a.p_));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Polynomial(std::move(c), a.p_);
    }

    Polynomial scaled(const K& k) const {
        if (k.is_zero()) return Polynomial(p_);
        Polynomial r(p_);
        r.c_.reserve(c_.size());
        for (const K& a : c_) r.c_.push_back(a * k);
        return r;
    }

    /// Euclidean division; the divisor must be nonzero.
    friend std::pair<Polynomial, Polynomial> divmod(Polynomial a, const Polynomial& b) {
        a.check(b);
        if (b.is_zero()) throw Error(errc::division_by_zero, "polynomial division by zero");
        Polynomial q(a.p_);
        const std::int64_t db = b.degree();
        if (a.degree() < db) return {q, a};
        q.c_.assign(static_cast<std::size_t>(a.degree() - db) + 1, K::zero(a.p_));
        const K lead_inv = K::one(a.p_) / b.leading();
        for (std::int64_t i = a.degree(); i >= db; --i) {
            K f = a.c_[static_cast<std::size_t>(i)] * lead_inv;
            if (f.is_zero()) continue;
            const std::size_t shift = static_cast<std::size_t>(i - db);
            q.c_[shift] = f;
            for (std::int64_t j = 0; j <= db; ++j)
                a.c_[shift + static_cast<std::size_t>(j)] =
                    a.c_[shift + static_cast<std::size_t>(j)] - f * b.c_[static_cast<std::size_t>(j)];
        }
        q.prune();
        a.prune();
        return {q, a};
    }

    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial monic() const {
        if (is_zero() || is_monic()) return *this;
        return scaled(K::one(p_) / leading());
    }

    K evaluate(const K& x) const {
        K r = K::zero(p_);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    Polynomial pow(std::uint64_t e) const {
        Polynomial base = *this, r = one(p_);
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

   private:
    void check(const Polynomial& o) const {
        if (p_ != o.p_) throw Error(errc::prime_mismatch, "polynomials over mixed fields");
    }

    void prune() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::uint64_t p_;
    std::vector<K> c_;
};

/// Monic gcd by the Euclidean algorithm; gcd(0,0) = 0.
template <coefficient_field K>
Polynomial<K> gcd(Polynomial<K> a, Polynomial<K> b) {
    while (!b.is_zero()) {
        Polynomial<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

template <coefficient_field K>
std::string to_string(const Polynomial<K>& f, const std::string& var = "s") {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::int64_t i = f.degree(); i >= 0; --i) {
        K a = f.coeff(static_cast<std::size_t>(i));
        if (a.is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += to_string(a);
        } else {
            if (!a.is_one()) out += to_string(a) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

template <coefficient_field K>
std::ostream& operator<<(std::ostream& os, const Polynomial<K>& f) {
    return os << to_string(f);
}

}  // namespace hsd

#endif
