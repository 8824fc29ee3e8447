#ifndef HSD_DERIVATION_HPP
#define HSD_DERIVATION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hsd/biseries.hpp"
#include "hsd/errors.hpp"
#include "hsd/rational.hpp"
#include "hsd/series.hpp"

namespace hsd {

/// An iterative (Hasse-Schmidt) derivation theta on F = F_p(s), represented
/// by the image g = theta(s) in F[[T]] truncated at order N. Because theta
/// is a continuous ring homomorphism F -> F[[T]] fixing the prime field, it
/// is determined by g: theta(u/v) = u(g)/v(g), which is well defined since
/// the constant term of v(g) is v(s), a nonzero element of F.
///
/// The component maps theta^(i) are the T-coefficients of theta. The
/// invariant c_0(g) = s pins theta^(0) = id. Iterativity, i.e.
/// theta^(i) . theta^(j) = binom(i+j, i) theta^(i+j), is a property checked
/// by verify_iterativity, never assumed at construction.
class IterativeDerivation {
   public:
    explicit IterativeDerivation(TruncSeries<Ratfun> generator_image) : g_(std::move(generator_image)) {
        if (!is_prime(g_.prime()))
            throw Error(errc::bad_input, "p = " + std::to_string(g_.prime()) + " is not prime");
        if (g_.coeff(0) != Ratfun::generator(g_.prime()))
            throw Error(errc::bad_input, "a derivation's generator image must have constant term s");
    }

    /// The standard derivation: theta(s) = s + T, so theta^(n)(s^k) is
    /// binom(k, n) s^{k-n}.
    static IterativeDerivation standard(std::uint64_t p, std::uint32_t order) {
        TruncSeries<Ratfun> g = TruncSeries<Ratfun>::constant(Ratfun::generator(p), order);
        if (order > 1) g.set_coeff(1, Ratfun::one(p));
        return IterativeDerivation(std::move(g));
    }

    const TruncSeries<Ratfun>& generator_image() const { return g_; }
    std::uint64_t prime() const { return g_.prime(); }
    std::uint32_t order() const { return g_.order(); }

    /// Trivial at this order: every component theta^(1..N-1) vanishes on s,
    /// hence on all of F.
    bool is_trivial() const {
        for (std::uint32_t i = 1; i < g_.order(); ++i)
            if (!g_.coeff(i).is_zero()) return false;
        return true;
    }

    IterativeDerivation truncated(std::uint32_t new_order) const {
        return IterativeDerivation(g_.truncated(new_order));
    }

    friend bool operator==(const IterativeDerivation& a, const IterativeDerivation& b) {
        return a.g_ == b.g_;
    }
    friend bool operator!=(const IterativeDerivation& a, const IterativeDerivation& b) { return !(a == b); }

   private:
    TruncSeries<Ratfun> g_;
};

namespace detail {

/// Horner evaluation of a polynomial over F_p at a series argument.
inline TruncSeries<Ratfun> evaluate_at_series(const Polynomial<Fp>& f, const TruncSeries<Ratfun>& x) {
    TruncSeries<Ratfun> acc(x.order(), x.prime());
    for (std::int64_t i = f.degree(); i >= 0; --i) {
        acc = acc * x;
        acc.set_coeff(0, acc.coeff(0) + Ratfun(f.coeff(static_cast<std::size_t>(i))));
    }
    return acc;
}

}  // namespace detail

/// theta(f) as a truncated series: evaluate the reduced fraction at the
/// generator image. The constant term always equals f.
inline TruncSeries<Ratfun> apply(const IterativeDerivation& theta, const Ratfun& f) {
    if (f.prime() != theta.prime())
        throw Error(errc::prime_mismatch, "applying a derivation over a different field");
    if (f.is_constant()) return TruncSeries<Ratfun>::constant(f, theta.order());
    TruncSeries<Ratfun> num = detail::evaluate_at_series(f.num(), theta.generator_image());
    if (f.den().is_one()) return num;
    return num * inverse(detail::evaluate_at_series(f.den(), theta.generator_image()));
}

/// The single component theta^(i)(f).
inline Ratfun component(const IterativeDerivation& theta, const Ratfun& f, std::uint32_t i) {
    return apply(theta, f).coeff(i);
}

struct Mismatch {
    std::uint32_t u_exp, t_exp;
    Ratfun lhs, rhs;
};

struct CheckReport {
    bool pass;
    std::uint32_t order;
    std::optional<Mismatch> first_failure;
};

/// Checks iterativity as the diagram identity thetaU[[T]] . thetaT =
/// theta(U+T), evaluated on the generator s up to total degree N: the left
/// side applies theta in U to every T-coefficient of g, the right side is
/// g(U + T). Two continuous ring homomorphisms on F_p(s) that agree on s
/// agree everywhere, so the generator decides the diagram; pass extra
/// witnesses to re-check the identity on chosen elements anyway.
inline CheckReport verify_iterativity(const IterativeDerivation& theta,
                                      std::span<const Ratfun> witnesses = {}) {
    std::vector<Ratfun> targets{Ratfun::generator(theta.prime())};
    targets.insert(targets.end(), witnesses.begin(), witnesses.end());
    for (const Ratfun& w : targets) {
        TruncSeries<Ratfun> image = apply(theta, w);
        TruncBiSeries<Ratfun> lhs =
            map_coefficients(image, [&](const Ratfun& c) { return apply(theta, c); });
        TruncBiSeries<Ratfun> rhs = substitute_u_plus_t(image);
        if (auto mm = first_mismatch(lhs, rhs))
            return CheckReport{false, theta.order(), Mismatch{mm->u_exp, mm->t_exp, mm->lhs, mm->rhs}};
    }
    return CheckReport{true, theta.order(), std::nullopt};
}

/// The level of f under theta: the least d with theta^(p^d)(f) != 0, or
/// nullopt when f is constant. Assumes theta has been verified iterative;
/// the scan still cross-checks that the first nonzero index is a power of p
/// and that every index not divisible by it vanishes (NotIterative if not).
///
/// Nonconstant f whose components all vanish below N cannot be told apart
/// from constants at this order. For nontrivial iterative theta on F_p(s)
/// the constants are exactly the prime field, so membership in F_p decides:
/// anything else raises TruncationInconclusive instead of guessing.
inline std::optional<std::uint32_t> level(const IterativeDerivation& theta, const Ratfun& f) {
    TruncSeries<Ratfun> image = apply(theta, f);
    std::uint32_t first = 0;
    for (std::uint32_t i = 1; i < image.order(); ++i)
        if (!image.coeff(i).is_zero()) {
            first = i;
            break;
        }
    if (first == 0) {
        if (f.is_constant()) return std::nullopt;
        throw Error(errc::truncation_inconclusive,
                    "all components below order " + std::to_string(theta.order()) +
                        " vanish but the witness is not in F_p");
    }
    std::uint64_t q = 1;
    std::uint32_t d = 0;
    while (q < first) {
        q *= theta.prime();
        ++d;
    }
    if (q != first)
        throw Error(errc::not_iterative,
                    "first nonzero component sits at index " + std::to_string(first) +
                        ", not a power of p");
    for (std::uint32_t i = 1; i < image.order(); ++i)
        if (i % q != 0 && !image.coeff(i).is_zero())
            throw Error(errc::not_iterative,
                        "component at index " + std::to_string(i) + " should vanish at level " +
                            std::to_string(d));
    return d;
}

/// The scalar c in (theta^(p^r))^{m_r} . ... . (theta^(p^0))^{m_0} =
/// c theta^(m), where m = m_0 + m_1 p + ... + m_r p^r in base p. Folding
/// theta^(i) . theta^(j) = binom(i+j, i) theta^(i+j) over the digit-wise
/// factors multiplies one Lucas binomial per application; every factor is
/// nonzero mod p, so c never vanishes.
inline Fp composition_constant(std::uint64_t m, std::uint64_t p) {
    if (m == 0) throw Error(errc::bad_input, "composition constant needs m >= 1");
    if (!is_prime(p)) throw Error(errc::bad_input, "p = " + std::to_string(p) + " is not prime");
    Fp c = Fp::one(p);
    std::uint64_t accumulated = 0;
    for (std::uint64_t q = 1; q <= m; q *= p) {
        std::uint64_t digit = (m / q) % p;
        for (std::uint64_t r = 0; r < digit; ++r) {
            c *= lucas_binomial(accumulated + q, q, p);
            accumulated += q;
        }
        if (q > m / p) break;
    }
    return c;
}

}  // namespace hsd

#endif
