#ifndef HSD_EQUIVALENCE_HPP
#define HSD_EQUIVALENCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "hsd/derivation.hpp"
#include "hsd/errors.hpp"
#include "hsd/rational.hpp"
#include "hsd/series.hpp"

namespace hsd {

/// A continuous F-algebra endomorphism lambda of F[[T]], recorded by the
/// parameter series P = lambda(T) with P(0) = 0. lambda is an automorphism
/// exactly when the linear coefficient of P is nonzero; non-invertible
/// substitutions (the Frobenius twists T -> T^{p^d} among them) are
/// first-class values here, and invertibility is a queried property.
class Substitution {
   public:
    explicit Substitution(TruncSeries<Ratfun> parameter) : p_(std::move(parameter)) {
        if (!p_.coeff(0).is_zero())
            throw Error(errc::nonzero_constant_term, "a substitution parameter must vanish at 0");
    }

    /// P = T, the identity reparametrization.
    static Substitution identity(std::uint64_t p, std::uint32_t order) {
        return Substitution(TruncSeries<Ratfun>::variable(order, p));
    }

    /// P = T^{p^d}: an algebra endomorphism that is not an automorphism for
    /// d >= 1, yet still carries iterative derivations to iterative ones.
    static Substitution frobenius(std::uint64_t p, std::uint32_t order, std::uint32_t d) {
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < d; ++i) {
            if (q > (std::uint64_t(1) << 62) / p) throw Error(errc::bad_input, "p^d overflows a machine word");
            q *= p;
        }
        TruncSeries<Ratfun> param(order, p);
        if (q < order) param.set_coeff(static_cast<std::uint32_t>(q), Ratfun::one(p));
        return Substitution(std::move(param));
    }

    const TruncSeries<Ratfun>& parameter() const { return p_; }
    std::uint64_t prime() const { return p_.prime(); }
    std::uint32_t order() const { return p_.order(); }

    bool invertible() const { return p_.order() > 1 && !p_.coeff(1).is_zero(); }

    /// The inverse automorphism, by compositional reversion of P.
    Substitution inverse() const { return Substitution(revert(p_)); }

    Substitution truncated(std::uint32_t new_order) const { return Substitution(p_.truncated(new_order)); }

    friend bool operator==(const Substitution& a, const Substitution& b) { return a.p_ == b.p_; }
    friend bool operator!=(const Substitution& a, const Substitution& b) { return !(a == b); }

   private:
    TruncSeries<Ratfun> p_;
};

/// Applying `a` then `b` equals applying compose(a, b): the parameter is
/// P_a(P_b(T)).
inline Substitution compose(const Substitution& a, const Substitution& b) {
    return Substitution(compose(a.parameter(), b.parameter()));
}

/// The twisted derivation lambda . theta, i.e. theta followed by the
/// substitution: on the generator, g becomes g(P(T)). The result is a ring
/// homomorphism by construction but need not be iterative; callers certify
/// it with verify_iterativity or check_equivalence_condition.
inline IterativeDerivation apply_substitution(const IterativeDerivation& theta, const Substitution& lambda) {
    if (theta.order() != lambda.order())
        throw Error(errc::order_mismatch, "derivation and substitution have different orders");
    if (theta.prime() != lambda.prime())
        throw Error(errc::prime_mismatch, "derivation and substitution over different fields");
    return IterativeDerivation(compose(theta.generator_image(), lambda.parameter()));
}

/// The coefficient-level criterion for lambda . theta to be iterative:
///     P(U + T) = P(U) + thetaTilde_U[[T]](P(T))
/// in the bivariate ring, where thetaTilde = lambda . theta. Both sides are
/// evaluated to total degree N and compared coefficient by coefficient.
inline CheckReport check_equivalence_condition(const IterativeDerivation& theta_tilde,
                                               const Substitution& lambda) {
    if (theta_tilde.order() != lambda.order())
        throw Error(errc::order_mismatch, "derivation and substitution have different orders");
    if (theta_tilde.prime() != lambda.prime())
        throw Error(errc::prime_mismatch, "derivation and substitution over different fields");
    const TruncSeries<Ratfun>& P = lambda.parameter();
    TruncBiSeries<Ratfun> lhs = substitute_u_plus_t(P);
    TruncBiSeries<Ratfun> rhs =
        as_u_series(P) + map_coefficients(P, [&](const Ratfun& c) { return apply(theta_tilde, c); });
    if (auto mm = first_mismatch(lhs, rhs))
        return CheckReport{false, theta_tilde.order(), Mismatch{mm->u_exp, mm->t_exp, mm->lhs, mm->rhs}};
    return CheckReport{true, theta_tilde.order(), std::nullopt};
}

/// Recovers the unique substitution with theta_tilde = lambda . theta from
/// one non-constant witness f. Writing d for the level of f under theta and
/// q = p^d, the twisted series satisfies
///     sum_{j>=1} theta^(jq)(f) W^j = theta_tilde(f) - f,   W = P^q,
/// which determines W one coefficient at a time since the j >= 2 terms only
/// involve earlier coefficients; P is then the q-th root of W taken
/// exponent-wise. The result carries order floor(N/q): coefficient k of P
/// consumes twisted components up to index kq. A final round trip replays
/// the substitution against theta_tilde (Inconsistent on mismatch), and a W
/// that is not a q-th power means no lambda exists (NotAPthPower).
inline Substitution recover_substitution(const IterativeDerivation& theta,
                                         const IterativeDerivation& theta_tilde, const Ratfun& f) {
    if (theta.order() != theta_tilde.order())
        throw Error(errc::order_mismatch, "derivations have different orders");
    if (theta.prime() != theta_tilde.prime())
        throw Error(errc::prime_mismatch, "derivations over different fields");
    const std::uint32_t n = theta.order();
    const std::uint64_t p = theta.prime();

    std::optional<std::uint32_t> lv = level(theta, f);
    if (!lv) throw Error(errc::constant_witness, "witness is constant for theta");
    const std::uint32_t d = *lv;
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < d; ++i) q *= p;

    const std::uint32_t out_order = static_cast<std::uint32_t>(n / q);
    if (out_order < 2)
        throw Error(errc::truncation_inconclusive,
                    "order " + std::to_string(n) + " holds no coefficients of P beyond degree " +
                        std::to_string(out_order == 0 ? 0 : out_order - 1));

    TruncSeries<Ratfun> a = apply(theta, f);
    TruncSeries<Ratfun> b = apply(theta_tilde, f);
    TruncSeries<Ratfun> rhs_base = b;
    rhs_base.set_coeff(0, Ratfun::zero(p));  // theta_tilde(f) - f

    const Ratfun aq_inv = a.coeff(static_cast<std::uint32_t>(q)).inverse();
    TruncSeries<Ratfun> w(n, p);
    for (std::uint32_t k = 1; k < n; ++k) {
        // sum_{j>=2} a_{jq} W^j through degree k; only w_1..w_{k-1} matter.
        TruncSeries<Ratfun> tail(n, p);
        TruncSeries<Ratfun> w_power = w * w;
        for (std::uint64_t j = 2; j * q < n; ++j) {
            const Ratfun& ajq = a.coeff(static_cast<std::uint32_t>(j * q));
            if (!ajq.is_zero()) tail += w_power.scaled(ajq);
            if ((j + 1) * q < n) w_power *= w;
        }
        w.set_coeff(k, aq_inv * (rhs_base.coeff(k) - tail.coeff(k)));
    }

    TruncSeries<Ratfun> param(out_order, p);
    for (std::uint32_t k = 1; k < n; ++k) {
        if (k % q == 0) continue;
        if (!w.coeff(k).is_zero())
            throw Error(errc::not_a_pth_power,
                        "the derivations are not related by a substitution: P^{p^d} has a coefficient "
                        "at index " +
                            std::to_string(k));
    }
    for (std::uint32_t i = 1; i < out_order; ++i)
        param.set_coeff(i, pth_root(w.coeff(static_cast<std::uint32_t>(i * q)), d));

    Substitution lambda{param};
    IterativeDerivation replayed =
        apply_substitution(theta.truncated(out_order), lambda);
    if (replayed.generator_image() != theta_tilde.generator_image().truncated(out_order))
        throw Error(errc::inconsistent,
                    "recovered substitution does not replay theta_tilde at order " +
                        std::to_string(out_order));
    return lambda;
}

struct Normalization {
    IterativeDerivation derivation;
    Substitution lambda;
};

/// Straightens theta at an element t with theta^(1)(t) != 0: with
/// mu(T) = theta(t) - t and lambda = mu^{-1}, the twist lambda . theta sends
/// t to t + T, so t behaves like the standard generator. Returns the twist
/// together with the lambda that certifies the equivalence.
inline Normalization normalize_at(const IterativeDerivation& theta, const Ratfun& t) {
    TruncSeries<Ratfun> image = apply(theta, t);
    if (theta.order() < 2 || image.coeff(1).is_zero())
        throw Error(errc::not_normalizable, "theta^(1)(t) = 0; t cannot play the generator");
    TruncSeries<Ratfun> mu = image;
    mu.set_coeff(0, Ratfun::zero(theta.prime()));
    Substitution lambda{revert(mu)};
    return Normalization{apply_substitution(theta, lambda), std::move(lambda)};
}

struct Compression {
    IterativeDerivation derivation;
    std::uint32_t level;
};

/// For a nontrivial iterative theta whose global level is d (every nonzero
/// component index is a multiple of q = p^d), re-indexes thetaBar^(j) =
/// theta^(jq). The result has thetaBar^(1) != 0 and order
/// floor((N-1)/q) + 1. The global level is read off the generator image:
/// theta is determined by g, so a component vanishes as an operator exactly
/// when it vanishes on s.
inline Compression compress(const IterativeDerivation& theta) {
    const TruncSeries<Ratfun>& g = theta.generator_image();
    const std::uint32_t n = theta.order();
    std::uint32_t first = 0;
    for (std::uint32_t i = 1; i < n; ++i)
        if (!g.coeff(i).is_zero()) {
            first = i;
            break;
        }
    if (first == 0)
        throw Error(errc::trivial_derivation, "no nonzero component below order " + std::to_string(n));
    std::uint64_t q = 1;
    std::uint32_t d = 0;
    while (q < first) {
        q *= theta.prime();
        ++d;
    }
    if (q != first)
        throw Error(errc::not_iterative, "first nonzero component sits at index " + std::to_string(first) +
                                             ", not a power of p");
    for (std::uint32_t i = 1; i < n; ++i)
        if (i % q != 0 && !g.coeff(i).is_zero())
            throw Error(errc::not_iterative, "component at index " + std::to_string(i) +
                                                 " should vanish at level " + std::to_string(d));
    const std::uint32_t out_order = static_cast<std::uint32_t>((n - 1) / q) + 1;
    TruncSeries<Ratfun> gbar(out_order, theta.prime());
    for (std::uint32_t j = 0; j < out_order; ++j)
        gbar.set_coeff(j, g.coeff(static_cast<std::uint32_t>(j * q)));
    return Compression{IterativeDerivation(std::move(gbar)), d};
}

/// Inverse re-indexing: theta^(jp^d) = thetaBar^(j) and every other
/// component zero. The output order N p^d is capped by max_order; the cap
/// only matters for extreme d.
inline IterativeDerivation decompress(const IterativeDerivation& theta_bar, std::uint32_t d,
                                      std::uint32_t max_order = 4096) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        if (q > (std::uint64_t(1) << 32) / theta_bar.prime())
            throw Error(errc::bad_input, "p^d overflows the order range");
        q *= theta_bar.prime();
    }
    std::uint64_t wanted = static_cast<std::uint64_t>(theta_bar.order()) * q;
    std::uint32_t out_order = static_cast<std::uint32_t>(wanted < max_order ? wanted : max_order);
    TruncSeries<Ratfun> g(out_order, theta_bar.prime());
    g.set_coeff(0, Ratfun::generator(theta_bar.prime()));
    for (std::uint32_t j = 1; j < theta_bar.order(); ++j) {
        std::uint64_t idx = static_cast<std::uint64_t>(j) * q;
        if (idx < out_order) g.set_coeff(static_cast<std::uint32_t>(idx), theta_bar.generator_image().coeff(j));
    }
    return IterativeDerivation(std::move(g));
}

}  // namespace hsd

#endif
