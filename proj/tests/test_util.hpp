#ifndef HSD_TEST_UTIL_HPP
#define HSD_TEST_UTIL_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "hsd/fp.hpp"
#include "hsd/polynomial.hpp"
#include "hsd/rational.hpp"
#include "hsd/series.hpp"

namespace hsd::testing {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline Fp random_fp(Rng& rng, std::uint64_t p) { return Fp(uniform(rng, 0, p - 1), p); }

inline Fp random_nonzero_fp(Rng& rng, std::uint64_t p) { return Fp(uniform(rng, 1, p - 1), p); }

inline Polynomial<Fp> random_polynomial(Rng& rng, std::uint64_t p, std::size_t max_degree) {
    std::vector<Fp> c;
    std::size_t d = uniform(rng, 0, max_degree);
    for (std::size_t i = 0; i <= d; ++i) c.push_back(random_fp(rng, p));
    return Polynomial<Fp>(std::move(c), p);
}

inline Polynomial<Fp> random_nonzero_polynomial(Rng& rng, std::uint64_t p, std::size_t max_degree) {
    for (;;) {
        Polynomial<Fp> f = random_polynomial(rng, p, max_degree);
        if (!f.is_zero()) return f;
    }
}

/// Small random elements of F_p(s). Weighted towards constants so that
/// randomized series tests exercise structure without runaway coefficient
/// degrees; a sprinkle of genuine fractions keeps the reduction paths hot.
inline Ratfun random_ratfun(Rng& rng, std::uint64_t p) {
    std::uint64_t pick = uniform(rng, 0, 9);
    if (pick < 6) return Ratfun(random_fp(rng, p));
    if (pick < 8) return Ratfun(random_polynomial(rng, p, 2));
    return Ratfun(random_nonzero_polynomial(rng, p, 1), random_nonzero_polynomial(rng, p, 1));
}

inline Ratfun random_nonzero_ratfun(Rng& rng, std::uint64_t p) {
    for (;;) {
        Ratfun f = random_ratfun(rng, p);
        if (!f.is_zero()) return f;
    }
}

inline TruncSeries<Ratfun> random_series(Rng& rng, std::uint64_t p, std::uint32_t order) {
    TruncSeries<Ratfun> f(order, p);
    for (std::uint32_t i = 0; i < order; ++i)
        if (uniform(rng, 0, 2) != 0) f.set_coeff(i, random_ratfun(rng, p));
    return f;
}

/// Random series with zero constant term and invertible linear coefficient,
/// i.e. the image of T under an invertible reparametrization.
inline TruncSeries<Ratfun> random_invertible_parameter(Rng& rng, std::uint64_t p, std::uint32_t order) {
    TruncSeries<Ratfun> f(order, p);
    f.set_coeff(1, Ratfun(random_nonzero_fp(rng, p)));
    for (std::uint32_t i = 2; i < order; ++i)
        if (uniform(rng, 0, 1) == 0) f.set_coeff(i, random_ratfun(rng, p));
    return f;
}

/// Random additive parameter: P = c_0 T + c_1 T^p + c_2 T^{p^2} + ... with
/// constants c_i and c_0 != 0. These are exactly the invertible parameters
/// whose twist of the standard derivation is again iterative: the criterion
/// P(U+T) = P(U) + twistedU[[T]](P(T)) forces constant coefficients (higher
/// coefficients would have to be constants of the twist) and additivity,
/// and additive series over F_p are supported on p-power exponents.
inline TruncSeries<Ratfun> random_additive_parameter(Rng& rng, std::uint64_t p, std::uint32_t order) {
    TruncSeries<Ratfun> f(order, p);
    f.set_coeff(1, Ratfun(random_nonzero_fp(rng, p)));
    for (std::uint64_t q = p; q < order; q *= p)
        f.set_coeff(static_cast<std::uint32_t>(q), Ratfun(random_fp(rng, p)));
    return f;
}

}  // namespace hsd::testing

#endif
