#include <doctest.h>

#include "hsd/rational.hpp"
#include "test_util.hpp"

using namespace hsd;
using Poly = Polynomial<Fp>;

namespace {

Ratfun frac(const Poly& n, const Poly& d) { return Ratfun(n, d); }

}  // namespace

TEST_CASE("ratfun normal form") {
    std::uint64_t p = 3;
    Poly s = Poly::generator(p);
    // (s^2 - 1)/(s + 1) reduces to s + 2 mod 3.
    Ratfun f = frac(s * s - Poly::one(p), s + Poly::one(p));
    CHECK(f == Ratfun(s + Poly(Fp(2, p))));
    CHECK(f.den().is_one());

    // Non-monic denominators get rescaled: s / (2s + 2) = 2s / (s + 1) mod 3.
    Ratfun g = frac(s, s.scaled(Fp(2, p)) + Poly(Fp(2, p)));
    CHECK(g.den().is_monic());
    CHECK(g.num() == s.scaled(Fp(2, p)));
}

TEST_CASE("ratfun arithmetic examples") {
    std::uint64_t p = 3;
    Poly s = Poly::generator(p);
    Ratfun a = frac(s, s + Poly::one(p));
    Ratfun b = frac(Poly::one(p), s + Poly::one(p));
    CHECK(a + b == Ratfun::one(p));

    std::uint64_t q = 5;
    Poly t = Poly::generator(q);
    Ratfun f = frac(t * t + Poly::one(q), t);
    CHECK(f * f.inverse() == Ratfun::one(q));
}

TEST_CASE("ratfun division by zero") {
    CHECK_THROWS_AS(Ratfun::one(3) / Ratfun::zero(3), Error);
    CHECK_THROWS_AS(Ratfun::zero(3).inverse(), Error);
}

TEST_CASE("normal form is canonical on random fractions") {
    testing::Rng rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[testing::uniform(rng, 0, 3)];
        Poly a = testing::random_polynomial(rng, p, 4);
        Poly b = testing::random_nonzero_polynomial(rng, p, 3);
        Poly c = testing::random_nonzero_polynomial(rng, p, 2);
        // a/b and (ac)/(bc) are the same fraction; normal forms must agree.
        CHECK(frac(a, b) == frac(a * c, b * c));
    }
}

TEST_CASE("field laws on random rational functions") {
    testing::Rng rng(13);
    for (int iter = 0; iter < 100; ++iter) {
        std::uint64_t p = 5;
        Ratfun f = testing::random_ratfun(rng, p);
        Ratfun g = testing::random_ratfun(rng, p);
        Ratfun h = testing::random_ratfun(rng, p);
        CHECK((f + g) * h == f * h + g * h);
        CHECK(f + (g + h) == (f + g) + h);
        if (!g.is_zero()) CHECK((f / g) * g == f);
    }
}

TEST_CASE("pth_root examples") {
    std::uint64_t p = 3;
    Poly s = Poly::generator(p);
    // s^3/(s^3+1) = (s/(s+1))^3 because s^3 + 1 = (s+1)^3 mod 3.
    Ratfun f = frac(s.pow(3), s.pow(3) + Poly::one(p));
    CHECK(pth_root(f, 1) == frac(s, s + Poly::one(p)));

    Ratfun any = frac(s * s + Poly::one(p), s + Poly(Fp(2, p)));
    CHECK(pth_root(any, 0) == any);

    CHECK_THROWS_AS(pth_root(Ratfun(s + Poly::one(p)), 1), Error);
    try {
        pth_root(Ratfun(s + Poly::one(p)), 1);
    } catch (const Error& e) {
        CHECK(e.kind() == errc::not_a_pth_power);
    }
}

TEST_CASE("pth_root roundtrip on random inputs") {
    testing::Rng rng(17);
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        for (int iter = 0; iter < 50; ++iter) {
            Ratfun f = testing::random_ratfun(rng, p);
            for (std::uint32_t e : {1u, 2u}) {
                std::uint64_t q = 1;
                for (std::uint32_t i = 0; i < e; ++i) q *= p;
                Ratfun acc = Ratfun::one(p);
                for (std::uint64_t i = 0; i < q; ++i) acc *= f;
                CHECK(pth_root(acc, e) == f);
            }
        }
    }
}

TEST_CASE("ratfun text form") {
    std::uint64_t p = 3;
    Poly s = Poly::generator(p);
    CHECK(to_string(frac(s + Poly::one(p), s)) == "(s + 1)/(s)");
    CHECK(to_string(Ratfun(s)) == "s");
    CHECK(to_string(Ratfun::zero(p)) == "0");
}
