#include <doctest.h>

#include "hsd/json_io.hpp"
#include "module_util.hpp"
#include "test_util.hpp"

using namespace hsd;

TEST_CASE("derivation JSON round-trips") {
    testing::Rng rng(103);
    for (int iter = 0; iter < 30; ++iter) {
        std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[testing::uniform(rng, 0, 3)];
        TruncSeries<Ratfun> g = testing::random_series(rng, p, 8);
        g.set_coeff(0, Ratfun::generator(p));
        IterativeDerivation theta(g);
        CHECK(derivation_from_json(to_json(theta)) == theta);
    }
}

TEST_CASE("substitution JSON round-trips") {
    testing::Rng rng(107);
    for (int iter = 0; iter < 30; ++iter) {
        std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[testing::uniform(rng, 0, 3)];
        Substitution lam(testing::random_invertible_parameter(rng, p, 8));
        CHECK(substitution_from_json(to_json(lam)) == lam);
    }
}

TEST_CASE("module JSON round-trips") {
    testing::Rng rng(109);
    IterativeDerivation theta = IterativeDerivation::standard(3, 8);
    auto gen = testing::random_iterative_module(rng, theta, 2);
    CHECK(module_from_json(to_json(gen.module)) == gen.module);
}

TEST_CASE("serialization is deterministic") {
    IterativeDerivation theta = IterativeDerivation::standard(3, 8);
    CHECK(to_json(theta).dump() == to_json(theta).dump());
    CHECK(to_json(theta).dump() == R"({"p":3,"N":8,"g":"s + T"})");
}

TEST_CASE("malformed envelopes are rejected") {
    CHECK_THROWS_AS(derivation_from_json(json::parse(R"({"p":3,"N":8})")), Error);
    CHECK_THROWS_AS(derivation_from_json(json::parse(R"({"p":-3,"N":8,"g":"s"})")), Error);
    CHECK_THROWS_AS(derivation_from_json(json::parse(R"(["s"])")), Error);
    CHECK_THROWS_AS(module_from_json(json::parse(R"({"p":3,"N":8,"theta":"s + T","n":2,"A":["1"]})")),
                    Error);
    CHECK_THROWS_AS(substitution_from_json(json::parse(R"({"p":3,"N":8,"P":"1 + T"})")), Error);
}
