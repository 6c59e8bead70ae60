#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "zcp2/error.hpp"
#include "zcp2/iso.hpp"

using namespace zcp2;

TEST_CASE("p-adic completion") {
    const auto c5 = Context::make_builtin(5);
    const PadicDescriptor z = padic_completion(parse("3*Z", c5));
    CHECK(z.z == 3);
    CHECK(z.r_p + z.e_p + z.s_p + z.z_s == 0);
    CHECK(padic_completion(parse("C(0,0;1,1) + E(0,0;0,1)", c5)) ==
          padic_completion(parse("D(0,0;1,1) + E(0,0;0,1)", c5)));

    const auto k5 = Context::make(load_config(std::filesystem::path(ZCP2_TEST_DATA) / "klein_p5.json"));
    CHECK(padic_completion(parse("c(1)", k5)) == padic_completion(parse("c(0)", k5)));
}

TEST_CASE("same genus") {
    const auto c5 = Context::make_builtin(5);
    const auto c = parse("C(0,0;1,1)", c5), d = parse("D(0,0;1,1)", c5);
    CHECK(same_genus(c, c));
    CHECK(same_genus(c, d));
    CHECK_FALSE(same_genus(parse("Z", c5), parse("b(0)", c5)));
    CHECK_THROWS_AS(same_genus(c, parse("C(0,0;1,1)", Context::make_builtin(5))), MismatchedContext);
}

TEST_CASE("isomorphism invariants") {
    const auto c5 = Context::make_builtin(5);
    const IsoInvariants z = invariants_of(parse("2*Z", c5));
    CHECK_FALSE(z.quad_char.has_value());
    REQUIRE(z.u0_class.has_value());
    CHECK(*z.u0_class == PolyMod::one(5, z.u0_class->m()));

    CHECK(invariants_of(parse("D(0,0;1,1)", c5)).quad_char == -1);
    CHECK(invariants_of(parse("C(0,0;1,1)", c5)).quad_char == 1);
    // One TypeD contributes one factor n0 = 2, a non-residue mod 5; two contribute n0^2.
    CHECK(invariants_of(parse("C(0,0;1,1) + D(0,0;1,1)", c5)).quad_char == -1);
    CHECK(invariants_of(parse("2*D(0,0;1,1)", c5)).quad_char == 1);
    CHECK_FALSE(invariants_of(parse("c(0) + C(0,0;1,1)", c5)).u0_class.has_value());
    CHECK_FALSE(isomorphic(parse("C(0,0;1,1)", c5), parse("D(0,0;1,1)", c5)));

    const auto c2 = Context::make_builtin(2);
    CHECK(isomorphic(parse("c(0)", c2), parse("c(0)", c2)));

    const auto j = to_json(invariants_of(parse("D(0,0;1,1)", c5)));
    CHECK(j["quad_char"] == -1);
    CHECK(j["padic"]["gamma_plus_delta"] == nlohmann::json{1, 0, 0});
}

TEST_CASE("indecomposable completions number 4p+1") {
    for (int p : {2, 3, 5}) {
        const auto c = Context::make_builtin(p);
        std::set<PadicDescriptor> seen;
        for (const auto& s : testing::indecomposables(*c)) seen.insert(padic_completion(LatticeDescriptor(c, {s})));
        CHECK(seen.size() == static_cast<std::size_t>(4 * p + 1));
    }
}

TEST_CASE("isomorphism is an equivalence refining the genus") {
    std::mt19937_64 rng(11);
    for (int p : {2, 3, 5}) {
        const auto c = Context::make_builtin(p);
        std::vector<LatticeDescriptor> pool;
        for (int i = 0; i < 60; ++i) pool.push_back(testing::random_descriptor(c, rng, 2));
        for (const auto& x : pool) {
            CHECK(isomorphic(x, x));
            for (const auto& y : pool) {
                const bool xy = isomorphic(x, y);
                CHECK(xy == isomorphic(y, x));
                if (xy) CHECK(same_genus(x, y));
                CHECK(same_genus(x, y) == (padic_completion(x) == padic_completion(y)));
                if (!xy) continue;
                for (const auto& z : pool)
                    if (isomorphic(y, z)) CHECK(isomorphic(x, z));
            }
        }
    }
}

TEST_CASE("optional presence depends only on the genus") {
    std::mt19937_64 rng(5);
    for (int p : {3, 5}) {
        const auto c = Context::make_builtin(p);
        std::map<PadicDescriptor, std::pair<bool, bool>> pattern;
        for (int i = 0; i < 300; ++i) {
            const auto d = testing::random_descriptor(c, rng, 3);
            const IsoInvariants inv = invariants_of(d);
            const std::pair<bool, bool> here{inv.u0_class.has_value(), inv.quad_char.has_value()};
            auto [it, fresh] = pattern.emplace(inv.padic, here);
            if (!fresh) CHECK(it->second == here);
        }
    }
}
