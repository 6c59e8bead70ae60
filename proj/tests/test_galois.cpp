#include <random>

#include "doctest.h"
#include "support.hpp"
#include "zcp2/galois.hpp"
#include "zcp2/iso.hpp"

using namespace zcp2;

TEST_CASE("Galois elements") {
    CHECK(GaloisElement::all(5).size() == 20);
    CHECK(GaloisElement::all(2).size() == 2);
    CHECK_THROWS_AS(GaloisElement(3, 6), std::invalid_argument);
    const GaloisElement a(5, 2);
    CHECK((a * a.inverse()).k() == 1);
    CHECK(GaloisElement(3, -1).k() == 8);
}

TEST_CASE("twisting examples") {
    const auto c3 = Context::make_builtin(3);
    const auto b = parse("B(0,0;1,1+l)", c3, ParseOptions{true});
    CHECK(twist(b, 1) == b);
    const PolyMod want = c3->U(2).canonical(PolyMod(3, 2, {1, 2}));
    CHECK(*twist(b, 2).summands().front().u == want);

    const auto k5 = Context::make(load_config(std::filesystem::path(ZCP2_TEST_DATA) / "klein_p5.json"));
    // g -> g^2 swaps the Klein-four coordinates and doubles the class in C_3.
    CHECK(twist(parse("b(1:0) + c(1)", k5), 2) == parse("b(0:1) + c(2)", k5));
    // 7 = 2 mod 5 acts on H(p) like 2; 7 = 2^5 mod 25, so it acts on H(p^2) as 2^5.
    CHECK(twist(parse("b(1:0) + c(1)", k5), 7) == parse("b(0:1) + c(2)", k5));
}

TEST_CASE("twisted isomorphism") {
    const auto c5 = Context::make_builtin(5);
    const auto c = parse("C(0,0;1,1)", c5), d = parse("D(0,0;1,1)", c5);
    REQUIRE(twisted_isomorphic(c, c).has_value());
    CHECK(twisted_isomorphic(c, c)->k() == 1);
    CHECK_FALSE(twisted_isomorphic(c, d).has_value());
    CHECK_FALSE(twisted_isomorphic(c, parse("Z", c5)).has_value());
}

TEST_CASE("twist is a group action preserving the genus") {
    std::mt19937_64 rng(3);
    const auto k5 = Context::make(load_config(std::filesystem::path(ZCP2_TEST_DATA) / "klein_p5.json"));
    for (const auto& c : {Context::make_builtin(2), Context::make_builtin(3), k5}) {
        const auto all = GaloisElement::all(c->p());
        for (int i = 0; i < 40; ++i) {
            const auto d = testing::random_descriptor(c, rng, 3);
            for (const auto& k1 : all)
                for (const auto& k2 : all) {
                    CHECK(twist(twist(d, k2), k1) == twist(d, k1 * k2));
                }
            for (const auto& k : all) {
                const auto t = twist(d, k);
                CHECK(padic_completion(t) == padic_completion(d));
                CHECK(rank(t) == rank(d));
            }
        }
    }
}
