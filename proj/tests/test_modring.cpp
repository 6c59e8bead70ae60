#include <set>

#include "doctest.h"
#include "zcp2/arith.hpp"
#include "zcp2/error.hpp"
#include "zcp2/modring.hpp"

using namespace zcp2;

namespace {

// Schoolbook product of coefficient vectors truncated at m, kept separate from poly_mul.
std::vector<int> naive_mul(const std::vector<int>& a, const std::vector<int>& b, int p, int m) {
    std::vector<int> c(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; i + j < m; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return c;
}

std::vector<int> coeffs(const PolyMod& x) { return {x.coeffs().begin(), x.coeffs().end()}; }

std::set<std::uint64_t> brute_closure(int p, int m, const std::vector<PolyMod>& gens) {
    std::set<std::uint64_t> seen{PolyMod::one(p, m).encode()};
    std::vector<PolyMod> frontier{PolyMod::one(p, m)};
    while (!frontier.empty()) {
        std::vector<PolyMod> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                PolyMod y(p, m, naive_mul(coeffs(x), coeffs(g.truncated(m)), p, m));
                if (seen.insert(y.encode()).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace

TEST_CASE("PolyMod construction and printing") {
    PolyMod x(3, 3, {4, -1, 0, 5});
    CHECK(coeffs(x) == std::vector<int>{1, 2, 0});
    CHECK(x.to_string() == "1+2l");
    CHECK(PolyMod(3, 2, {0, 0}).to_string() == "0");
    CHECK(PolyMod(5, 3, {1, 1, 2}).to_string() == "1+l+2l^2");
    CHECK(PolyMod::lambda_power(3, 2, 2).is_zero());
    for (std::uint64_t c = 0; c < 27; ++c) CHECK(PolyMod::decode(3, 3, c).encode() == c);
    CHECK(PolyMod(3, 2, {0, 1}) < PolyMod(3, 2, {1, 0}));
}

TEST_CASE("multiplication and inverse at p=3, m=2") {
    const PolyMod a(3, 2, {1, 1}), b(3, 2, {1, 2});
    CHECK(poly_mul(a, b) == PolyMod::one(3, 2));
    CHECK(poly_inv(a) == b);
    CHECK(poly_inv(PolyMod::one(3, 2)) == PolyMod::one(3, 2));
    CHECK_THROWS_AS(poly_inv(PolyMod::lambda_power(3, 2, 1)), NonUnit);
    CHECK_THROWS_AS(poly_mul(a, PolyMod::one(3, 3)), MismatchedRing);
}

TEST_CASE("poly_mul agrees with schoolbook multiplication") {
    for (int p : {2, 3, 5})
        for (int m = 1; m <= 3; ++m) {
            std::uint64_t n = 1;
            for (int i = 0; i < m; ++i) n *= p;
            for (std::uint64_t i = 0; i < n; ++i)
                for (std::uint64_t j = 0; j < n; ++j) {
                    const PolyMod x = PolyMod::decode(p, m, i), y = PolyMod::decode(p, m, j);
                    REQUIRE(coeffs(poly_mul(x, y)) == naive_mul(coeffs(x), coeffs(y), p, m));
                }
        }
}

TEST_CASE("inverses found by search") {
    for (int p : {2, 3, 5})
        for (int m = 1; m <= 3; ++m)
            for (const auto& u : unit_group(p, m)) {
                const PolyMod v = poly_inv(u);
                CHECK(poly_mul(u, v) == PolyMod::one(p, m));
            }
}

TEST_CASE("unit group sizes") {
    CHECK(unit_group(2, 2).size() == 2);
    CHECK(unit_group(3, 1).size() == 2);
    CHECK(unit_group(3, 2).size() == 6);
    for (int p : {2, 3, 5, 7})
        for (int m = 1; m <= p && m <= 5; ++m) {
            const auto units = unit_group(p, m);
            CHECK(units.size() == unit_group_order(p, m));
            CHECK(units.size() == static_cast<std::size_t>((p - 1) * arith::powmod(p, m - 1, 1 << 30)));
        }
}

TEST_CASE("subgroup closure examples and closure properties") {
    const PolyMod one = PolyMod::one(3, 2);
    std::vector<PolyMod> g1{one};
    CHECK(subgroup_closure(3, 2, g1).order() == 1);
    std::vector<PolyMod> g2{PolyMod(2, 2, {1, 1})};
    CHECK(subgroup_closure(2, 2, g2).order() == 2);
    std::vector<PolyMod> g3{PolyMod(3, 2, {2})};
    const UnitSubgroup h = subgroup_closure(3, 2, g3);
    CHECK(h.order() == 2);
    CHECK(h.contains(PolyMod(3, 2, {2})));

    std::vector<PolyMod> bad{PolyMod(3, 2, {0, 1})};
    CHECK_THROWS_AS(subgroup_closure(3, 2, bad), NonUnit);

    std::vector<PolyMod> gens{PolyMod(5, 3, {1, 2, 3}), PolyMod(5, 3, {4})};
    const UnitSubgroup s = subgroup_closure(5, 3, gens);
    std::set<std::uint64_t> codes;
    for (const auto& x : s.elements()) codes.insert(x.encode());
    CHECK(codes == brute_closure(5, 3, gens));
    for (const auto& x : s.elements()) {
        CHECK(s.contains(poly_inv(x)));
        for (const auto& y : s.elements()) CHECK(s.contains(poly_mul(x, y)));
    }
}

TEST_CASE("images of cyclotomic units") {
    CHECK(image_of_R_units(3, 1).order() == 2);
    CHECK(image_of_R_units(5, 1).order() == 4);
    CHECK(image_of_R_units(2, 1).order() == 1);
    CHECK(image_of_ES_units(2).order() == 2);
    const UnitSubgroup es3 = image_of_ES_units(3);
    CHECK(es3.contains(PolyMod(3, 3, {1, 1})));
    CHECK(es3.contains(PolyMod(3, 3, {2})));
    CHECK_THROWS(image_of_R_units(3, 3));
    CHECK(cyclotomic_delta(5, 1, 3) == PolyMod(5, 1, {3}));
}

TEST_CASE("unit quotients") {
    CHECK(compute_Um(2, 2).size() == 1);
    CHECK(compute_Um(3, 1).size() == 1);
    for (int p : {2, 3, 5}) CHECK(compute_Um(p, 0).size() == 1);
    CHECK_THROWS(compute_Um(3, 4));

    for (int p : {2, 3, 5})
        for (int m = 1; m <= p; ++m) {
            const UnitQuotient q = compute_Um(p, m);
            REQUIRE(q.subgroup() != nullptr);
            CHECK(q.size() * q.subgroup()->order() == unit_group_order(p, m));
            // Brute-force coset partition with the oracle closure.
            std::vector<PolyMod> gens = q.subgroup()->generators();
            const auto h = brute_closure(p, m, gens);
            CHECK(h.size() == q.subgroup()->order());
            std::set<std::uint64_t> covered;
            for (const auto& rep : q.reps()) {
                CHECK(rep[0] == 1);
                CHECK(q.is_canonical(rep));
                for (auto code : h) {
                    const PolyMod y = poly_mul(rep, PolyMod::decode(p, m, code));
                    CHECK(covered.insert(y.encode()).second);
                    CHECK(q.canonical(y) == rep);
                    // canonical rep is the smallest constant-1 member of its coset
                    if (y[0] == 1) CHECK(rep.encode() <= y.encode());
                }
            }
            CHECK(covered.size() == unit_group_order(p, m));
        }
}

TEST_CASE("galois action on F_p[l]/(l^m)") {
    CHECK(galois_on_unit(2, PolyMod(3, 2, {1, 1})) == PolyMod(3, 2, {1, 2}));
    CHECK_THROWS_AS(galois_on_unit(3, PolyMod::one(3, 2)), std::invalid_argument);
    for (int p : {2, 3})
        for (int m = 1; m <= p; ++m) {
            const std::int64_t pp = p * p;
            std::uint64_t n = 1;
            for (int i = 0; i < m; ++i) n *= p;
            for (std::uint64_t c = 0; c < n; ++c) {
                const PolyMod x = PolyMod::decode(p, m, c);
                CHECK(galois_on_unit(1, x) == x);
                for (std::int64_t k1 = 1; k1 < pp; ++k1) {
                    if (k1 % p == 0) continue;
                    for (std::int64_t k2 = 1; k2 < pp; ++k2) {
                        if (k2 % p == 0) continue;
                        CHECK(galois_on_unit(k1, galois_on_unit(k2, x)) == galois_on_unit(k1 * k2 % pp, x));
                    }
                }
            }
        }
}

TEST_CASE("galois action descends to U_m cosets") {
    for (int p : {3, 5})
        for (int m = 1; m <= p; ++m) {
            const UnitQuotient q = compute_Um(p, m);
            for (std::int64_t k = 1; k < p * p; ++k) {
                if (k % p == 0) continue;
                for (std::size_t i = 0; i < q.size(); ++i)
                    for (const auto& h : q.subgroup()->elements())
                        CHECK(q.index_of(galois_on_unit(k, poly_mul(q.reps()[i], h))) == q.act(k, i));
            }
        }
}
