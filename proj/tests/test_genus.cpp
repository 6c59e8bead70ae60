#include <algorithm>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "zcp2/arith.hpp"
#include "zcp2/error.hpp"
#include "zcp2/galois.hpp"
#include "zcp2/genus.hpp"

using namespace zcp2;

namespace {

SemidirectDescriptor group(const char* text, const ContextPtr& c) { return {parse(text, c)}; }

ContextPtr synthetic_c43() {
    static const ContextPtr c =
        Context::make(load_config(std::filesystem::path(ZCP2_TEST_DATA) / "synthetic_c43.json"));
    return c;
}

}  // namespace

TEST_CASE("group and profinite isomorphism") {
    const auto c5 = Context::make_builtin(5);
    const auto c = group("C(0,0;1,1)", c5), d = group("D(0,0;1,1)", c5);
    CHECK(group_isomorphic(c, c));
    CHECK_FALSE(group_isomorphic(c, d));
    CHECK(profinite_isomorphic(c, d));
    CHECK_FALSE(profinite_isomorphic(c, group("C(0,0;1,1) + Z", c5)));
    CHECK_THROWS_AS(group_isomorphic(c, group("Z + b(0)", c5)), NotFaithful);
    CHECK_THROWS_AS(profinite_isomorphic(group("2*Z", c5), c), NotFaithful);
}

TEST_CASE("genus enumeration") {
    CHECK(enumerate_genus(parse("c(0)", Context::make_builtin(3))).size() == 1);
    const auto c5 = Context::make_builtin(5);
    CHECK(enumerate_genus(parse("C(0,0;1,1)", c5)).size() == 2);
    CHECK(orbit_genus_count(parse("C(0,0;1,1)", c5)) == 2);
    CHECK(enumerate_genus(parse("3*Z", c5)).size() == 1);
    CHECK(orbit_genus_count(parse("3*Z", c5)) == 1);

    // Every enumerated tuple has the genus of the source.
    const auto d = parse("C(0,0;1,1) + E(0,0;0,1)", c5);
    for (const auto& inv : enumerate_genus(d)) CHECK(inv.padic == padic_completion(d));
}

TEST_CASE("closed forms") {
    const auto c3 = Context::make_builtin(3);
    auto cf = closed_form_count(group("Z + c(0)", c3));
    REQUIRE(std::holds_alternative<ClosedForm>(cf));
    CHECK(std::get<ClosedForm>(cf).value == 1);
    CHECK(std::get<ClosedForm>(cf).tag == CaseTag::SoCs);

    const auto c5 = Context::make_builtin(5);
    cf = closed_form_count(group("b(0) + c(0) + Z", c5));
    REQUIRE(std::holds_alternative<ClosedForm>(cf));
    CHECK(std::get<ClosedForm>(cf).tag == CaseTag::Ultimao);
    CHECK(std::get<ClosedForm>(cf).value == 1);

    cf = closed_form_count(group("C(0,0;1,1)", c5));
    REQUIRE(std::holds_alternative<ClosedForm>(cf));
    CHECK(std::get<ClosedForm>(cf).tag == CaseTag::MaisSimples);
    CHECK(std::get<ClosedForm>(cf).value == 2);

    cf = closed_form_count(group("b(0) + C(0,0;1,1)", c5));
    REQUIRE(std::holds_alternative<ClosedForm>(cf));
    CHECK(std::get<ClosedForm>(cf).tag == CaseTag::ComBC);
    CHECK(std::get<ClosedForm>(cf).value == 2);

    CHECK(std::holds_alternative<Unsupported>(closed_form_count(group("Ec(0) + C(0,0;1,1)", c5))));
    CHECK(std::get<ClosedForm>(closed_form_count(group("2*Z", c5))).tag == CaseTag::TrivialModule);
    CHECK(std::get<ClosedForm>(closed_form_count(group("Z + Eb(0)", c5))).tag ==
          CaseTag::NonFaithfulNontrivial);
    CHECK(std::get<ClosedForm>(closed_form_count(group("b(0) + B(0,0;0,1)", c3))).tag ==
          CaseTag::CsBsAbsorption);
    CHECK(std::get<ClosedForm>(closed_form_count(group("Z + E(0,0;0,1)", c3))).tag ==
          CaseTag::SemAbsorcaoSemD);
}

TEST_CASE("genus reports") {
    const auto c2 = Context::make_builtin(2);
    const GenusReport r = genus_report(group("c(0) + B(0,0;0,1)", c2));
    REQUIRE(r.closed_form.has_value());
    CHECK(r.agree == true);
    CHECK(r.value() == 1);

    const auto c5 = Context::make_builtin(5);
    const GenusReport ce = genus_report(group("C(0,0;1,1) + E(0,0;0,1)", c5));
    const auto d = parse("C(0,0;1,1) + E(0,0;0,1)", c5);
    CHECK(ce.agree == true);
    CHECK(ce.value() == 2 * orbit_sizes(*c5, t_of(d)).u_t);

    const GenusReport un = genus_report(group("Ec(0) + C(0,0;1,1)", c5));
    CHECK_FALSE(un.closed_form.has_value());
    CHECK(un.enumeration.has_value());
    CHECK_FALSE(un.notes.empty());

    const auto j = to_json(r);
    CHECK(j["closed_form"]["case_tag"] == "CsBsAbsorption");
    CHECK(j["agree"] == true);
}

TEST_CASE("Z plus a C/D part has genus 1") {
    // Sigma_M requires no Z summand, and without invariant (iv) C and D twins are isomorphic.
    const auto c5 = Context::make_builtin(5);
    const GenusReport r = genus_report(group("Z + C(0,0;1,1)", c5));
    CHECK(r.agree == true);
    CHECK(r.value() == 1);
}

TEST_CASE("synthetic order-43 class group at p = 7") {
    const auto c = synthetic_c43();
    const CyclicAction& h = c->class_data().H_p2;
    CHECK(orbits(h).size() == 2);
    const std::vector<CyclicAction> acts{h};
    CHECK(burnside_orbit_count(h) == diagonal_orbits(49, acts));

    for (const char* text : {"c(0)", "c(5) + Z", "2*c(1)"}) {
        const auto d = parse(text, c);
        CHECK(orbit_genus_count(d) == diagonal_orbits(49, acts));
        const GenusReport r = genus_report(SemidirectDescriptor{d});
        CHECK(r.agree == true);
        CHECK(r.value() == 2);
        REQUIRE(r.bounds.has_value());
        CHECK(r.bounds->holds);
    }
    CHECK_THROWS_AS(orbit_genus_count(parse("c(0)", c), 10), SizeGuard);
}

TEST_CASE("class groups with nontrivial actions") {
    const auto k5 = Context::make(load_config(std::filesystem::path(ZCP2_TEST_DATA) / "klein_p5.json"));
    const OrbitSizes o = orbit_sizes(*k5, 1);
    CHECK(o.h_p == 3);
    CHECK(o.h_p2 == 2);
    const auto so_cs = group("Z + c(1)", k5);
    const GenusReport r = genus_report(so_cs);
    CHECK(r.closed_form->tag == CaseTag::SoCs);
    CHECK(r.value() == 2);
    CHECK(r.agree == true);
    // The diagonal action on H(p) x H(p^2) has 7 orbits (Burnside over the 20 residues),
    // while the product formula gives 3 * 2: the report flags the disagreement.
    const GenusReport u = genus_report(group("b(0) + c(0) + Z", k5));
    CHECK(u.closed_form->value == 6);
    CHECK(u.enumeration == 7);
    CHECK(u.agree == false);
    CHECK(std::any_of(u.notes.begin(), u.notes.end(),
                      [](const std::string& n) { return n.find("disagrees") != std::string::npos; }));
}

TEST_CASE("orbit counts are twist invariant") {
    std::mt19937_64 rng(17);
    for (int p : {2, 3, 5}) {
        const auto c = Context::make_builtin(p);
        for (int i = 0; i < 30; ++i) {
            const auto d = testing::random_descriptor(c, rng, 3);
            const auto n = orbit_genus_count(d);
            for (const auto& k : GaloisElement::all(p)) CHECK(orbit_genus_count(twist(d, k)) == n);
        }
    }
}
