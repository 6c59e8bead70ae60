#pragma once

// Genus and isomorphism decisions for Z[C_{p^2}]-lattices.

#include <optional>
#include <vector>

#include "zcp2/lattice.hpp"

namespace zcp2 {

/// Multiplicities of the 4p+1 indecomposable Z_p C_{p^2}-lattices in the
/// p-adic completion. Classes and units are forgotten, types C and D merge.
struct PadicDescriptor {
    int p = 0;
    std::int64_t z = 0;        // Z_p
    std::int64_t r_p = 0;      // Z_p[zeta_p]
    std::int64_t e_p = 0;      // Z_p C_p
    std::int64_t s_p = 0;      // Z_p[zeta_{p^2}]
    std::int64_t z_s = 0;      // (Z_p, S_p; 1)
    std::vector<std::int64_t> beta;         // r = 0..p-1
    std::vector<std::int64_t> gamma_delta;  // r = 1..p-2
    std::vector<std::int64_t> epsilon;      // r = 0..p-2
    std::vector<std::int64_t> eta;          // r = 0..p-2

    friend bool operator==(const PadicDescriptor&, const PadicDescriptor&) = default;
    friend auto operator<=>(const PadicDescriptor&, const PadicDescriptor&) = default;
};

PadicDescriptor padic_completion(const LatticeDescriptor& d);
bool same_genus(const LatticeDescriptor& x, const LatticeDescriptor& y);

/// Invariant (iii): no summand b, E(b), c or E(c).
bool unit_invariant_applies(const LatticeDescriptor& d);
/// Invariant (iv): p = 1 mod 4 and no summand Z, E(b), E(c), B or F.
bool quadratic_invariant_applies(const LatticeDescriptor& d);

struct IsoInvariants {
    PadicDescriptor padic;
    GroupElement R_class;
    GroupElement S_class;
    /// Canonical representative of u0 in U_t; present iff invariant (iii) applies.
    std::optional<PolyMod> u0_class;
    /// Legendre symbol of the constant term of u0; present iff invariant (iv) applies.
    std::optional<int> quad_char;

    friend bool operator==(const IsoInvariants&, const IsoInvariants&) = default;
};

IsoInvariants invariants_of(const LatticeDescriptor& d);

/// Throws MismatchedContext when the descriptors use different contexts.
bool isomorphic(const LatticeDescriptor& x, const LatticeDescriptor& y);

nlohmann::json to_json(const PadicDescriptor& d);
nlohmann::json to_json(const IsoInvariants& inv);

}  // namespace zcp2
