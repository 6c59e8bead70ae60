#pragma once

// Isomorphism and profinite isomorphism of the groups M x| C_{p^2}, and the
// size of their profinite genus: closed-form case analysis next to a direct
// orbit count over the genus.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "zcp2/iso.hpp"
#include "zcp2/lattice.hpp"

namespace zcp2 {

/// The group M x| C_{p^2} determined by the module M.
struct SemidirectDescriptor {
    LatticeDescriptor module;
};

/// Throws NotFaithful unless both modules are faithful.
bool group_isomorphic(const SemidirectDescriptor& x, const SemidirectDescriptor& y);
bool profinite_isomorphic(const SemidirectDescriptor& x, const SemidirectDescriptor& y);

/// Every invariant tuple realized by a lattice in the genus of d.
std::vector<IsoInvariants> enumerate_genus(const LatticeDescriptor& d,
                                           std::uint64_t guard = kDefaultEnumerationGuard);

/// Number of G(p^2)-orbits on enumerate_genus(d).
std::uint64_t orbit_genus_count(const LatticeDescriptor& d, std::uint64_t guard = kDefaultEnumerationGuard);

/// |G(p)\H(p)|, |G(p^2)\H(p^2)| and |G(p^2)\U_t| for the context of d.
struct OrbitSizes {
    std::uint64_t h_p = 1;
    std::uint64_t h_p2 = 1;
    std::uint64_t u_t = 1;
};
OrbitSizes orbit_sizes(const Context& ctx, int t, std::uint64_t guard = kDefaultEnumerationGuard);

enum class CaseTag {
    SoCs,
    CsBsAbsorption,
    SemAbsorcaoSemD,
    MaisSimples,
    ComBC,
    Ultimao,
    NonFaithfulNontrivial,
    TrivialModule
};
std::string_view to_string(CaseTag t);

struct ClosedForm {
    std::uint64_t value = 0;
    CaseTag tag = CaseTag::TrivialModule;
};

/// Shape outside the case analysis; `shape` names the summand types present.
struct Unsupported {
    std::string shape;
};

std::variant<ClosedForm, Unsupported> closed_form_count(const SemidirectDescriptor& e,
                                                        std::uint64_t guard = kDefaultEnumerationGuard);

struct GenusBounds {
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    bool holds = false;
};

struct GenusReport {
    std::optional<ClosedForm> closed_form;
    std::optional<std::uint64_t> enumeration;
    std::optional<bool> agree;
    std::optional<GenusBounds> bounds;  // faithful modules only
    std::vector<std::string> notes;

    /// The enumeration count when available, else the closed form.
    std::optional<std::uint64_t> value() const;
};

GenusReport genus_report(const SemidirectDescriptor& e, std::uint64_t guard = kDefaultEnumerationGuard);

nlohmann::json to_json(const GenusReport& r);

}  // namespace zcp2
