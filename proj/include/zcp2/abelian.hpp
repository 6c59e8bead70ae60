#pragma once

// Finite abelian groups in Smith form with an automorphism action of a cyclic
// group (Z/n)^*, and orbit counting for such actions.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace zcp2 {

inline constexpr std::uint64_t kDefaultEnumerationGuard = 1'000'000;

/// Exponent vector, one residue per invariant factor.
struct GroupElement {
    std::vector<std::int64_t> exps;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Z/n_1 x ... x Z/n_k with n_1 | n_2 | ... | n_k, every n_i >= 2.
class AbGroup {
public:
    AbGroup() = default;
    /// Throws InvariantViolation on a factor below 2 or a broken divisibility chain.
    explicit AbGroup(std::vector<std::int64_t> invariant_factors);

    const std::vector<std::int64_t>& invariant_factors() const noexcept { return factors_; }
    std::size_t rank() const noexcept { return factors_.size(); }
    std::uint64_t order() const noexcept;
    bool is_trivial() const noexcept { return factors_.empty(); }

    GroupElement zero() const { return GroupElement{std::vector<std::int64_t>(rank(), 0)}; }
    bool contains(const GroupElement& x) const noexcept;

    /// Mixed-radix index in [0, order()).
    std::uint64_t encode(const GroupElement& x) const;
    GroupElement decode(std::uint64_t code) const;

    friend bool operator==(const AbGroup&, const AbGroup&) = default;

private:
    std::vector<std::int64_t> factors_;
};

GroupElement element_add(const AbGroup& g, const GroupElement& x, const GroupElement& y);
GroupElement element_neg(const AbGroup& g, const GroupElement& x);

/// Action of (Z/modulus)^* (cyclic of order acting_order, generated by
/// generator_residue) on an abelian group; the generator acts on exponent
/// column vectors by generator_matrix.
class CyclicAction {
public:
    CyclicAction() = default;
    /// Validates that the matrix defines an automorphism of exact period
    /// dividing acting_order and that generator_residue generates (Z/modulus)^*.
    CyclicAction(AbGroup target, std::int64_t modulus, std::int64_t generator_residue,
                 std::vector<std::vector<std::int64_t>> generator_matrix);

    /// Trivial group acted on by (Z/modulus)^*, generated by its smallest primitive root.
    static CyclicAction trivial(std::int64_t modulus);

    const AbGroup& target() const noexcept { return target_; }
    std::int64_t modulus() const noexcept { return modulus_; }
    std::int64_t acting_order() const noexcept { return acting_order_; }
    std::int64_t generator_residue() const noexcept { return generator_residue_; }
    const std::vector<std::vector<std::int64_t>>& generator_matrix() const noexcept { return matrix_; }

    GroupElement apply_generator(const GroupElement& x) const;
    /// Exponent d with generator_residue^d = k (mod modulus).
    std::int64_t discrete_log(std::int64_t k) const;

    /// Image of every encoded element under residue k (which is reduced mod modulus()).
    std::vector<std::uint32_t> permutation(std::int64_t k,
                                           std::uint64_t guard = kDefaultEnumerationGuard) const;

private:
    AbGroup target_;
    std::int64_t modulus_ = 1;
    std::int64_t acting_order_ = 1;
    std::int64_t generator_residue_ = 1;
    std::vector<std::vector<std::int64_t>> matrix_;
};

GroupElement apply_action(const CyclicAction& a, std::int64_t k, const GroupElement& x);

/// Orbits of the acting group on the target, each sorted, listed by smallest member.
/// The count is cross-checked against Burnside's lemma.
std::vector<std::vector<GroupElement>> orbits(const CyclicAction& a,
                                              std::uint64_t guard = kDefaultEnumerationGuard);

/// Burnside count of the orbits of a single action.
std::uint64_t burnside_orbit_count(const CyclicAction& a,
                                   std::uint64_t guard = kDefaultEnumerationGuard);

/// Orbit count of a cyclic group of the given order acting diagonally on a
/// product of finite sets; factor i is given by the permutation its generator
/// induces. Counts by walking orbits of the product.
std::uint64_t count_diagonal_orbits(std::span<const std::vector<std::uint32_t>> generator_perms,
                                    std::uint64_t guard = kDefaultEnumerationGuard);

/// Same count via Burnside's lemma over the acting_order powers of the generator.
std::uint64_t burnside_diagonal_orbits(std::span<const std::vector<std::uint32_t>> generator_perms,
                                       std::uint64_t acting_order);

/// Diagonal orbits of (Z/driver_modulus)^* acting on the product of the
/// actions' targets (each reduces residues mod its own modulus) times sets of
/// the given sizes with trivial action.
std::uint64_t diagonal_orbits(std::int64_t driver_modulus, std::span<const CyclicAction> actions,
                              std::span<const std::uint64_t> trivial_sizes = {},
                              std::uint64_t guard = kDefaultEnumerationGuard);

std::string to_string(const GroupElement& x);

}  // namespace zcp2
