#pragma once

// The action of G(p^2) = (Z/p^2)^* on descriptors, M -> M^beta, where beta
// sends g to g^k.

#include <optional>
#include <vector>

#include "zcp2/lattice.hpp"

namespace zcp2 {

class GaloisElement {
public:
    /// k is reduced mod p^2; throws std::invalid_argument when p divides k.
    GaloisElement(int p, std::int64_t k);

    int p() const noexcept { return p_; }
    std::int64_t k() const noexcept { return k_; }

    /// All phi(p^2) elements in increasing k.
    static std::vector<GaloisElement> all(int p);

    friend GaloisElement operator*(const GaloisElement& x, const GaloisElement& y);
    GaloisElement inverse() const;

    friend bool operator==(const GaloisElement&, const GaloisElement&) = default;

private:
    int p_;
    std::int64_t k_;
};

LatticeDescriptor twist(const LatticeDescriptor& d, const GaloisElement& beta);
inline LatticeDescriptor twist(const LatticeDescriptor& d, std::int64_t k) {
    return twist(d, GaloisElement(d.p(), k));
}

/// Smallest k with x isomorphic to twist(y, k), if any.
std::optional<GaloisElement> twisted_isomorphic(const LatticeDescriptor& x, const LatticeDescriptor& y);

}  // namespace zcp2
