#pragma once

// Arithmetic in the truncated polynomial rings F_p[l]/(l^m), their unit
// groups, and the quotients U_m of those unit groups by the images of the
// cyclotomic unit families.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace zcp2 {

/// Element of F_p[l]/(l^m), stored as exactly m residues (coefficient of l^j at j).
class PolyMod {
public:
    /// Coefficients are reduced mod p; missing ones are zero, terms at or past
    /// l^m are dropped.
    PolyMod(int p, int m, std::vector<int> coeffs);

    static PolyMod one(int p, int m);
    static PolyMod constant(int p, int m, std::int64_t c);
    /// l^r (zero when r >= m).
    static PolyMod lambda_power(int p, int m, int r);
    /// Inverse of encode().
    static PolyMod decode(int p, int m, std::uint64_t code);

    int p() const noexcept { return p_; }
    int m() const noexcept { return static_cast<int>(coeffs_.size()); }
    std::span<const int> coeffs() const noexcept { return coeffs_; }
    int operator[](int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }

    bool is_unit() const noexcept { return !coeffs_.empty() && coeffs_[0] != 0; }
    bool is_zero() const noexcept;

    /// Image in F_p[l]/(l^k), k <= m.
    PolyMod truncated(int k) const;
    /// Zero-padded copy in F_p[l]/(l^k), k >= m.
    PolyMod lifted(int k) const;

    /// Index in [0, p^m) whose numeric order is the lexicographic order of the
    /// coefficient vector.
    std::uint64_t encode() const noexcept;

    /// Human form, e.g. "1+2l+l^2"; "0" for zero.
    std::string to_string() const;

    friend bool operator==(const PolyMod&, const PolyMod&) = default;
    friend std::strong_ordering operator<=>(const PolyMod& a, const PolyMod& b) {
        if (auto c = a.p_ <=> b.p_; c != 0) return c;
        return a.coeffs_ <=> b.coeffs_;
    }

private:
    int p_;
    std::vector<int> coeffs_;
};

PolyMod poly_mul(const PolyMod& a, const PolyMod& b);
PolyMod poly_add(const PolyMod& a, const PolyMod& b);
PolyMod poly_pow(const PolyMod& a, std::uint64_t e);
/// Throws NonUnit when the constant coefficient vanishes.
PolyMod poly_inv(const PolyMod& a);

/// All units of F_p[l]/(l^m), m >= 1, in encode() order.
std::vector<PolyMod> unit_group(int p, int m);
/// (p-1) p^(m-1).
std::uint64_t unit_group_order(int p, int m);

/// Finite subgroup of u(F_p[l]/(l^m)).
class UnitSubgroup {
public:
    int p() const noexcept { return p_; }
    int m() const noexcept { return m_; }
    std::size_t order() const noexcept { return elements_.size(); }
    const std::vector<PolyMod>& elements() const noexcept { return elements_; }
    const std::vector<PolyMod>& generators() const noexcept { return generators_; }
    bool contains(const PolyMod& x) const;

private:
    friend UnitSubgroup subgroup_closure(int p, int m, std::span<const PolyMod> gens);
    int p_ = 0;
    int m_ = 0;
    std::vector<PolyMod> generators_;
    std::vector<PolyMod> elements_;
    std::vector<char> member_;  // indexed by encode()
};

/// Smallest subgroup containing gens (all units of the same ring F_p[l]/(l^m)).
UnitSubgroup subgroup_closure(int p, int m, std::span<const PolyMod> gens);

/// Sum_{j<k} (1+l)^j in F_p[l]/(l^m): the image of the cyclotomic unit
/// (g^k - 1)/(g - 1).
PolyMod cyclotomic_delta(int p, int m, std::int64_t k);

/// Image of u(Z[zeta_p]) in F_p[l]/(l^m), 1 <= m <= p-1, generated by -1,
/// 1+l and the Delta_l (2 <= l <= p-1). `extra` entries are truncated or
/// padded to length m.
UnitSubgroup image_of_R_units(int p, int m, std::span<const PolyMod> extra = {});

/// Image of u(ZC_p) * u(Z[zeta_{p^2}]) in F_p[l]/(l^p), generated by -1, 1+l
/// and the Delta_l for 2 <= l < p^2 prime to p.
UnitSubgroup image_of_ES_units(int p, std::span<const PolyMod> extra = {});

/// U_m with canonical representatives: in each coset the lexicographically
/// smallest coefficient vector with constant term 1.
class UnitQuotient {
public:
    int p() const noexcept { return p_; }
    int m() const noexcept { return m_; }
    std::size_t size() const noexcept { return reps_.size(); }
    const std::vector<PolyMod>& reps() const noexcept { return reps_; }
    /// Absent for m = 0.
    const UnitSubgroup* subgroup() const noexcept { return subgroup_.get(); }

    /// Coset index of a unit of F_p[l]/(l^m); throws NonUnit / MismatchedRing.
    std::size_t index_of(const PolyMod& x) const;
    const PolyMod& canonical(const PolyMod& x) const { return reps_[index_of(x)]; }
    bool is_canonical(const PolyMod& x) const;

    /// Coset index of galois_on_unit(k, reps()[i]).
    std::size_t act(std::int64_t k, std::size_t i) const;

private:
    friend UnitQuotient compute_Um(int, int, std::span<const PolyMod>, std::span<const PolyMod>);
    int p_ = 0;
    int m_ = 0;
    std::shared_ptr<const UnitSubgroup> subgroup_;
    std::vector<PolyMod> reps_;
    std::vector<std::int32_t> coset_;  // indexed by encode(); -1 for non-units
};

/// U_m for 0 <= m <= p. extra_R feeds image_of_R_units (m <= p-1),
/// extra_ES feeds image_of_ES_units (m = p).
UnitQuotient compute_Um(int p, int m, std::span<const PolyMod> extra_R = {},
                        std::span<const PolyMod> extra_ES = {});

/// Ring automorphism of F_p[l]/(l^m) induced by g -> g^k, i.e. l -> (1+l)^k - 1.
PolyMod galois_on_unit(std::int64_t k, const PolyMod& x);

/// Largest p^m the unit tables will enumerate.
inline constexpr std::uint64_t kMaxRingSize = std::uint64_t{1} << 24;

}  // namespace zcp2
