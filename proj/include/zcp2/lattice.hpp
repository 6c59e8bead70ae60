#pragma once

// Z[C_{p^2}]-lattices held as multisets of indecomposable summands, their
// text form, and the invariant data read off a decomposition.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zcp2/abelian.hpp"
#include "zcp2/classdata.hpp"
#include "zcp2/modring.hpp"

namespace zcp2 {

/// Prime, class-group data and the lazily built unit quotients U_0..U_p that
/// every descriptor over it shares.
class Context {
public:
    static std::shared_ptr<const Context> make(ClassData data);
    static std::shared_ptr<const Context> make_builtin(int p) { return make(builtin(p)); }

    int p() const noexcept { return data_.p; }
    const ClassData& class_data() const noexcept { return data_; }
    const AbGroup& H_p() const noexcept { return data_.H_p.target(); }
    const AbGroup& H_p2() const noexcept { return data_.H_p2.target(); }

    /// U_m, 0 <= m <= p. Safe to call concurrently.
    const UnitQuotient& U(int m) const;

    /// Fixed quadratic non-residue: the smallest one mod p (0 when p = 2).
    std::int64_t n0() const noexcept { return n0_; }
    bool p_is_1_mod_4() const noexcept { return data_.p % 4 == 1; }

private:
    explicit Context(ClassData data);
    ClassData data_;
    std::int64_t n0_ = 0;
    mutable std::mutex mutex_;
    mutable std::vector<std::shared_ptr<const UnitQuotient>> quotients_;
};

using ContextPtr = std::shared_ptr<const Context>;

enum class SummandType { Z, IdealR, IdealS, ExtB, ExtC, B, C, D, E, F };

std::string_view to_string(SummandType t);

/// Types B..F: extensions of an S-ideal carrying (r, u).
constexpr bool is_extension_type(SummandType t) { return t >= SummandType::B; }
constexpr bool carries_R_class(SummandType t) {
    return t == SummandType::IdealR || t == SummandType::ExtB || is_extension_type(t);
}
constexpr bool carries_S_class(SummandType t) {
    return t == SummandType::IdealS || t == SummandType::ExtC || is_extension_type(t);
}

/// Index m of the representative set U~_m holding u for an extension type.
int unit_length(SummandType t, int r, int p);
/// Inclusive r-range for an extension type; empty (lo > hi) when uninhabited.
std::pair<int, int> r_range(SummandType t, int p);

/// One indecomposable lattice. `b` is an element of H(p), `c` of H(p^2); a
/// class the type does not carry is the zero element. For TypeD, `u` excludes
/// the non-residue factor n0.
struct Summand {
    SummandType type = SummandType::Z;
    GroupElement b;
    GroupElement c;
    int r = 0;
    std::optional<PolyMod> u;

    friend bool operator==(const Summand&, const Summand&) = default;
    friend std::strong_ordering operator<=>(const Summand& x, const Summand& y);
};

/// Parameter tuple (a,b,c,d,e; beta,gamma,delta,epsilon,eta). b counts R-ideals,
/// c S-ideals; d - b and e - c count E(b) and E(c).
struct GenusVector {
    std::int64_t a = 0, b = 0, c = 0, d = 0, e = 0;
    std::vector<std::int64_t> beta;     // r = 0..p-1
    std::vector<std::int64_t> gamma;    // r = 1..p-2
    std::vector<std::int64_t> delta;    // r = 1..p-2
    std::vector<std::int64_t> epsilon;  // r = 0..p-2
    std::vector<std::int64_t> eta;      // r = 0..p-2

    friend bool operator==(const GenusVector&, const GenusVector&) = default;
};

enum class Faithfulness { TrivialAction, OrderP, Faithful };
std::string_view to_string(Faithfulness f);

class LatticeDescriptor {
public:
    /// Validates every summand against the context.
    LatticeDescriptor(ContextPtr ctx, std::vector<Summand> summands);

    const ContextPtr& context() const noexcept { return ctx_; }
    int p() const noexcept { return ctx_->p(); }
    /// Sorted: equal descriptors have equal summand lists.
    const std::vector<Summand>& summands() const noexcept { return summands_; }
    bool is_zero() const noexcept { return summands_.empty(); }
    std::size_t count(SummandType t) const;

    friend bool operator==(const LatticeDescriptor& x, const LatticeDescriptor& y) {
        return x.ctx_ == y.ctx_ && x.summands_ == y.summands_;
    }

private:
    ContextPtr ctx_;
    std::vector<Summand> summands_;
};

LatticeDescriptor direct_sum(const LatticeDescriptor& x, const LatticeDescriptor& y);

struct ParseOptions {
    /// Replace non-canonical units by their U~ representative instead of rejecting them.
    bool lenient_units = false;
};

/// Descriptor text, e.g. "Z + 2*c(0) + B(0,0;1,1+l)". "0" is the zero module.
LatticeDescriptor parse(std::string_view text, const ContextPtr& ctx, ParseOptions opts = {});
std::string render(const LatticeDescriptor& d);
std::string render(const Summand& s);

std::int64_t rank(const LatticeDescriptor& d);
std::int64_t rank(const Summand& s, int p);
GenusVector genus_vector(const LatticeDescriptor& d);

/// Product in u(F_p[l]/(l^p)) of the summands' units (zero-padded), with a
/// factor n0 per TypeD summand.
PolyMod u0(const LatticeDescriptor& d);
int r1(const LatticeDescriptor& d);
int r2(const LatticeDescriptor& d);
int t_of(const LatticeDescriptor& d);
int sigma(const LatticeDescriptor& d);
Faithfulness faithfulness(const LatticeDescriptor& d);

struct IdealClasses {
    GroupElement R_class;
    GroupElement S_class;
    friend bool operator==(const IdealClasses&, const IdealClasses&) = default;
};
IdealClasses ideal_classes(const LatticeDescriptor& d);

nlohmann::json to_json(const Summand& s);
nlohmann::json to_json(const LatticeDescriptor& d);
nlohmann::json to_json(const GenusVector& g);
nlohmann::json to_json(const PolyMod& u);

}  // namespace zcp2
