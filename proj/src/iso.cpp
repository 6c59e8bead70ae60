#include "zcp2/iso.hpp"

#include "zcp2/arith.hpp"
#include "zcp2/error.hpp"

namespace zcp2 {

PadicDescriptor padic_completion(const LatticeDescriptor& d) {
    const GenusVector g = genus_vector(d);
    PadicDescriptor pd;
    pd.p = d.p();
    pd.z = g.a;
    pd.r_p = g.b;
    pd.s_p = g.c;
    pd.e_p = g.d - g.b;
    pd.z_s = g.e - g.c;
    pd.beta = g.beta;
    pd.gamma_delta = g.gamma;
    for (std::size_t i = 0; i < g.delta.size(); ++i) pd.gamma_delta[i] += g.delta[i];
    pd.epsilon = g.epsilon;
    pd.eta = g.eta;
    return pd;
}

bool same_genus(const LatticeDescriptor& x, const LatticeDescriptor& y) {
    if (x.context() != y.context()) throw MismatchedContext("same_genus: descriptors over different contexts");
    return padic_completion(x) == padic_completion(y);
}

bool unit_invariant_applies(const LatticeDescriptor& d) {
    for (const auto& s : d.summands())
        if (s.type == SummandType::IdealR || s.type == SummandType::ExtB || s.type == SummandType::IdealS ||
            s.type == SummandType::ExtC)
            return false;
    return true;
}

bool quadratic_invariant_applies(const LatticeDescriptor& d) {
    if (!d.context()->p_is_1_mod_4()) return false;
    for (const auto& s : d.summands())
        if (s.type == SummandType::Z || s.type == SummandType::ExtB || s.type == SummandType::ExtC ||
            s.type == SummandType::B || s.type == SummandType::F)
            return false;
    return true;
}

IsoInvariants invariants_of(const LatticeDescriptor& d) {
    IsoInvariants inv;
    inv.padic = padic_completion(d);
    const IdealClasses ic = ideal_classes(d);
    inv.R_class = ic.R_class;
    inv.S_class = ic.S_class;
    const bool need_unit = unit_invariant_applies(d);
    const bool need_quad = quadratic_invariant_applies(d);
    if (need_unit || need_quad) {
        const PolyMod u = u0(d);
        if (need_unit) {
            const int t = t_of(d);
            inv.u0_class = d.context()->U(t).canonical(u.truncated(t));
        }
        if (need_quad) inv.quad_char = arith::legendre(u[0], d.p());
    }
    return inv;
}

bool isomorphic(const LatticeDescriptor& x, const LatticeDescriptor& y) {
    if (x.context() != y.context()) throw MismatchedContext("isomorphic: descriptors over different contexts");
    if (!same_genus(x, y)) return false;
    const IsoInvariants a = invariants_of(x);
    const IsoInvariants b = invariants_of(y);
    if (a.R_class != b.R_class || a.S_class != b.S_class) return false;
    if (a.u0_class && b.u0_class && *a.u0_class != *b.u0_class) return false;
    if (a.quad_char && b.quad_char && *a.quad_char != *b.quad_char) return false;
    return true;
}

nlohmann::json to_json(const PadicDescriptor& d) {
    return {{"p", d.p},
            {"Z_p", d.z},
            {"R_p", d.r_p},
            {"E_p", d.e_p},
            {"S_p", d.s_p},
            {"Z_p_S_p", d.z_s},
            {"beta", d.beta},
            {"gamma_plus_delta", d.gamma_delta},
            {"epsilon", d.epsilon},
            {"eta", d.eta}};
}

nlohmann::json to_json(const IsoInvariants& inv) {
    nlohmann::json j{{"padic", to_json(inv.padic)}, {"R_class", inv.R_class.exps}, {"S_class", inv.S_class.exps}};
    j["u0_class"] = inv.u0_class ? to_json(*inv.u0_class) : nlohmann::json();
    j["quad_char"] = inv.quad_char ? nlohmann::json(*inv.quad_char) : nlohmann::json();
    return j;
}

}  // namespace zcp2
