#include "zcp2/genus.hpp"

#include <numeric>
#include <sstream>

#include "zcp2/arith.hpp"
#include "zcp2/error.hpp"
#include "zcp2/galois.hpp"

namespace zcp2 {

namespace {

void require_faithful(const SemidirectDescriptor& e, const char* what) {
    if (faithfulness(e.module) != Faithfulness::Faithful)
        throw NotFaithful(std::string(what) + ": the action on " + render(e.module) +
                          " is not faithful; the criterion covers faithful actions only");
}

struct Shape {
    std::int64_t a = 0, nb = 0, nc = 0, neb = 0, nec = 0;
    std::int64_t mb = 0, mc = 0, md = 0, me = 0, mf = 0;
    std::int64_t mq() const { return mb + mc + md + me + mf; }
};

Shape shape_of(const LatticeDescriptor& d) {
    Shape s;
    for (const auto& x : d.summands()) {
        switch (x.type) {
            case SummandType::Z: ++s.a; break;
            case SummandType::IdealR: ++s.nb; break;
            case SummandType::IdealS: ++s.nc; break;
            case SummandType::ExtB: ++s.neb; break;
            case SummandType::ExtC: ++s.nec; break;
            case SummandType::B: ++s.mb; break;
            case SummandType::C: ++s.mc; break;
            case SummandType::D: ++s.md; break;
            case SummandType::E: ++s.me; break;
            case SummandType::F: ++s.mf; break;
        }
    }
    return s;
}

std::string describe(const Shape& s) {
    std::ostringstream os;
    const std::pair<const char*, std::int64_t> parts[] = {{"Z", s.a},   {"b", s.nb},  {"c", s.nc}, {"Eb", s.neb},
                                                          {"Ec", s.nec}, {"B", s.mb},  {"C", s.mc}, {"D", s.md},
                                                          {"E", s.me},  {"F", s.mf}};
    bool first = true;
    for (auto [name, n] : parts) {
        if (n == 0) continue;
        os << (first ? "" : " + ") << name << '^' << n;
        first = false;
    }
    return first ? "0" : os.str();
}

// Which invariant coordinates can vary inside the genus of d.
struct FreeCoordinates {
    bool r_class = false;
    bool s_class = false;
    bool unit = false;     // invariant (iii) applies
    bool unit_free = false;  // ... and some extension-type summand lets u0 vary
    bool quad = false;     // invariant (iv) applies
    bool quad_free = false;  // ... and the genus holds a C/D summand to toggle
    int t = 0;
};

FreeCoordinates free_coordinates(const LatticeDescriptor& d) {
    FreeCoordinates f;
    bool any_ext = false;
    bool any_cd = false;
    for (const auto& s : d.summands()) {
        f.r_class |= carries_R_class(s.type);
        f.s_class |= carries_S_class(s.type);
        any_ext |= is_extension_type(s.type);
        any_cd |= s.type == SummandType::C || s.type == SummandType::D;
    }
    f.unit = unit_invariant_applies(d);
    f.unit_free = f.unit && any_ext;
    f.quad = quadratic_invariant_applies(d);
    f.quad_free = f.quad && any_cd;
    f.t = t_of(d);
    return f;
}

std::uint64_t checked_product(std::initializer_list<std::uint64_t> sizes, std::uint64_t guard) {
    std::uint64_t n = 1;
    for (auto s : sizes) {
        n *= s;
        if (n > guard) throw SizeGuard("genus has more than " + std::to_string(guard) + " invariant tuples");
    }
    return n;
}

std::vector<std::uint32_t> identity_perm(std::size_t n) {
    std::vector<std::uint32_t> v(n);
    std::iota(v.begin(), v.end(), 0u);
    return v;
}

}  // namespace

bool group_isomorphic(const SemidirectDescriptor& x, const SemidirectDescriptor& y) {
    require_faithful(x, "group_isomorphic");
    require_faithful(y, "group_isomorphic");
    return twisted_isomorphic(x.module, y.module).has_value();
}

bool profinite_isomorphic(const SemidirectDescriptor& x, const SemidirectDescriptor& y) {
    require_faithful(x, "profinite_isomorphic");
    require_faithful(y, "profinite_isomorphic");
    if (x.module.context() != y.module.context())
        throw MismatchedContext("profinite_isomorphic: different contexts");
    return padic_completion(x.module) == padic_completion(y.module);
}

std::vector<IsoInvariants> enumerate_genus(const LatticeDescriptor& d, std::uint64_t guard) {
    const Context& ctx = *d.context();
    const FreeCoordinates f = free_coordinates(d);
    const IsoInvariants base = invariants_of(d);

    std::vector<GroupElement> r_vals{ctx.H_p().zero()};
    std::vector<GroupElement> s_vals{ctx.H_p2().zero()};
    std::vector<std::optional<PolyMod>> u_vals{base.u0_class};
    std::vector<std::optional<int>> q_vals{base.quad_char};
    checked_product({f.r_class ? ctx.H_p().order() : 1, f.s_class ? ctx.H_p2().order() : 1,
                     f.unit_free ? ctx.U(f.t).size() : 1, f.quad_free ? 2u : 1u},
                    guard);
    if (f.r_class) {
        r_vals.clear();
        for (std::uint64_t c = 0; c < ctx.H_p().order(); ++c) r_vals.push_back(ctx.H_p().decode(c));
    }
    if (f.s_class) {
        s_vals.clear();
        for (std::uint64_t c = 0; c < ctx.H_p2().order(); ++c) s_vals.push_back(ctx.H_p2().decode(c));
    }
    if (f.unit_free) {
        u_vals.clear();
        for (const auto& rep : ctx.U(f.t).reps()) u_vals.emplace_back(rep);
    }
    if (f.quad_free) q_vals = {1, -1};

    std::vector<IsoInvariants> out;
    for (const auto& rv : r_vals)
        for (const auto& sv : s_vals)
            for (const auto& uv : u_vals)
                for (const auto& qv : q_vals) {
                    IsoInvariants inv = base;
                    inv.R_class = rv;
                    inv.S_class = sv;
                    inv.u0_class = uv;
                    inv.quad_char = qv;
                    out.push_back(std::move(inv));
                }
    return out;
}

std::uint64_t orbit_genus_count(const LatticeDescriptor& d, std::uint64_t guard) {
    const Context& ctx = *d.context();
    const FreeCoordinates f = free_coordinates(d);
    const std::int64_t pp = std::int64_t{ctx.p()} * ctx.p();
    const std::int64_t gen = arith::primitive_root(pp);

    // Coordinates in the order enumerate_genus() lists them.
    std::vector<std::vector<std::uint32_t>> perms;
    perms.push_back(f.r_class ? ctx.class_data().H_p.permutation(gen, guard) : identity_perm(1));
    perms.push_back(f.s_class ? ctx.class_data().H_p2.permutation(gen, guard) : identity_perm(1));
    if (f.unit_free) {
        const UnitQuotient& q = ctx.U(f.t);
        std::vector<std::uint32_t> perm(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) perm[i] = static_cast<std::uint32_t>(q.act(gen, i));
        perms.push_back(std::move(perm));
    }
    // G(p^2) fixes F_p, so the quadratic character is a trivially acted coordinate.
    perms.push_back(identity_perm(f.quad_free ? 2 : 1));

    const std::uint64_t direct = count_diagonal_orbits(perms, guard);
    if (direct != burnside_diagonal_orbits(perms, static_cast<std::uint64_t>(arith::totient(pp))))
        throw std::logic_error("orbit_genus_count: enumeration disagrees with Burnside count");
    return direct;
}

OrbitSizes orbit_sizes(const Context& ctx, int t, std::uint64_t guard) {
    OrbitSizes o;
    o.h_p = burnside_orbit_count(ctx.class_data().H_p, guard);
    o.h_p2 = burnside_orbit_count(ctx.class_data().H_p2, guard);
    const UnitQuotient& q = ctx.U(t);
    const std::int64_t pp = std::int64_t{ctx.p()} * ctx.p();
    std::vector<std::uint32_t> perm(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        perm[i] = static_cast<std::uint32_t>(q.act(arith::primitive_root(pp), i));
    const std::vector<std::vector<std::uint32_t>> perms{perm};
    o.u_t = burnside_diagonal_orbits(perms, static_cast<std::uint64_t>(arith::totient(pp)));
    return o;
}

std::string_view to_string(CaseTag t) {
    switch (t) {
        case CaseTag::SoCs: return "SoCs";
        case CaseTag::CsBsAbsorption: return "CsBsAbsorption";
        case CaseTag::SemAbsorcaoSemD: return "SemAbsorcaoSemD";
        case CaseTag::MaisSimples: return "MaisSimples";
        case CaseTag::ComBC: return "ComBC";
        case CaseTag::Ultimao: return "Ultimao";
        case CaseTag::NonFaithfulNontrivial: return "NonFaithfulNontrivial";
        case CaseTag::TrivialModule: return "TrivialModule";
    }
    return "?";
}

std::variant<ClosedForm, Unsupported> closed_form_count(const SemidirectDescriptor& e, std::uint64_t guard) {
    const LatticeDescriptor& m = e.module;
    const Context& ctx = *m.context();
    const Faithfulness faith = faithfulness(m);
    if (faith == Faithfulness::TrivialAction) return ClosedForm{1, CaseTag::TrivialModule};
    if (faith == Faithfulness::OrderP)
        return ClosedForm{burnside_orbit_count(ctx.class_data().H_p, guard), CaseTag::NonFaithfulNontrivial};

    const Shape s = shape_of(m);
    const std::int64_t b = s.nb, c = s.nc, d = s.nb + s.neb, ee = s.nc + s.nec;
    const bool r_side = s.nb + s.neb >= 1;
    const bool s_side = s.nc + s.nec >= 1;
    const bool quotient_part = s.mq() >= 1;

    // Only the Galois-orbit counts that the case actually uses are computed,
    // so U_p is never built for shapes that do not need it.
    auto h_p = [&] { return burnside_orbit_count(ctx.class_data().H_p, guard); };
    auto h_p2 = [&] { return burnside_orbit_count(ctx.class_data().H_p2, guard); };
    auto u_t = [&] { return orbit_sizes(ctx, t_of(m), guard).u_t; };

    if (!r_side && s_side && !quotient_part) return ClosedForm{h_p2(), CaseTag::SoCs};

    const bool only_z_and_q = !r_side && !s_side && quotient_part;
    if (!ctx.p_is_1_mod_4()) {
        if (int(r_side) + int(s_side) + int(quotient_part) >= 2)
            return ClosedForm{h_p() * h_p2(), CaseTag::CsBsAbsorption};
        if (only_z_and_q) return ClosedForm{h_p() * h_p2() * u_t(), CaseTag::SemAbsorcaoSemD};
        return Unsupported{describe(s)};
    }

    const auto sig = static_cast<std::uint64_t>(sigma(m));
    if (only_z_and_q) return ClosedForm{h_p() * h_p2() * u_t() * sig, CaseTag::MaisSimples};

    const std::int64_t cde = s.mc + s.md + s.me;
    const bool bc_shape = s.a == 0 && s.neb == 0 && s.nec == 0 && s.mb == 0 && s.mf == 0;
    if (bc_shape && ((b >= 1 && (c >= 1 || cde >= 1)) || (b + c >= 1 && cde >= 1)))
        return ClosedForm{h_p() * h_p2() * sig, CaseTag::ComBC};

    if ((ee >= 1 && d >= 1) || (b + c >= 1 && (s.a + d + ee >= 1 || s.mb + s.mf >= 1)))
        return ClosedForm{h_p() * h_p2(), CaseTag::Ultimao};

    return Unsupported{describe(s)};
}

std::optional<std::uint64_t> GenusReport::value() const {
    if (enumeration) return enumeration;
    if (closed_form) return closed_form->value;
    return std::nullopt;
}

GenusReport genus_report(const SemidirectDescriptor& e, std::uint64_t guard) {
    GenusReport rep;
    try {
        auto cf = closed_form_count(e, guard);
        if (auto* v = std::get_if<ClosedForm>(&cf))
            rep.closed_form = *v;
        else
            rep.notes.push_back("closed form unsupported for shape " + std::get<Unsupported>(cf).shape);
    } catch (const SizeGuard& err) {
        rep.notes.push_back(std::string("closed form skipped: ") + err.what());
    }
    try {
        rep.enumeration = orbit_genus_count(e.module, guard);
    } catch (const SizeGuard& err) {
        rep.notes.push_back(std::string("enumeration skipped: ") + err.what());
    }
    if (rep.closed_form && rep.enumeration) {
        rep.agree = rep.closed_form->value == *rep.enumeration;
        if (!*rep.agree)
            rep.notes.push_back("closed form " + std::to_string(rep.closed_form->value) +
                                " disagrees with orbit enumeration " + std::to_string(*rep.enumeration));
    }
    const Faithfulness faith = faithfulness(e.module);
    if (faith == Faithfulness::Faithful) {
        if (auto v = rep.value()) {
            try {
                const OrbitSizes o = orbit_sizes(*e.module.context(), t_of(e.module), guard);
                GenusBounds bnd{o.h_p2, 2 * o.h_p * o.h_p2 * o.u_t, false};
                bnd.holds = bnd.lower <= *v && *v <= bnd.upper;
                if (!bnd.holds)
                    rep.notes.push_back("value " + std::to_string(*v) + " outside the bounds [" +
                                        std::to_string(bnd.lower) + ", " + std::to_string(bnd.upper) + "]");
                rep.bounds = bnd;
            } catch (const SizeGuard& err) {
                rep.notes.push_back(std::string("bounds skipped: ") + err.what());
            }
        }
    } else {
        rep.notes.push_back(std::string("module action is ") + std::string(to_string(faith)));
    }
    return rep;
}

nlohmann::json to_json(const GenusReport& r) {
    nlohmann::json j;
    j["closed_form"] = r.closed_form ? nlohmann::json{{"value", r.closed_form->value},
                                                      {"case_tag", to_string(r.closed_form->tag)}}
                                     : nlohmann::json();
    j["enumeration"] = r.enumeration ? nlohmann::json(*r.enumeration) : nlohmann::json();
    j["agree"] = r.agree ? nlohmann::json(*r.agree) : nlohmann::json();
    j["bounds"] = r.bounds ? nlohmann::json{{"lower", r.bounds->lower},
                                            {"upper", r.bounds->upper},
                                            {"holds", r.bounds->holds}}
                           : nlohmann::json();
    j["notes"] = r.notes;
    return j;
}

}  // namespace zcp2
