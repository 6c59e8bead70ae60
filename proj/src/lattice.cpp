#include "zcp2/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "zcp2/arith.hpp"
#include "zcp2/error.hpp"

namespace zcp2 {

// ---- Context --------------------------------------------------------------

Context::Context(ClassData data) : data_(std::move(data)) {
    if (data_.p % 2 == 1) n0_ = arith::smallest_nonresidue(data_.p);
    quotients_.resize(static_cast<std::size_t>(data_.p) + 1);
}

std::shared_ptr<const Context> Context::make(ClassData data) {
    return std::shared_ptr<const Context>(new Context(std::move(data)));
}

const UnitQuotient& Context::U(int m) const {
    if (m < 0 || m > p()) throw std::out_of_range("U_m: m must lie in [0, p]");
    std::lock_guard lock(mutex_);
    auto& slot = quotients_[static_cast<std::size_t>(m)];
    if (!slot)
        slot = std::make_shared<const UnitQuotient>(
            compute_Um(p(), m, data_.extra_R_unit_gens, data_.extra_ES_unit_gens));
    return *slot;
}

// ---- Summands -------------------------------------------------------------

std::string_view to_string(SummandType t) {
    switch (t) {
        case SummandType::Z: return "Z";
        case SummandType::IdealR: return "b";
        case SummandType::IdealS: return "c";
        case SummandType::ExtB: return "Eb";
        case SummandType::ExtC: return "Ec";
        case SummandType::B: return "B";
        case SummandType::C: return "C";
        case SummandType::D: return "D";
        case SummandType::E: return "E";
        case SummandType::F: return "F";
    }
    return "?";
}

std::string_view to_string(Faithfulness f) {
    switch (f) {
        case Faithfulness::TrivialAction: return "TrivialAction";
        case Faithfulness::OrderP: return "OrderP";
        case Faithfulness::Faithful: return "Faithful";
    }
    return "?";
}

int unit_length(SummandType t, int r, int p) {
    if (!is_extension_type(t)) throw std::invalid_argument("unit_length: not an extension type");
    return t == SummandType::B ? p - r : p - 1 - r;
}

std::pair<int, int> r_range(SummandType t, int p) {
    switch (t) {
        case SummandType::B: return {0, p - 1};
        case SummandType::C:
        case SummandType::D: return {1, p - 2};
        case SummandType::E:
        case SummandType::F: return {0, p - 2};
        default: return {0, -1};
    }
}

std::strong_ordering operator<=>(const Summand& x, const Summand& y) {
    if (auto c = x.type <=> y.type; c != 0) return c;
    if (auto c = x.b <=> y.b; c != 0) return c;
    if (auto c = x.c <=> y.c; c != 0) return c;
    if (auto c = x.r <=> y.r; c != 0) return c;
    if (x.u.has_value() != y.u.has_value()) return x.u.has_value() ? std::strong_ordering::greater
                                                                   : std::strong_ordering::less;
    if (x.u) return *x.u <=> *y.u;
    return std::strong_ordering::equal;
}

namespace {

void validate(const Summand& s, const Context& ctx) {
    const int p = ctx.p();
    const std::string where = std::string(to_string(s.type)) + " summand";
    const GroupElement zero_b = ctx.H_p().zero();
    const GroupElement zero_c = ctx.H_p2().zero();
    if (carries_R_class(s.type) ? !ctx.H_p().contains(s.b) : s.b != zero_b)
        throw InvariantViolation(where, "R-class " + to_string(s.b) + " is not an element of H(p)");
    if (carries_S_class(s.type) ? !ctx.H_p2().contains(s.c) : s.c != zero_c)
        throw InvariantViolation(where, "S-class " + to_string(s.c) + " is not an element of H(p^2)");
    if (!is_extension_type(s.type)) {
        if (s.r != 0 || s.u) throw InvariantViolation(where, "carries no (r, u) data");
        return;
    }
    if (s.type == SummandType::D && !ctx.p_is_1_mod_4())
        throw InvariantViolation(where, "type D exists only when p = 1 mod 4");
    const auto [lo, hi] = r_range(s.type, p);
    if (s.r < lo || s.r > hi)
        throw InvariantViolation(where, "r = " + std::to_string(s.r) + " outside [" + std::to_string(lo) +
                                            ", " + std::to_string(hi) + "]");
    if (!s.u) throw InvariantViolation(where, "missing unit");
    const int m = unit_length(s.type, s.r, p);
    if (s.u->p() != p || s.u->m() != m)
        throw InvariantViolation(where, "unit must live in F_p[l]/(l^" + std::to_string(m) + ")");
    if (!ctx.U(m).is_canonical(*s.u))
        throw InvariantViolation(where, "unit " + s.u->to_string() + " is not a canonical representative");
}

}  // namespace

LatticeDescriptor::LatticeDescriptor(ContextPtr ctx, std::vector<Summand> summands)
    : ctx_(std::move(ctx)), summands_(std::move(summands)) {
    if (!ctx_) throw std::invalid_argument("LatticeDescriptor: null context");
    for (const auto& s : summands_) validate(s, *ctx_);
    std::sort(summands_.begin(), summands_.end());
}

std::size_t LatticeDescriptor::count(SummandType t) const {
    return static_cast<std::size_t>(
        std::count_if(summands_.begin(), summands_.end(), [t](const Summand& s) { return s.type == t; }));
}

LatticeDescriptor direct_sum(const LatticeDescriptor& x, const LatticeDescriptor& y) {
    if (x.context() != y.context()) throw MismatchedContext("direct_sum: descriptors over different contexts");
    std::vector<Summand> all = x.summands();
    all.insert(all.end(), y.summands().begin(), y.summands().end());
    return LatticeDescriptor(x.context(), std::move(all));
}

// ---- Invariant data -------------------------------------------------------

std::int64_t rank(const Summand& s, int p) {
    const std::int64_t pp = std::int64_t{p} * p;
    switch (s.type) {
        case SummandType::Z: return 1;
        case SummandType::IdealR: return p - 1;
        case SummandType::IdealS: return pp - p;
        case SummandType::ExtB: return p;
        case SummandType::ExtC: return pp - p + 1;
        case SummandType::B: return pp;
        case SummandType::C:
        case SummandType::D: return pp + 1;
        case SummandType::E: return pp - 1;
        case SummandType::F: return pp;
    }
    return 0;
}

std::int64_t rank(const LatticeDescriptor& d) {
    std::int64_t n = 0;
    for (const auto& s : d.summands()) n += rank(s, d.p());
    return n;
}

GenusVector genus_vector(const LatticeDescriptor& d) {
    const int p = d.p();
    GenusVector g;
    g.beta.assign(static_cast<std::size_t>(p), 0);
    g.gamma.assign(static_cast<std::size_t>(std::max(p - 2, 0)), 0);
    g.delta.assign(static_cast<std::size_t>(std::max(p - 2, 0)), 0);
    g.epsilon.assign(static_cast<std::size_t>(p - 1), 0);
    g.eta.assign(static_cast<std::size_t>(p - 1), 0);
    std::int64_t ext_b = 0, ext_c = 0;
    for (const auto& s : d.summands()) {
        const auto r = static_cast<std::size_t>(s.r);
        switch (s.type) {
            case SummandType::Z: ++g.a; break;
            case SummandType::IdealR: ++g.b; break;
            case SummandType::IdealS: ++g.c; break;
            case SummandType::ExtB: ++ext_b; break;
            case SummandType::ExtC: ++ext_c; break;
            case SummandType::B: ++g.beta[r]; break;
            case SummandType::C: ++g.gamma[r - 1]; break;
            case SummandType::D: ++g.delta[r - 1]; break;
            case SummandType::E: ++g.epsilon[r]; break;
            case SummandType::F: ++g.eta[r]; break;
        }
    }
    g.d = g.b + ext_b;
    g.e = g.c + ext_c;
    return g;
}

PolyMod u0(const LatticeDescriptor& d) {
    const int p = d.p();
    PolyMod prod = PolyMod::one(p, p);
    for (const auto& s : d.summands()) {
        if (!is_extension_type(s.type)) continue;
        prod = poly_mul(prod, s.u->lifted(p));
        if (s.type == SummandType::D) prod = poly_mul(prod, PolyMod::constant(p, p, d.context()->n0()));
    }
    return prod;
}

int r1(const LatticeDescriptor& d) {
    int r = 0;
    for (const auto& s : d.summands())
        if (s.type == SummandType::B) r = std::max(r, s.r);
    return r;
}

int r2(const LatticeDescriptor& d) {
    int r = 0;
    for (const auto& s : d.summands())
        if (is_extension_type(s.type) && s.type != SummandType::B) r = std::max(r, s.r);
    return r;
}

int t_of(const LatticeDescriptor& d) {
    const int p = d.p();
    bool any_b = false;
    bool special = true;
    for (const auto& s : d.summands()) {
        if (s.type == SummandType::B && s.r == 0)
            any_b = true;
        else if (s.type != SummandType::Z)
            special = false;
    }
    if (special && any_b) return p;
    return p - 1 - std::max(r2(d), r1(d) - 1);
}

int sigma(const LatticeDescriptor& d) {
    if (!d.context()->p_is_1_mod_4()) return 1;
    bool has_cd = false;
    for (const auto& s : d.summands()) {
        switch (s.type) {
            case SummandType::C:
            case SummandType::D: has_cd = true; break;
            case SummandType::Z:
            case SummandType::ExtB:
            case SummandType::ExtC:
            case SummandType::B:
            case SummandType::F: return 1;
            default: break;
        }
    }
    return has_cd ? 2 : 1;
}

Faithfulness faithfulness(const LatticeDescriptor& d) {
    bool order_p = false;
    for (const auto& s : d.summands()) {
        if (carries_S_class(s.type)) return Faithfulness::Faithful;
        if (s.type != SummandType::Z) order_p = true;
    }
    return order_p ? Faithfulness::OrderP : Faithfulness::TrivialAction;
}

IdealClasses ideal_classes(const LatticeDescriptor& d) {
    const Context& ctx = *d.context();
    IdealClasses ic{ctx.H_p().zero(), ctx.H_p2().zero()};
    for (const auto& s : d.summands()) {
        if (carries_R_class(s.type)) ic.R_class = element_add(ctx.H_p(), ic.R_class, s.b);
        if (carries_S_class(s.type)) ic.S_class = element_add(ctx.H_p2(), ic.S_class, s.c);
    }
    return ic;
}

// ---- Rendering ------------------------------------------------------------

std::string render(const Summand& s) {
    std::ostringstream os;
    os << to_string(s.type);
    switch (s.type) {
        case SummandType::Z: break;
        case SummandType::IdealR:
        case SummandType::ExtB: os << '(' << to_string(s.b) << ')'; break;
        case SummandType::IdealS:
        case SummandType::ExtC: os << '(' << to_string(s.c) << ')'; break;
        default:
            os << '(' << to_string(s.b) << ',' << to_string(s.c) << ';' << s.r << ',' << s.u->to_string() << ')';
    }
    return os.str();
}

std::string render(const LatticeDescriptor& d) {
    if (d.is_zero()) return "0";
    std::ostringstream os;
    const auto& v = d.summands();
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if (i > 0) os << " + ";
        if (j - i > 1) os << (j - i) << '*';
        os << render(v[i]);
        i = j;
    }
    return os.str();
}

nlohmann::json to_json(const PolyMod& u) { return std::vector<int>(u.coeffs().begin(), u.coeffs().end()); }

nlohmann::json to_json(const Summand& s) {
    nlohmann::json j{{"type", to_string(s.type)}};
    if (carries_R_class(s.type)) j["b"] = s.b.exps;
    if (carries_S_class(s.type)) j["c"] = s.c.exps;
    if (is_extension_type(s.type)) {
        j["r"] = s.r;
        j["u"] = to_json(*s.u);
    }
    return j;
}

nlohmann::json to_json(const LatticeDescriptor& d) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : d.summands()) arr.push_back(to_json(s));
    return {{"p", d.p()}, {"summands", arr}, {"text", render(d)}};
}

nlohmann::json to_json(const GenusVector& g) {
    return {{"a", g.a},         {"b", g.b},         {"c", g.c},
            {"d", g.d},         {"e", g.e},         {"beta", g.beta},
            {"gamma", g.gamma}, {"delta", g.delta}, {"epsilon", g.epsilon},
            {"eta", g.eta}};
}

}  // namespace zcp2
