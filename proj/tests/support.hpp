#pragma once
// Descriptor generators shared by the test binaries.

#include <random>
#include <vector>

#include "zcp2/lattice.hpp"

namespace zcp2::testing {

inline constexpr SummandType kAllTypes[] = {SummandType::Z, SummandType::IdealR, SummandType::IdealS,
                                            SummandType::ExtB, SummandType::ExtC, SummandType::B,
                                            SummandType::C, SummandType::D, SummandType::E, SummandType::F};

inline bool type_exists(SummandType t, const Context& ctx) {
    if (t == SummandType::D && !ctx.p_is_1_mod_4()) return false;
    if (!is_extension_type(t)) return true;
    const auto [lo, hi] = r_range(t, ctx.p());
    return lo <= hi;
}

/// Every indecomposable with trivial ideal classes: one per (type, r, canonical u).
inline std::vector<Summand> indecomposables(const Context& ctx) {
    std::vector<Summand> out;
    for (SummandType t : kAllTypes) {
        if (!type_exists(t, ctx)) continue;
        Summand s{t, ctx.H_p().zero(), ctx.H_p2().zero(), 0, std::nullopt};
        if (!is_extension_type(t)) {
            out.push_back(s);
            continue;
        }
        const auto [lo, hi] = r_range(t, ctx.p());
        for (int r = lo; r <= hi; ++r)
            for (const auto& u : ctx.U(unit_length(t, r, ctx.p())).reps()) {
                s.r = r;
                s.u = u;
                out.push_back(s);
            }
    }
    return out;
}

inline GroupElement random_element(const AbGroup& g, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> pick(0, g.order() - 1);
    return g.decode(pick(rng));
}

/// Random summand, with random ideal classes where the type carries them.
inline Summand random_summand(const Context& ctx, std::mt19937_64& rng) {
    std::vector<SummandType> types;
    for (SummandType t : kAllTypes)
        if (type_exists(t, ctx)) types.push_back(t);
    const SummandType t = types[std::uniform_int_distribution<std::size_t>(0, types.size() - 1)(rng)];
    Summand s{t, ctx.H_p().zero(), ctx.H_p2().zero(), 0, std::nullopt};
    if (carries_R_class(t)) s.b = random_element(ctx.H_p(), rng);
    if (carries_S_class(t)) s.c = random_element(ctx.H_p2(), rng);
    if (is_extension_type(t)) {
        const auto [lo, hi] = r_range(t, ctx.p());
        s.r = std::uniform_int_distribution<int>(lo, hi)(rng);
        const auto& reps = ctx.U(unit_length(t, s.r, ctx.p())).reps();
        s.u = reps[std::uniform_int_distribution<std::size_t>(0, reps.size() - 1)(rng)];
    }
    return s;
}

inline LatticeDescriptor random_descriptor(const ContextPtr& ctx, std::mt19937_64& rng, int max_summands = 4) {
    const int n = std::uniform_int_distribution<int>(1, max_summands)(rng);
    std::vector<Summand> s;
    for (int i = 0; i < n; ++i) s.push_back(random_summand(*ctx, rng));
    return LatticeDescriptor(ctx, std::move(s));
}

}  // namespace zcp2::testing
