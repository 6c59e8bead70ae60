#include "zcp2/galois.hpp"

#include <stdexcept>

#include "zcp2/arith.hpp"
#include "zcp2/error.hpp"
#include "zcp2/iso.hpp"

namespace zcp2 {

GaloisElement::GaloisElement(int p, std::int64_t k) : p_(p), k_(arith::mod(k, std::int64_t{p} * p)) {
    if (k_ % p == 0) throw std::invalid_argument("Galois element k = " + std::to_string(k) + " is divisible by p");
}

std::vector<GaloisElement> GaloisElement::all(int p) {
    std::vector<GaloisElement> out;
    for (std::int64_t k = 1; k < std::int64_t{p} * p; ++k)
        if (k % p != 0) out.emplace_back(p, k);
    return out;
}

GaloisElement operator*(const GaloisElement& x, const GaloisElement& y) {
    if (x.p_ != y.p_) throw std::invalid_argument("Galois elements over different primes");
    return GaloisElement(x.p_, x.k_ * y.k_);
}

GaloisElement GaloisElement::inverse() const {
    return GaloisElement(p_, arith::invmod(k_, std::int64_t{p_} * p_));
}

LatticeDescriptor twist(const LatticeDescriptor& d, const GaloisElement& beta) {
    const Context& ctx = *d.context();
    if (beta.p() != ctx.p()) throw std::invalid_argument("twist: Galois element over a different prime");
    const std::int64_t k = beta.k();
    std::vector<Summand> out;
    out.reserve(d.summands().size());
    for (Summand s : d.summands()) {
        if (carries_R_class(s.type)) s.b = apply_action(ctx.class_data().H_p, k, s.b);
        if (carries_S_class(s.type)) s.c = apply_action(ctx.class_data().H_p2, k, s.c);
        if (s.u) s.u = ctx.U(s.u->m()).canonical(galois_on_unit(k, *s.u));
        out.push_back(std::move(s));
    }
    return LatticeDescriptor(d.context(), std::move(out));
}

std::optional<GaloisElement> twisted_isomorphic(const LatticeDescriptor& x, const LatticeDescriptor& y) {
    if (x.context() != y.context()) throw MismatchedContext("twisted_isomorphic: different contexts");
    if (!same_genus(x, y)) return std::nullopt;
    for (const GaloisElement& beta : GaloisElement::all(x.p()))
        if (isomorphic(x, twist(y, beta))) return beta;
    return std::nullopt;
}

}  // namespace zcp2
