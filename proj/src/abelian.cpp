#include "zcp2/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "zcp2/arith.hpp"
#include "zcp2/error.hpp"

namespace zcp2 {

AbGroup::AbGroup(std::vector<std::int64_t> invariant_factors) : factors_(std::move(invariant_factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2)
            throw InvariantViolation("invariant_factors[" + std::to_string(i) + "]", "factor below 2");
        if (i > 0 && factors_[i] % factors_[i - 1] != 0)
            throw InvariantViolation("invariant_factors[" + std::to_string(i) + "]",
                                     "does not divide-chain with the previous factor");
    }
}

std::uint64_t AbGroup::order() const noexcept {
    std::uint64_t n = 1;
    for (auto f : factors_) n *= static_cast<std::uint64_t>(f);
    return n;
}

bool AbGroup::contains(const GroupElement& x) const noexcept {
    if (x.exps.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (x.exps[i] < 0 || x.exps[i] >= factors_[i]) return false;
    return true;
}

std::uint64_t AbGroup::encode(const GroupElement& x) const {
    if (!contains(x)) throw std::invalid_argument("encode: element not in group");
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        code = code * static_cast<std::uint64_t>(factors_[i]) + static_cast<std::uint64_t>(x.exps[i]);
    return code;
}

GroupElement AbGroup::decode(std::uint64_t code) const {
    GroupElement x{std::vector<std::int64_t>(factors_.size(), 0)};
    for (std::size_t i = factors_.size(); i-- > 0;) {
        const auto f = static_cast<std::uint64_t>(factors_[i]);
        x.exps[i] = static_cast<std::int64_t>(code % f);
        code /= f;
    }
    return x;
}

GroupElement element_add(const AbGroup& g, const GroupElement& x, const GroupElement& y) {
    if (x.exps.size() != g.rank() || y.exps.size() != g.rank())
        throw std::invalid_argument("element_add: dimension mismatch");
    GroupElement z{std::vector<std::int64_t>(g.rank())};
    for (std::size_t i = 0; i < g.rank(); ++i)
        z.exps[i] = arith::mod(x.exps[i] + y.exps[i], g.invariant_factors()[i]);
    return z;
}

GroupElement element_neg(const AbGroup& g, const GroupElement& x) {
    if (x.exps.size() != g.rank()) throw std::invalid_argument("element_neg: dimension mismatch");
    GroupElement z{std::vector<std::int64_t>(g.rank())};
    for (std::size_t i = 0; i < g.rank(); ++i) z.exps[i] = arith::mod(-x.exps[i], g.invariant_factors()[i]);
    return z;
}

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

GroupElement apply_matrix(const AbGroup& g, const Matrix& a, const GroupElement& x) {
    const auto& f = g.invariant_factors();
    GroupElement y{std::vector<std::int64_t>(g.rank(), 0)};
    for (std::size_t i = 0; i < g.rank(); ++i) {
        __int128 s = 0;
        for (std::size_t j = 0; j < g.rank(); ++j) s += (__int128)a[i][j] * x.exps[j];
        y.exps[i] = arith::mod(static_cast<std::int64_t>(s % f[i]), f[i]);
    }
    return y;
}

// Composition of endomorphisms given by their matrices: (a o b).
Matrix compose(const AbGroup& g, const Matrix& a, const Matrix& b) {
    const std::size_t n = g.rank();
    Matrix c(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        GroupElement col{std::vector<std::int64_t>(n)};
        for (std::size_t i = 0; i < n; ++i) col.exps[i] = b[i][j];
        const GroupElement img = apply_matrix(g, a, col);
        for (std::size_t i = 0; i < n; ++i) c[i][j] = img.exps[i];
    }
    return c;
}

Matrix identity_matrix(std::size_t n) {
    Matrix id(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

Matrix matrix_power(const AbGroup& g, Matrix a, std::int64_t e) {
    Matrix r = identity_matrix(g.rank());
    while (e > 0) {
        if (e & 1) r = compose(g, a, r);
        a = compose(g, a, a);
        e >>= 1;
    }
    return r;
}

}  // namespace

CyclicAction::CyclicAction(AbGroup target, std::int64_t modulus, std::int64_t generator_residue,
                           std::vector<std::vector<std::int64_t>> generator_matrix)
    : target_(std::move(target)), modulus_(modulus), matrix_(std::move(generator_matrix)) {
    if (modulus_ < 2) throw InvariantViolation("modulus", "must be at least 2");
    acting_order_ = arith::totient(modulus_);
    generator_residue_ = arith::mod(generator_residue, modulus_);
    if (std::gcd(generator_residue_, modulus_) != 1)
        throw InvariantViolation("generator_residue", "not a unit modulo " + std::to_string(modulus_));
    if (arith::mult_order(generator_residue_, modulus_) != acting_order_)
        throw InvariantViolation("generator_residue",
                                 std::to_string(generator_residue_) + " does not generate (Z/" +
                                     std::to_string(modulus_) + ")^*");

    const std::size_t n = target_.rank();
    if (matrix_.size() != n)
        throw InvariantViolation("generator_matrix", "expected " + std::to_string(n) + " rows");
    const auto& f = target_.invariant_factors();
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix_[i].size() != n)
            throw InvariantViolation("generator_matrix[" + std::to_string(i) + "]",
                                     "expected " + std::to_string(n) + " columns");
        for (std::size_t j = 0; j < n; ++j) {
            matrix_[i][j] = arith::mod(matrix_[i][j], f[i]);
            // e_j has order f[j], so its image must be killed by f[j].
            if ((__int128)matrix_[i][j] * f[j] % f[i] != 0)
                throw InvariantViolation("generator_matrix[" + std::to_string(i) + "][" +
                                             std::to_string(j) + "]",
                                         "does not define a homomorphism");
        }
    }
    if (n > 0 && target_.order() <= kDefaultEnumerationGuard) {
        std::vector<char> hit(target_.order(), 0);
        for (std::uint64_t c = 0; c < target_.order(); ++c) {
            const std::uint64_t img = target_.encode(apply_matrix(target_, matrix_, target_.decode(c)));
            if (hit[img]) throw InvariantViolation("generator_matrix", "singular: not an automorphism");
            hit[img] = 1;
        }
    }
    if (matrix_power(target_, matrix_, acting_order_) != identity_matrix(n))
        throw InvariantViolation("generator_matrix",
                                 "its " + std::to_string(acting_order_) +
                                     "-th power is not the identity");
}

CyclicAction CyclicAction::trivial(std::int64_t modulus) {
    return CyclicAction(AbGroup{}, modulus, arith::primitive_root(modulus), {});
}

GroupElement CyclicAction::apply_generator(const GroupElement& x) const {
    if (!target_.contains(x)) throw std::invalid_argument("apply_generator: element not in group");
    return apply_matrix(target_, matrix_, x);
}

std::int64_t CyclicAction::discrete_log(std::int64_t k) const {
    const std::int64_t kk = arith::mod(k, modulus_);
    if (std::gcd(kk, modulus_) != 1)
        throw std::invalid_argument("residue " + std::to_string(k) + " is not a unit modulo " +
                                    std::to_string(modulus_));
    std::int64_t x = 1;
    for (std::int64_t d = 0; d < acting_order_; ++d) {
        if (x == kk) return d;
        x = x * generator_residue_ % modulus_;
    }
    throw std::logic_error("discrete_log: residue outside the cyclic group");
}

GroupElement apply_action(const CyclicAction& a, std::int64_t k, const GroupElement& x) {
    if (!a.target().contains(x)) throw std::invalid_argument("apply_action: element not in group");
    const std::int64_t d = a.discrete_log(k);
    if (a.target().is_trivial() || d == 0) return x;
    return apply_matrix(a.target(), matrix_power(a.target(), a.generator_matrix(), d), x);
}

std::vector<std::uint32_t> CyclicAction::permutation(std::int64_t k, std::uint64_t guard) const {
    const std::uint64_t n = target_.order();
    if (n > guard)
        throw SizeGuard("group of order " + std::to_string(n) + " exceeds enumeration guard " +
                        std::to_string(guard));
    const std::int64_t d = discrete_log(k);
    const Matrix a = matrix_power(target_, matrix_, d);
    std::vector<std::uint32_t> perm(n);
    for (std::uint64_t c = 0; c < n; ++c)
        perm[c] = static_cast<std::uint32_t>(target_.encode(apply_matrix(target_, a, target_.decode(c))));
    return perm;
}

std::vector<std::vector<GroupElement>> orbits(const CyclicAction& a, std::uint64_t guard) {
    const auto perm = a.permutation(a.generator_residue(), guard);
    std::vector<char> seen(perm.size(), 0);
    std::vector<std::vector<GroupElement>> out;
    for (std::uint64_t c = 0; c < perm.size(); ++c) {
        if (seen[c]) continue;
        std::vector<GroupElement> orbit;
        for (std::uint64_t x = c; !seen[x]; x = perm[x]) {
            seen[x] = 1;
            orbit.push_back(a.target().decode(x));
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    const std::vector<std::vector<std::uint32_t>> perms{perm};
    if (burnside_diagonal_orbits(perms, static_cast<std::uint64_t>(a.acting_order())) != out.size())
        throw std::logic_error("orbits: enumeration disagrees with Burnside count");
    return out;
}

std::uint64_t burnside_orbit_count(const CyclicAction& a, std::uint64_t guard) {
    const std::vector<std::vector<std::uint32_t>> perms{a.permutation(a.generator_residue(), guard)};
    return burnside_diagonal_orbits(perms, static_cast<std::uint64_t>(a.acting_order()));
}

std::uint64_t count_diagonal_orbits(std::span<const std::vector<std::uint32_t>> generator_perms,
                                    std::uint64_t guard) {
    std::uint64_t total = 1;
    for (const auto& p : generator_perms) {
        total *= p.size();
        if (total > guard)
            throw SizeGuard("product of orbit spaces exceeds enumeration guard " + std::to_string(guard));
    }
    const std::size_t k = generator_perms.size();
    auto step = [&](std::uint64_t code) {
        // Mixed radix with factor 0 most significant.
        std::uint64_t out = 0;
        std::uint64_t scale = 1;
        for (std::size_t i = k; i-- > 0;) {
            const auto n = generator_perms[i].size();
            out += scale * generator_perms[i][code % n];
            code /= n;
            scale *= n;
        }
        return out;
    };
    std::vector<char> seen(total, 0);
    std::uint64_t count = 0;
    for (std::uint64_t c = 0; c < total; ++c) {
        if (seen[c]) continue;
        ++count;
        for (std::uint64_t x = c; !seen[x]; x = step(x)) seen[x] = 1;
    }
    return count;
}

std::uint64_t burnside_diagonal_orbits(std::span<const std::vector<std::uint32_t>> generator_perms,
                                       std::uint64_t acting_order) {
    // cycle_len[i][x]: length of the cycle of x under factor i's generator.
    std::vector<std::vector<std::uint64_t>> cycle_len;
    for (const auto& perm : generator_perms) {
        std::vector<std::uint64_t> len(perm.size(), 0);
        for (std::size_t c = 0; c < perm.size(); ++c) {
            if (len[c]) continue;
            std::vector<std::size_t> cyc;
            for (std::size_t x = c; !len[x] && (cyc.empty() || x != c); x = perm[x]) {
                cyc.push_back(x);
                len[x] = 1;
            }
            for (auto x : cyc) len[x] = cyc.size();
        }
        for (auto l : len)
            if (acting_order % l != 0)
                throw std::invalid_argument("burnside: cycle length does not divide the acting order");
        cycle_len.push_back(std::move(len));
    }
    __int128 sum = 0;
    for (std::uint64_t d = 0; d < acting_order; ++d) {
        __int128 fixed = 1;
        for (const auto& len : cycle_len) {
            std::uint64_t f = 0;
            for (auto l : len)
                if (d % l == 0) ++f;
            fixed *= f;
        }
        sum += fixed;
    }
    if (sum % acting_order != 0) throw std::logic_error("burnside: non-integral orbit count");
    return static_cast<std::uint64_t>(sum / acting_order);
}

std::uint64_t diagonal_orbits(std::int64_t driver_modulus, std::span<const CyclicAction> actions,
                              std::span<const std::uint64_t> trivial_sizes, std::uint64_t guard) {
    const std::int64_t gen = arith::primitive_root(driver_modulus);
    std::vector<std::vector<std::uint32_t>> perms;
    for (const auto& a : actions) perms.push_back(a.permutation(gen, guard));
    for (auto s : trivial_sizes) {
        std::vector<std::uint32_t> id(s);
        std::iota(id.begin(), id.end(), 0u);
        perms.push_back(std::move(id));
    }
    const std::uint64_t direct = count_diagonal_orbits(perms, guard);
    if (direct != burnside_diagonal_orbits(perms, static_cast<std::uint64_t>(arith::totient(driver_modulus))))
        throw std::logic_error("diagonal_orbits: enumeration disagrees with Burnside count");
    return direct;
}

std::string to_string(const GroupElement& x) {
    if (x.exps.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < x.exps.size(); ++i) os << (i ? ":" : "") << x.exps[i];
    return os.str();
}

}  // namespace zcp2
