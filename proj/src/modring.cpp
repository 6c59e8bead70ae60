#include "zcp2/modring.hpp"

#include <numeric>
#include <sstream>

#include "zcp2/arith.hpp"
#include "zcp2/error.hpp"

namespace zcp2 {

namespace {

void check_prime(int p) {
    if (!arith::is_prime(p)) throw UnsupportedPrime("not a prime: " + std::to_string(p));
}

void check_same_ring(const PolyMod& a, const PolyMod& b) {
    if (a.p() != b.p() || a.m() != b.m())
        throw MismatchedRing("F_" + std::to_string(a.p()) + "[l]/(l^" + std::to_string(a.m()) +
                             ") vs F_" + std::to_string(b.p()) + "[l]/(l^" +
                             std::to_string(b.m()) + ")");
}

std::uint64_t ring_size(int p, int m) {
    std::uint64_t n = 1;
    for (int j = 0; j < m; ++j) {
        n *= static_cast<std::uint64_t>(p);
        if (n > kMaxRingSize)
            throw SizeGuard("F_" + std::to_string(p) + "[l]/(l^" + std::to_string(m) +
                            ") is too large to tabulate");
    }
    return n;
}

}  // namespace

PolyMod::PolyMod(int p, int m, std::vector<int> coeffs) : p_(p) {
    if (p < 2) throw UnsupportedPrime("modulus must be a prime");
    if (m < 0) throw std::invalid_argument("PolyMod: negative truncation degree");
    coeffs.resize(static_cast<std::size_t>(m), 0);
    for (int& c : coeffs) c = static_cast<int>(arith::mod(c, p));
    coeffs_ = std::move(coeffs);
}

PolyMod PolyMod::one(int p, int m) { return constant(p, m, 1); }

PolyMod PolyMod::constant(int p, int m, std::int64_t c) {
    std::vector<int> v(static_cast<std::size_t>(m), 0);
    if (m > 0) v[0] = static_cast<int>(arith::mod(c, p));
    return PolyMod(p, m, std::move(v));
}

PolyMod PolyMod::lambda_power(int p, int m, int r) {
    std::vector<int> v(static_cast<std::size_t>(m), 0);
    if (r < m) v[static_cast<std::size_t>(r)] = 1;
    return PolyMod(p, m, std::move(v));
}

PolyMod PolyMod::decode(int p, int m, std::uint64_t code) {
    std::vector<int> v(static_cast<std::size_t>(m), 0);
    for (int j = m - 1; j >= 0; --j) {
        v[static_cast<std::size_t>(j)] = static_cast<int>(code % static_cast<std::uint64_t>(p));
        code /= static_cast<std::uint64_t>(p);
    }
    return PolyMod(p, m, std::move(v));
}

bool PolyMod::is_zero() const noexcept {
    for (int c : coeffs_)
        if (c != 0) return false;
    return true;
}

PolyMod PolyMod::truncated(int k) const {
    if (k > m()) throw MismatchedRing("truncated: target degree exceeds source");
    return PolyMod(p_, k, std::vector<int>(coeffs_.begin(), coeffs_.begin() + k));
}

PolyMod PolyMod::lifted(int k) const {
    if (k < m()) throw MismatchedRing("lifted: target degree below source");
    return PolyMod(p_, k, coeffs_);
}

std::uint64_t PolyMod::encode() const noexcept {
    std::uint64_t code = 0;
    for (int c : coeffs_) code = code * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(c);
    return code;
}

std::string PolyMod::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j < m(); ++j) {
        const int c = coeffs_[static_cast<std::size_t>(j)];
        if (c == 0) continue;
        if (!first) os << '+';
        first = false;
        if (j == 0) {
            os << c;
            continue;
        }
        if (c != 1) os << c;
        os << 'l';
        if (j > 1) os << '^' << j;
    }
    if (first) os << '0';
    return os.str();
}

PolyMod poly_mul(const PolyMod& a, const PolyMod& b) {
    check_same_ring(a, b);
    const int m = a.m();
    const int p = a.p();
    std::vector<std::int64_t> acc(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j < m; ++j) acc[static_cast<std::size_t>(i + j)] += std::int64_t{a[i]} * b[j];
    }
    std::vector<int> out(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) out[static_cast<std::size_t>(k)] = static_cast<int>(acc[static_cast<std::size_t>(k)] % p);
    return PolyMod(p, m, std::move(out));
}

PolyMod poly_add(const PolyMod& a, const PolyMod& b) {
    check_same_ring(a, b);
    std::vector<int> out(static_cast<std::size_t>(a.m()));
    for (int k = 0; k < a.m(); ++k) out[static_cast<std::size_t>(k)] = a[k] + b[k];
    return PolyMod(a.p(), a.m(), std::move(out));
}

PolyMod poly_pow(const PolyMod& a, std::uint64_t e) {
    PolyMod result = PolyMod::one(a.p(), a.m());
    PolyMod base = a;
    while (e > 0) {
        if (e & 1) result = poly_mul(result, base);
        base = poly_mul(base, base);
        e >>= 1;
    }
    return result;
}

PolyMod poly_inv(const PolyMod& a) {
    if (!a.is_unit()) throw NonUnit("element " + a.to_string() + " is not a unit");
    // Solve a * r = 1 degree by degree.
    const int p = a.p();
    const int m = a.m();
    const std::int64_t c0inv = arith::invmod(a[0], p);
    std::vector<int> r(static_cast<std::size_t>(m), 0);
    for (int k = 0; k < m; ++k) {
        std::int64_t s = (k == 0) ? 1 : 0;
        for (int j = 1; j <= k; ++j) s -= std::int64_t{a[j]} * r[static_cast<std::size_t>(k - j)];
        r[static_cast<std::size_t>(k)] = static_cast<int>(arith::mod(s * c0inv, p));
    }
    return PolyMod(p, m, std::move(r));
}

std::uint64_t unit_group_order(int p, int m) {
    if (m == 0) return 1;
    std::uint64_t n = static_cast<std::uint64_t>(p - 1);
    for (int j = 1; j < m; ++j) n *= static_cast<std::uint64_t>(p);
    return n;
}

std::vector<PolyMod> unit_group(int p, int m) {
    check_prime(p);
    if (m < 1) throw std::invalid_argument("unit_group: m must be at least 1");
    const std::uint64_t n = ring_size(p, m);
    const std::uint64_t block = n / static_cast<std::uint64_t>(p);  // codes sharing c0
    std::vector<PolyMod> units;
    units.reserve(unit_group_order(p, m));
    for (std::uint64_t code = block; code < n; ++code) units.push_back(PolyMod::decode(p, m, code));
    return units;
}

bool UnitSubgroup::contains(const PolyMod& x) const {
    if (x.p() != p_ || x.m() != m_) return false;
    return member_[x.encode()] != 0;
}

UnitSubgroup subgroup_closure(int p, int m, std::span<const PolyMod> gens) {
    check_prime(p);
    UnitSubgroup h;
    h.p_ = p;
    h.m_ = m;
    h.member_.assign(ring_size(p, m), 0);
    const PolyMod one = PolyMod::one(p, m);
    h.elements_.push_back(one);
    h.member_[one.encode()] = 1;
    for (const PolyMod& g : gens) {
        if (g.p() != p || g.m() != m) throw MismatchedRing("generator outside the ambient ring");
        if (!g.is_unit()) throw NonUnit("generator " + g.to_string() + " is not a unit");
        h.generators_.push_back(g);
        if (h.member_[g.encode()]) continue;
        // The group is abelian, so <H, g> is the union of the cosets H g^j.
        const std::size_t base_size = h.elements_.size();
        PolyMod power = g;
        while (!h.member_[power.encode()]) {
            for (std::size_t i = 0; i < base_size; ++i) {
                PolyMod y = poly_mul(h.elements_[i], power);
                h.member_[y.encode()] = 1;
                h.elements_.push_back(std::move(y));
            }
            power = poly_mul(power, g);
        }
    }
    return h;
}

PolyMod cyclotomic_delta(int p, int m, std::int64_t k) {
    const PolyMod x = PolyMod(p, m, {1, 1});
    PolyMod sum(p, m, {});
    PolyMod term = PolyMod::one(p, m);
    for (std::int64_t j = 0; j < k; ++j) {
        sum = poly_add(sum, term);
        term = poly_mul(term, x);
    }
    return sum;
}

namespace {

std::vector<PolyMod> fit_extras(int p, int m, std::span<const PolyMod> extra) {
    std::vector<PolyMod> out;
    for (const PolyMod& e : extra) {
        if (e.p() != p) throw MismatchedRing("extra unit generator over the wrong prime");
        out.push_back(e.m() >= m ? e.truncated(m) : e.lifted(m));
    }
    return out;
}

}  // namespace

UnitSubgroup image_of_R_units(int p, int m, std::span<const PolyMod> extra) {
    check_prime(p);
    if (m < 1 || m > p - 1)
        throw std::out_of_range("image_of_R_units: m must lie in [1, p-1]");
    std::vector<PolyMod> gens;
    gens.push_back(PolyMod::constant(p, m, -1));
    gens.push_back(PolyMod(p, m, {1, 1}));
    for (int l = 2; l <= p - 1; ++l) gens.push_back(cyclotomic_delta(p, m, l));
    for (PolyMod& e : fit_extras(p, m, extra)) gens.push_back(std::move(e));
    return subgroup_closure(p, m, gens);
}

UnitSubgroup image_of_ES_units(int p, std::span<const PolyMod> extra) {
    check_prime(p);
    std::vector<PolyMod> gens;
    gens.push_back(PolyMod::constant(p, p, -1));
    gens.push_back(PolyMod(p, p, {1, 1}));
    for (int l = 2; l < p * p; ++l)
        if (l % p != 0) gens.push_back(cyclotomic_delta(p, p, l));
    for (PolyMod& e : fit_extras(p, p, extra)) gens.push_back(std::move(e));
    return subgroup_closure(p, p, gens);
}

std::size_t UnitQuotient::index_of(const PolyMod& x) const {
    if (x.p() != p_ || x.m() != m_) throw MismatchedRing("unit outside the quotient's ring");
    if (m_ == 0) return 0;
    const std::int32_t c = coset_[x.encode()];
    if (c < 0) throw NonUnit("element " + x.to_string() + " is not a unit");
    return static_cast<std::size_t>(c);
}

bool UnitQuotient::is_canonical(const PolyMod& x) const {
    if (x.p() != p_ || x.m() != m_ || (m_ > 0 && !x.is_unit())) return false;
    return reps_[index_of(x)] == x;
}

std::size_t UnitQuotient::act(std::int64_t k, std::size_t i) const {
    return index_of(galois_on_unit(k, reps_.at(i)));
}

UnitQuotient compute_Um(int p, int m, std::span<const PolyMod> extra_R,
                        std::span<const PolyMod> extra_ES) {
    check_prime(p);
    if (m < 0 || m > p) throw std::out_of_range("compute_Um: m must lie in [0, p]");
    UnitQuotient q;
    q.p_ = p;
    q.m_ = m;
    if (m == 0) {
        q.reps_.push_back(PolyMod(p, 0, {}));
        q.coset_.assign(1, 0);
        return q;
    }
    auto sub = std::make_shared<UnitSubgroup>(m == p ? image_of_ES_units(p, extra_ES)
                                                     : image_of_R_units(p, m, extra_R));
    const std::uint64_t n = ring_size(p, m);
    q.coset_.assign(n, -1);
    const std::uint64_t block = n / static_cast<std::uint64_t>(p);
    // Codes with constant term 1 occupy [block, 2 block) in lexicographic order,
    // so the first unlabeled code met is the canonical representative of its coset.
    for (std::uint64_t code = block; code < 2 * block; ++code) {
        if (q.coset_[code] >= 0) continue;
        const auto id = static_cast<std::int32_t>(q.reps_.size());
        PolyMod rep = PolyMod::decode(p, m, code);
        for (const PolyMod& h : sub->elements()) q.coset_[poly_mul(rep, h).encode()] = id;
        q.reps_.push_back(std::move(rep));
    }
    for (std::uint64_t code = block; code < n; ++code)
        if (q.coset_[code] < 0)
            throw Error("compute_Um: unit subgroup does not surject onto u(F_p); cosets lack a "
                        "representative with constant term 1");
    q.subgroup_ = std::move(sub);
    return q;
}

PolyMod galois_on_unit(std::int64_t k, const PolyMod& x) {
    const int p = x.p();
    const int m = x.m();
    if (arith::mod(k, p) == 0)
        throw std::invalid_argument("galois_on_unit: k must be prime to p");
    const std::int64_t pp = std::int64_t{p} * p;
    const PolyMod shift = poly_pow(PolyMod(p, m, {1, 1}), static_cast<std::uint64_t>(arith::mod(k, pp)));
    std::vector<int> sc(shift.coeffs().begin(), shift.coeffs().end());
    if (m > 0) sc[0] = 0;
    const PolyMod image_of_lambda(p, m, std::move(sc));
    PolyMod result(p, m, {});
    for (int j = m - 1; j >= 0; --j)
        result = poly_add(poly_mul(result, image_of_lambda), PolyMod::constant(p, m, x[j]));
    return result;
}

}  // namespace zcp2
