#include "zcp2/materialize.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "zcp2/error.hpp"

namespace zcp2 {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
        for (long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool IntMatrix::is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const mpz_class& v) { return v == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const mpz_class& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const mpz_class& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

IntMatrix IntMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("IntMatrix::submatrix");
    IntMatrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const mpz_class& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += x * b(k, j);
        }
    return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("IntMatrix: shape mismatch");
    IntMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
    return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("IntMatrix: shape mismatch");
    IntMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
    return out;
}

IntMatrix matrix_pow(const IntMatrix& a, std::uint64_t e) {
    IntMatrix result = IntMatrix::identity(a.rows());
    IntMatrix base = a;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    IntMatrix out(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return out;
}

namespace {

void trim(IntPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod g for monic g.
IntPoly poly_mod(IntPoly f, const IntPoly& g) {
    const std::size_t dg = g.size() - 1;
    for (std::size_t i = f.size(); i-- > dg;) {
        const mpz_class c = f[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dg; ++j) f[i - dg + j] -= c * g[j];
    }
    f.resize(std::min(f.size(), dg));
    trim(f);
    return f;
}

}  // namespace

IntPoly poly_product(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

IntPoly x_pow_minus_one(std::int64_t n) {
    IntPoly f(static_cast<std::size_t>(n) + 1);
    f[0] = -1;
    f[static_cast<std::size_t>(n)] = 1;
    return f;
}

IntPoly cyclotomic(std::int64_t n) {
    if (n == 1) return {-1, 1};
    // Phi_{q^k}(x) = Phi_q(x^{q^{k-1}}) for prime q.
    std::int64_t q = 2;
    while (n % q) ++q;
    std::int64_t step = n / q;
    if (step % q && step != 1) throw std::invalid_argument("cyclotomic: only prime powers are supported");
    IntPoly f(static_cast<std::size_t>(n - step) + 1);
    for (std::int64_t i = 0; i < q; ++i) f[static_cast<std::size_t>(i * step)] = 1;
    return f;
}

IntMatrix companion(const IntPoly& f) {
    if (f.empty() || f.back() != 1) throw std::invalid_argument("companion: polynomial must be monic");
    const std::size_t n = f.size() - 1;
    IntMatrix a(n, n);
    for (std::size_t j = 0; j + 1 < n; ++j) a(j + 1, j) = 1;
    for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = -f[i];
    return a;
}

IntMatrix evaluate(const IntPoly& f, const IntMatrix& a) {
    IntMatrix out(a.rows(), a.cols());
    for (std::size_t i = f.size(); i-- > 0;) {
        out = out * a;
        for (std::size_t k = 0; k < a.rows(); ++k) out(k, k) += f[i];
    }
    return out;
}

IntPoly characteristic_polynomial(const IntMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("characteristic_polynomial: matrix not square");
    // Faddeev-LeVerrier; every division below is exact.
    const std::size_t n = a.rows();
    IntPoly c(n + 1);
    c[n] = 1;
    IntMatrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
        const IntMatrix am = a * m;
        mpz_class tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / static_cast<long>(k);
    }
    return c;
}

std::string to_string(const IntPoly& f) {
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = f.size(); i-- > 0;) {
        const mpz_class& c = f[i];
        if (c == 0) continue;
        const mpz_class mag = abs(c);
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (mag != 1 || i == 0) os << mag.get_str();
        if (i > 0) os << (i == 1 ? "x" : "x^" + std::to_string(i));
        first = false;
    }
    return os.str();
}

std::vector<mpz_class> SmithForm::diagonal() const {
    std::vector<mpz_class> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
}

SmithForm snf(const IntMatrix& m) {
    SmithForm f{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()),
                IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), 0};
    IntMatrix& s = f.S;
    // Row operation on S is mirrored on U; its inverse is applied to U_inv from the right.
    auto swap_r = [&](std::size_t a, std::size_t b) {
        s.swap_rows(a, b);
        f.U.swap_rows(a, b);
        f.U_inv.swap_cols(a, b);
    };
    auto add_r = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
        s.add_row(dst, src, q);
        f.U.add_row(dst, src, q);
        f.U_inv.add_col(src, dst, -q);
    };
    auto swap_c = [&](std::size_t a, std::size_t b) {
        s.swap_cols(a, b);
        f.V.swap_cols(a, b);
        f.V_inv.swap_rows(a, b);
    };
    auto add_c = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
        s.add_col(dst, src, q);
        f.V.add_col(dst, src, q);
        f.V_inv.add_row(src, dst, -q);
    };

    const std::size_t rows = s.rows(), cols = s.cols();
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (s(i, j) != 0 && (pi == rows || abs(s(i, j)) < abs(s(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) {
                f.rank = t;
                goto done;
            }
            swap_r(t, pi);
            swap_c(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (s(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
                add_r(i, t, -q);
                if (s(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (s(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
                add_c(j, t, -q);
                if (s(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            add_r(t, bad, 1);
        }
        if (s(t, t) < 0) {
            s.negate_row(t);
            f.U.negate_row(t);
            f.U_inv.negate_col(t);
        }
        f.rank = t + 1;
    }
done:
    return f;
}

std::size_t matrix_rank(const IntMatrix& m) { return snf(m).rank; }

namespace {

bool has_trivial_classes(const Summand& s) {
    auto zero = [](const GroupElement& x) {
        return std::all_of(x.exps.begin(), x.exps.end(), [](std::int64_t v) { return v == 0; });
    };
    return zero(s.b) && zero(s.c);
}

// (g - 1)^r * w(g) with w(g) = sum u_j (g - 1)^j, coefficients of u read in [0, p-1].
IntPoly extension_polynomial(int r, const PolyMod& u) {
    const IntPoly g_minus_1{-1, 1};
    IntPoly w;
    IntPoly power{1};
    for (int j = 0; j < u.m(); ++j) {
        if (u[j] != 0) {
            if (w.size() < power.size()) w.resize(power.size());
            for (std::size_t i = 0; i < power.size(); ++i) w[i] += u[j] * power[i];
        }
        power = poly_product(power, g_minus_1);
    }
    trim(w);
    for (int i = 0; i < r; ++i) w = poly_product(w, g_minus_1);
    return w;
}

// Coordinates of f mod `modulus` in the basis 1, x, ..., padded to deg(modulus).
std::vector<mpz_class> residue_vector(const IntPoly& f, const IntPoly& modulus) {
    IntPoly r = poly_mod(f, modulus);
    r.resize(modulus.size() - 1);
    return r;
}

// (P + X) / {(x^j k, -A_X^j v)}: the pushout of P <- kP -> X where kP is the
// cyclic submodule generated by k and the map sends k to v. `period` is the
// Z-rank of kP.
IntMatrix pushout(std::size_t n, const IntPoly& k, std::size_t period, const IntMatrix& ax,
                  const std::vector<mpz_class>& v) {
    const std::size_t dx = ax.rows();
    const std::size_t dim = n + dx;
    IntMatrix rel(dim, period);
    IntMatrix w(dx, 1);
    for (std::size_t i = 0; i < dx; ++i) w(i, 0) = v[i];
    for (std::size_t j = 0; j < period; ++j) {
        for (std::size_t i = 0; i < k.size(); ++i) rel((i + j) % n, j) += k[i];
        for (std::size_t i = 0; i < dx; ++i) rel(n + i, j) = -w(i, 0);
        w = ax * w;
    }

    IntMatrix t(dim, dim);
    for (std::size_t i = 0; i < n; ++i) t((i + 1) % n, i) = 1;
    for (std::size_t i = 0; i < dx; ++i)
        for (std::size_t j = 0; j < dx; ++j) t(n + i, n + j) = ax(i, j);

    const SmithForm f = snf(rel);
    for (std::size_t i = 0; i < f.rank; ++i)
        if (f.S(i, i) != 1)
            throw std::logic_error("materialize: pushout quotient has torsion " + f.S(i, i).get_str());
    const IntMatrix tt = f.U * t * f.U_inv;
    const std::size_t l = f.rank;
    for (std::size_t i = l; i < dim; ++i)
        for (std::size_t j = 0; j < l; ++j)
            if (tt(i, j) != 0) throw std::logic_error("materialize: relation lattice is not g-stable");
    return tt.submatrix(l, l, dim - l, dim - l);
}

}  // namespace

IntMatrix rep_of(const Summand& s, const Context& ctx) {
    if (!has_trivial_classes(s))
        throw NontrivialClass("materialize: " + render(s) + " carries a nontrivial ideal class");
    const int p = ctx.p();
    const std::int64_t pp = std::int64_t{p} * p;
    const IntPoly phi_p = cyclotomic(p);
    const IntPoly phi_pp = cyclotomic(pp);
    const IntPoly e_mod = x_pow_minus_one(p);

    switch (s.type) {
        case SummandType::Z: return IntMatrix{{1}};
        case SummandType::IdealR: return companion(phi_p);
        case SummandType::IdealS: return companion(phi_pp);
        case SummandType::ExtB:
            return pushout(static_cast<std::size_t>(p), phi_p, 1, IntMatrix{{1}}, {mpz_class(1)});
        case SummandType::ExtC:
            return pushout(static_cast<std::size_t>(pp), phi_pp, static_cast<std::size_t>(p), IntMatrix{{1}},
                           {mpz_class(1)});
        default: break;
    }

    const IntPoly ext = extension_polynomial(s.r, *s.u);
    std::vector<IntMatrix> x_blocks;
    std::vector<mpz_class> v;
    const bool with_z = s.type == SummandType::C || s.type == SummandType::D || s.type == SummandType::F;
    if (with_z) {
        x_blocks.push_back(IntMatrix{{1}});
        v.emplace_back(1);
    }
    const bool over_e = s.type == SummandType::B || s.type == SummandType::C || s.type == SummandType::D;
    const IntPoly& modulus = over_e ? e_mod : phi_p;
    x_blocks.push_back(companion(modulus));
    std::vector<mpz_class> tail = residue_vector(ext, modulus);
    if (s.type == SummandType::D)
        for (auto& c : tail) c *= ctx.n0();
    v.insert(v.end(), tail.begin(), tail.end());
    return pushout(static_cast<std::size_t>(pp), phi_pp, static_cast<std::size_t>(p), block_diagonal(x_blocks), v);
}

IntegerRep rep_of(const LatticeDescriptor& d) {
    std::vector<IntMatrix> blocks;
    for (const auto& s : d.summands()) blocks.push_back(rep_of(s, *d.context()));
    IntMatrix a = block_diagonal(blocks);
    const std::size_t n = a.rows();
    const std::int64_t p = d.p();
    if (!matrix_pow(a, static_cast<std::uint64_t>(p * p)).is_identity())
        throw std::logic_error("materialize: A^(p^2) != I for " + render(d));
    return IntegerRep{n, std::move(a), d};
}

std::string_view to_string(ExtTarget x) {
    switch (x) {
        case ExtTarget::Z: return "Z";
        case ExtTarget::R: return "R";
        case ExtTarget::E: return "E";
        case ExtTarget::Z_plus_R: return "Z+R";
        case ExtTarget::Z_plus_E: return "Z+E";
    }
    return "?";
}

AbGroup ext_group(ExtTarget x, int p) {
    std::vector<IntMatrix> blocks;
    if (x == ExtTarget::Z || x == ExtTarget::Z_plus_R || x == ExtTarget::Z_plus_E) blocks.push_back(IntMatrix{{1}});
    if (x == ExtTarget::R || x == ExtTarget::Z_plus_R) blocks.push_back(companion(cyclotomic(p)));
    if (x == ExtTarget::E || x == ExtTarget::Z_plus_E) blocks.push_back(companion(x_pow_minus_one(p)));
    const IntMatrix a = block_diagonal(blocks);
    const std::size_t d = a.rows();

    // Hom(E, X) = ker(A^p - I); restriction from Hom(Lambda, X) = X is Phi_{p^2}(A).
    const SmithForm k = snf(matrix_pow(a, static_cast<std::uint64_t>(p)) - IntMatrix::identity(d));
    const std::size_t kdim = d - k.rank;
    const IntMatrix image = evaluate(cyclotomic(std::int64_t{p} * p), a);
    const IntMatrix coords = (k.V_inv * image).submatrix(k.rank, 0, kdim, d);
    const SmithForm c = snf(coords);
    if (c.rank < kdim) throw std::logic_error("ext_group: infinite cokernel");
    std::vector<std::int64_t> factors;
    for (std::size_t i = 0; i < c.rank; ++i)
        if (c.S(i, i) != 1) factors.push_back(c.S(i, i).get_si());
    return AbGroup(std::move(factors));
}

IntPoly predicted_characteristic_polynomial(const LatticeDescriptor& d) {
    const std::int64_t p = d.p();
    const IntPoly x1 = cyclotomic(1), phi_p = cyclotomic(p), phi_pp = cyclotomic(p * p), e = x_pow_minus_one(p);
    IntPoly out{1};
    for (const auto& s : d.summands()) {
        std::vector<const IntPoly*> fs;
        switch (s.type) {
            case SummandType::Z: fs = {&x1}; break;
            case SummandType::IdealR: fs = {&phi_p}; break;
            case SummandType::IdealS: fs = {&phi_pp}; break;
            case SummandType::ExtB: fs = {&x1, &phi_p}; break;
            case SummandType::ExtC: fs = {&x1, &phi_pp}; break;
            case SummandType::B: fs = {&e, &phi_pp}; break;
            case SummandType::C:
            case SummandType::D: fs = {&x1, &e, &phi_pp}; break;
            case SummandType::E: fs = {&phi_p, &phi_pp}; break;
            case SummandType::F: fs = {&x1, &phi_p, &phi_pp}; break;
        }
        for (const IntPoly* f : fs) out = poly_product(out, *f);
    }
    return out;
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

ValidationReport validate_rep(const IntegerRep& rep) {
    ValidationReport r;
    const LatticeDescriptor& d = rep.source;
    const std::uint64_t p = static_cast<std::uint64_t>(d.p());
    const IntMatrix& a = rep.A;

    r.checks.push_back({"shape", a.is_square() && a.rows() == rep.n &&
                                     static_cast<std::int64_t>(rep.n) == rank(d),
                        "n = " + std::to_string(rep.n) + ", rank = " + std::to_string(rank(d))});

    const bool pp_identity = matrix_pow(a, p * p).is_identity();
    r.checks.push_back({"A^(p^2) = I", pp_identity, ""});
    if (pp_identity) r.order = a.is_identity() ? 1 : matrix_pow(a, p).is_identity() ? p : p * p;

    const std::uint64_t expected = [&] {
        switch (faithfulness(d)) {
            case Faithfulness::TrivialAction: return std::uint64_t{1};
            case Faithfulness::OrderP: return p;
            case Faithfulness::Faithful: return p * p;
        }
        return std::uint64_t{0};
    }();
    r.checks.push_back({"order", r.order == expected,
                        "order " + std::to_string(r.order) + ", expected " + std::to_string(expected)});

    const IntPoly cp = characteristic_polynomial(a);
    const IntPoly want = predicted_characteristic_polynomial(d);
    r.checks.push_back({"characteristic polynomial", cp == want, to_string(cp) + " vs " + to_string(want)});

    // Multiplicity of x - 1 in the predicted characteristic polynomial; A has finite order, so
    // this is the rational rank of the fixed lattice.
    const std::size_t fixed = d.count(SummandType::Z) + d.count(SummandType::ExtB) +
                              d.count(SummandType::ExtC) + d.count(SummandType::B) +
                              2 * (d.count(SummandType::C) + d.count(SummandType::D)) + d.count(SummandType::F);
    const std::size_t got = rep.n - matrix_rank(a - IntMatrix::identity(rep.n));
    r.checks.push_back({"fixed rank", got == fixed,
                        "rank ker(A - I) = " + std::to_string(got) + ", expected " + std::to_string(fixed)});
    return r;
}

nlohmann::json to_json(const IntMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const mpz_class& v = m(i, j);
            if (v.fits_slong_p())
                row.push_back(v.get_si());
            else
                row.push_back(v.get_str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json to_json(const IntegerRep& rep) {
    return {{"p", rep.source.p()}, {"source", render(rep.source)}, {"n", rep.n}, {"A", to_json(rep.A)}};
}

nlohmann::json to_json(const ValidationReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"ok", r.ok()}, {"order", r.order}, {"checks", checks}};
}

}  // namespace zcp2
