#include <random>

#include "doctest.h"
#include "support.hpp"
#include "zcp2/error.hpp"
#include "zcp2/materialize.hpp"

using namespace zcp2;

namespace {

mpz_class det(IntMatrix m) {
    // Bareiss elimination, independent of the Smith form code.
    const std::size_t n = m.rows();
    mpz_class sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && m(r, k) == 0) ++r;
            if (r == n) return 0;
            m.swap_rows(k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

void check_snf(const IntMatrix& m) {
    const SmithForm f = snf(m);
    CHECK(f.U * m * f.V == f.S);
    CHECK((f.U * f.U_inv).is_identity());
    CHECK((f.V * f.V_inv).is_identity());
    CHECK(abs(det(f.U)) == 1);
    CHECK(abs(det(f.V)) == 1);
    const auto d = f.diagonal();
    for (std::size_t i = 0; i < f.S.rows(); ++i)
        for (std::size_t j = 0; j < f.S.cols(); ++j)
            if (i != j) CHECK(f.S(i, j) == 0);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        CHECK(d[i] >= 0);
        if (d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
        else CHECK(d[i + 1] == 0);
    }
}

}  // namespace

TEST_CASE("Smith normal form examples") {
    const SmithForm f = snf(IntMatrix{{2, 0}, {0, 3}});
    CHECK(f.diagonal() == std::vector<mpz_class>{1, 6});
    check_snf(IntMatrix{{2, 0}, {0, 3}});
    CHECK(snf(IntMatrix::identity(4)).S.is_identity());
    CHECK(snf(IntMatrix(3, 2)).S.is_zero());
    CHECK(snf(IntMatrix(3, 2)).rank == 0);
    check_snf(IntMatrix{{6, 4, 2}, {4, 10, 8}, {2, 8, 14}});
    check_snf(IntMatrix{{0, 0, 5}, {0, 7, 0}});
}

TEST_CASE("Smith normal form on random matrices") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> entry(-9, 9);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (int t = 0; t < 200; ++t) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
        check_snf(m);
        if (m.is_square()) {
            const auto d = snf(m).diagonal();
            mpz_class prod = 1;
            for (const auto& x : d) prod *= x;
            CHECK(prod == abs(det(m)));
        }
    }
}

TEST_CASE("polynomials and companions") {
    CHECK(to_string(cyclotomic(4)) == "x^2 + 1");
    CHECK(to_string(cyclotomic(9)) == "x^6 + x^3 + 1");
    CHECK(to_string(cyclotomic(1)) == "x - 1");
    CHECK(companion(cyclotomic(4)) == IntMatrix{{0, -1}, {1, 0}});
    for (std::int64_t n : {2, 3, 4, 5, 9, 25}) {
        const IntMatrix c = companion(cyclotomic(n));
        CHECK(characteristic_polynomial(c) == cyclotomic(n));
        CHECK(evaluate(cyclotomic(n), c).is_zero());
    }
    CHECK(poly_product(cyclotomic(1), cyclotomic(3)) == x_pow_minus_one(3));
}

TEST_CASE("representations of small lattices") {
    const auto c2 = Context::make_builtin(2);
    CHECK(rep_of(parse("Z", c2)).A == IntMatrix{{1}});
    CHECK(rep_of(parse("c(0)", c2)).A == IntMatrix{{0, -1}, {1, 0}});

    const IntegerRep ec = rep_of(parse("Ec(0)", c2));
    CHECK(ec.n == 3);
    CHECK(characteristic_polynomial(ec.A) == poly_product(cyclotomic(1), cyclotomic(4)));
    const ValidationReport v = validate_rep(ec);
    CHECK(v.ok());
    CHECK(v.order == 4);
    // The F_2-rank of A - I is a conjugacy invariant: 1 for Z + S, 2 for the nonsplit extension.
    auto rank_mod2 = [](IntMatrix m) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = ((m(i, j) % 2) + 2) % 2;
        std::size_t r = 0;
        for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
            std::size_t piv = r;
            while (piv < m.rows() && m(piv, c) == 0) ++piv;
            if (piv == m.rows()) continue;
            m.swap_rows(r, piv);
            for (std::size_t i = 0; i < m.rows(); ++i)
                if (i != r && m(i, c) != 0)
                    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = (m(i, j) + m(r, j)) % 2;
            ++r;
        }
        return r;
    };
    const IntMatrix split = block_diagonal({IntMatrix{{1}}, companion(cyclotomic(4))});
    CHECK(rank_mod2(split - IntMatrix::identity(3)) == 1);
    CHECK(rank_mod2(ec.A - IntMatrix::identity(3)) == 2);

    const IntegerRep z3 = rep_of(parse("3*Z", c2));
    CHECK(validate_rep(z3).ok());
    CHECK(validate_rep(z3).order == 1);

    const auto c3 = Context::make_builtin(3);
    const IntegerRep e = rep_of(parse("E(0,0;0,1)", c3));
    CHECK(e.n == 8);
    CHECK(characteristic_polynomial(e.A) == poly_product(cyclotomic(3), cyclotomic(9)));
    CHECK(validate_rep(e).order == 9);

    const auto k5 = Context::make(load_config(std::filesystem::path(ZCP2_TEST_DATA) / "klein_p5.json"));
    CHECK_THROWS_AS(rep_of(parse("b(1:0)", k5)), NontrivialClass);
    CHECK_NOTHROW(rep_of(parse("b(0:0)", k5)));
}

TEST_CASE("every trivial-class indecomposable validates") {
    for (int p : {2, 3}) {
        const auto c = Context::make_builtin(p);
        for (const auto& s : testing::indecomposables(*c)) {
            const LatticeDescriptor d(c, {s});
            const IntegerRep rep = rep_of(d);
            CHECK(static_cast<std::int64_t>(rep.n) == rank(d));
            const ValidationReport v = validate_rep(rep);
            INFO(render(d));
            for (const auto& chk : v.checks) {
                INFO(chk.name << ": " << chk.detail);
                CHECK(chk.passed);
            }
        }
    }
}

TEST_CASE("a mismatched source fails validation") {
    const auto c3 = Context::make_builtin(3);
    IntegerRep rep = rep_of(parse("E(0,0;0,1)", c3));
    rep.source = parse("F(0,0;0,1)", c3);
    CHECK_FALSE(validate_rep(rep).ok());
}

TEST_CASE("Ext groups") {
    for (int p : {2, 3, 5}) {
        const AbGroup g = ext_group(ExtTarget::Z_plus_R, p);
        std::uint64_t want = 1;
        for (int i = 0; i < p; ++i) want *= static_cast<std::uint64_t>(p);
        CHECK(g.order() == want);
        for (auto f : g.invariant_factors()) CHECK(f == p);
    }
    CHECK(ext_group(ExtTarget::Z, 2).order() == 2);
    CHECK(ext_group(ExtTarget::Z, 3).order() == 3);
    CHECK(ext_group(ExtTarget::R, 3).order() == 9);
    CHECK(ext_group(ExtTarget::E, 3).order() == 27);
}

TEST_CASE("JSON form of a representation") {
    const auto c2 = Context::make_builtin(2);
    const auto j = to_json(rep_of(parse("c(0)", c2)));
    CHECK(j["A"] == nlohmann::json{{0, -1}, {1, 0}});
    CHECK(j["n"] == 2);
}
