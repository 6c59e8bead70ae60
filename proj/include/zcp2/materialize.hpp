#pragma once
// Integer matrices of the generator action on materialized lattices, Smith
// normal form, and Ext(S, X) for the small modules X used in the extensions.

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "zcp2/abelian.hpp"
#include "zcp2/lattice.hpp"

namespace zcp2 {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    /// Row-major nested initializer, every row of equal length.
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_square() const noexcept { return rows_ == cols_; }
    bool is_identity() const;
    bool is_zero() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const mpz_class& f);
    /// col[dst] += f * col[src]
    void add_col(std::size_t dst, std::size_t src, const mpz_class& f);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    IntMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpz_class> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix matrix_pow(const IntMatrix& a, std::uint64_t e);
IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);

/// Integer polynomial, coefficient of x^i at index i, no trailing zeros.
using IntPoly = std::vector<mpz_class>;

IntPoly poly_product(const IntPoly& a, const IntPoly& b);
IntPoly cyclotomic(std::int64_t n);  // n in {1, p, p^2}
/// x^n - 1.
IntPoly x_pow_minus_one(std::int64_t n);
/// Multiplication by x on Z[x]/(f) in the basis 1, x, ..., x^(deg f - 1); f monic.
IntMatrix companion(const IntPoly& f);
/// Evaluates a polynomial at a square matrix.
IntMatrix evaluate(const IntPoly& f, const IntMatrix& a);
/// Characteristic polynomial det(xI - A), computed exactly.
IntPoly characteristic_polynomial(const IntMatrix& a);
std::string to_string(const IntPoly& f);

/// U * M * V = S with S diagonal, S(i,i) | S(i+1,i+1), nonnegative diagonal.
struct SmithForm {
    IntMatrix S, U, V;
    IntMatrix U_inv, V_inv;
    std::size_t rank = 0;
    std::vector<mpz_class> diagonal() const;
};
SmithForm snf(const IntMatrix& m);
std::size_t matrix_rank(const IntMatrix& m);

struct IntegerRep {
    std::size_t n = 0;
    IntMatrix A;
    LatticeDescriptor source;
};

/// Throws NontrivialClass when any summand carries a nonzero ideal class.
IntegerRep rep_of(const LatticeDescriptor& d);
/// Block for one summand of rank rank(s, p).
IntMatrix rep_of(const Summand& s, const Context& ctx);

enum class ExtTarget { Z, R, E, Z_plus_R, Z_plus_E };
std::string_view to_string(ExtTarget x);
/// Ext^1(S, X) as ker(g^p - 1 on X) / Phi_{p^2}(g) X.
AbGroup ext_group(ExtTarget x, int p);

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    std::uint64_t order = 0;  // multiplicative order of A, 0 if not dividing p^2
    bool ok() const;
};

ValidationReport validate_rep(const IntegerRep& rep);
/// Product of the predicted characteristic-polynomial factors of the source.
IntPoly predicted_characteristic_polynomial(const LatticeDescriptor& d);

nlohmann::json to_json(const IntMatrix& m);
nlohmann::json to_json(const IntegerRep& rep);
nlohmann::json to_json(const ValidationReport& r);

}  // namespace zcp2
