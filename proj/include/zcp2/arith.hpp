#pragma once

#include <cstdint>
#include <numeric>

namespace zcp2::arith {

bool is_prime(std::int64_t n);

/// Non-negative residue of a mod n.
constexpr std::int64_t mod(std::int64_t a, std::int64_t n) {
    const std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t n);

/// Multiplicative order of a modulo n; requires gcd(a, n) = 1.
std::int64_t mult_order(std::int64_t a, std::int64_t n);

/// Euler phi.
std::int64_t totient(std::int64_t n);

/// Smallest generator of (Z/n)^*, which must be cyclic. For n = 2 this is 1;
/// for n = 4 it is 3.
std::int64_t primitive_root(std::int64_t n);

/// Legendre symbol (a / p) for odd prime p, returning -1, 0 or 1.
int legendre(std::int64_t a, std::int64_t p);

/// Smallest positive quadratic non-residue mod an odd prime p.
std::int64_t smallest_nonresidue(std::int64_t p);

/// Inverse of a modulo n; requires gcd(a, n) = 1.
std::int64_t invmod(std::int64_t a, std::int64_t n);

}  // namespace zcp2::arith
