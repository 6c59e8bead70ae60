#include "zcp2/arith.hpp"

#include <stdexcept>
#include <vector>

namespace zcp2::arith {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t n) {
    if (n == 1) return 0;
    std::int64_t result = 1;
    std::int64_t b = mod(base, n);
    while (exp > 0) {
        if (exp & 1) result = static_cast<std::int64_t>((__int128)result * b % n);
        b = static_cast<std::int64_t>((__int128)b * b % n);
        exp >>= 1;
    }
    return result;
}

std::int64_t mult_order(std::int64_t a, std::int64_t n) {
    if (std::gcd(mod(a, n), n) != 1) throw std::invalid_argument("mult_order: not a unit");
    if (n == 1) return 1;
    std::int64_t x = mod(a, n);
    std::int64_t k = 1;
    while (x != 1) {
        x = static_cast<std::int64_t>((__int128)x * mod(a, n) % n);
        ++k;
    }
    return k;
}

std::int64_t totient(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            while (n % d == 0) n /= d;
            result -= result / d;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

std::int64_t primitive_root(std::int64_t n) {
    const std::int64_t phi = totient(n);
    for (std::int64_t g = 1; g < n; ++g) {
        if (std::gcd(g, n) == 1 && mult_order(g, n) == phi) return g;
    }
    throw std::invalid_argument("primitive_root: (Z/n)^* is not cyclic");
}

int legendre(std::int64_t a, std::int64_t p) {
    const std::int64_t r = powmod(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

std::int64_t smallest_nonresidue(std::int64_t p) {
    for (std::int64_t a = 2; a < p; ++a)
        if (legendre(a, p) == -1) return a;
    throw std::invalid_argument("smallest_nonresidue: no non-residue mod p");
}

std::int64_t invmod(std::int64_t a, std::int64_t n) {
    std::int64_t old_r = mod(a, n), r = n, old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw std::invalid_argument("invmod: not invertible");
    return mod(old_s, n);
}

}  // namespace zcp2::arith
