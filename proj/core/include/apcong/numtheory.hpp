#pragma once

// Elementary integer number theory used throughout the library: primality,
// factorization of machine-word integers, quadratic symbols, radicals.

#include <cstdint>
#include <utility>
#include <vector>

namespace apcong {

using PrimePower = std::pair<std::int64_t, int>;

/// Deterministic Miller-Rabin for the full unsigned 64-bit range.
bool is_prime(std::uint64_t n);

/// Prime factorization of |n| by trial division; n must be nonzero.
std::vector<PrimePower> factorize(std::int64_t n);

/// Distinct primes dividing |n|, ascending.
std::vector<std::int64_t> prime_divisors(std::int64_t n);

/// Product of the distinct primes dividing |n|.
std::int64_t radical(std::int64_t n);

/// Part of n supported at the given set of primes.
std::int64_t supported_part(std::int64_t n, const std::vector<std::int64_t>& primes);

/// Positive divisors of n > 0, ascending.
std::vector<std::int64_t> divisors(std::int64_t n);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// Non-negative residue of a modulo m > 0.
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Kronecker symbol (a/n), defined for every integer a and n.
int kronecker(std::int64_t a, std::int64_t n);

/// Legendre symbol (a/p) for an odd prime p; throws std::invalid_argument
/// otherwise.
int legendre(std::int64_t a, std::int64_t p);

/// Primes up to and including bound (sieve).
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

/// Exact integer square root: floor(sqrt(n)) for n >= 0.
std::int64_t isqrt(std::int64_t n);

}  // namespace apcong
