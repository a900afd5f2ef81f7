#include "apcong/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace apcong {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
  std::uint64_t x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // This base set is deterministic below 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(std::int64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
  auto m = static_cast<std::uint64_t>(n < 0 ? -(n + 1) + 1ULL : n);
  std::vector<PrimePower> out;
  auto take = [&](std::uint64_t p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(static_cast<std::int64_t>(p), e);
  };
  take(2);
  take(3);
  for (std::uint64_t p = 5; p * p <= m; p += 6) {
    take(p);
    take(p + 2);
  }
  if (m > 1) out.emplace_back(static_cast<std::int64_t>(m), 1);
  return out;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (auto [p, e] : factorize(n)) out.push_back(p);
  return out;
}

std::int64_t radical(std::int64_t n) {
  std::int64_t r = 1;
  for (auto [p, e] : factorize(n)) r *= p;
  return r;
}

std::int64_t supported_part(std::int64_t n, const std::vector<std::int64_t>& primes) {
  std::int64_t part = 1;
  for (auto [p, e] : factorize(n)) {
    if (std::find(primes.begin(), primes.end(), p) == primes.end()) continue;
    for (int i = 0; i < e; ++i) part *= p;
  }
  return part;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("divisors: argument must be positive");
  std::vector<std::int64_t> out{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos > 0) {
    if ((a & 1) == 0) return 0;
    const std::int64_t a8 = mod_floor(a, 8);
    if ((twos & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  // n is now odd and positive: Jacobi symbol.
  std::int64_t x = mod_floor(a, n);
  std::int64_t y = n;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const std::int64_t y8 = y % 8;
      if (y8 == 3 || y8 == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

int legendre(std::int64_t a, std::int64_t p) {
  if (p <= 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw std::invalid_argument("legendre: " + std::to_string(p) + " is not an odd prime");
  }
  return kronecker(a, p);
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative argument");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  auto sq = [](std::int64_t x) { return static_cast<u128>(x) * static_cast<u128>(x); };
  const auto target = static_cast<u128>(n);
  while (sq(r) > target) --r;
  while (sq(r + 1) <= target) ++r;
  return r;
}

}  // namespace apcong
