#pragma once

#include <cstdint>
#include <vector>

namespace nonint {

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Primes strictly increasing, exponents >= 1.
using Factorization = std::vector<PrimePower>;

struct PrimeRecord {
    std::uint64_t p;
    std::uint64_t order2;
    Factorization pminus1;
};

/// Default cap on b - a for primes_in.
inline constexpr std::uint64_t kPrimeWindowLimit = std::uint64_t{1} << 26;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t m);

/// Throws std::invalid_argument for m < 2.
Factorization factorize(std::uint64_t m);

std::uint64_t reassemble(const Factorization& f);

/// Multiplicative order of 2 modulo an odd prime p. Throws on p == 2 or
/// composite p.
std::uint64_t order2(std::uint64_t p);

/// Order of 2 given the factorization of p - 1 (skips refactoring).
std::uint64_t order2(std::uint64_t p, const Factorization& pminus1);

PrimeRecord prime_record(std::uint64_t p);

/// P(m), the largest prime factor. Throws for m < 2.
std::uint64_t largest_prime_factor(std::uint64_t m);

/// s_r(m): the largest divisor of m whose prime factors are all <= r.
std::uint64_t smooth_divisor(std::uint64_t r, std::uint64_t m);

/// All primes in [a, b], ascending. Throws std::length_error when
/// b - a exceeds window_limit, std::invalid_argument when a > b.
std::vector<std::uint64_t> primes_in(std::uint64_t a, std::uint64_t b,
                                     std::uint64_t window_limit = kPrimeWindowLimit);

/// Least prime strictly greater than n. Throws std::overflow_error when
/// none exists below 2^64.
std::uint64_t next_prime(std::uint64_t n);

}  // namespace nonint
