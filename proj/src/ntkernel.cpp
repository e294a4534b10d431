#include "nonint/ntkernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nonint {

namespace {

constexpr std::uint64_t kTrialBound = 1000;

// Primes below kTrialBound, built once.
const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> table = [] {
        std::vector<bool> composite(kTrialBound, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i < kTrialBound; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint32_t j = i * i; j < kTrialBound; j += i) composite[j] = true;
        }
        return out;
    }();
    return table;
}

bool miller_rabin_round(std::uint64_t n, std::uint64_t d, unsigned s, std::uint64_t a) {
    std::uint64_t x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1 || x == 0) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && (r > n / r)) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of composite
// odd n, or 0 if the sequence for this c degenerates.
std::uint64_t rho_brent(std::uint64_t n, std::uint64_t c) {
    constexpr std::uint64_t kBlock = 128;
    std::uint64_t y = 2;
    std::uint64_t x = y;
    std::uint64_t ys = y;
    std::uint64_t q = 1;
    std::uint64_t g = 1;
    const auto f = [&](std::uint64_t v) {
        const std::uint64_t sq = mulmod(v, v, n);
        return sq >= n - c ? sq - (n - c) : sq + c;
    };
    for (std::uint64_t len = 1; g == 1; len <<= 1) {
        x = y;
        for (std::uint64_t i = 0; i < len; ++i) y = f(y);
        for (std::uint64_t k = 0; k < len && g == 1; k += kBlock) {
            ys = y;
            const std::uint64_t lim = std::min(kBlock, len - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
        }
        if (len > (std::uint64_t{1} << 40)) return 0;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

std::uint64_t trial_factor(std::uint64_t n) {
    for (std::uint64_t d = kTrialBound | 1; d <= n / d; d += 2)
        if (n % d == 0) return d;
    return n;
}

void split(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const std::uint64_t r = isqrt(n);
    if (r * r == n) {
        split(r, out);
        split(r, out);
        return;
    }
    std::uint64_t d = 0;
    for (std::uint64_t c = 1; c < 64 && d == 0; ++c) d = rho_brent(n, c);
    if (d == 0) d = trial_factor(n);  // deterministic fallback
    split(d, out);
    split(n / d, out);
}

void require_window(std::uint64_t a, std::uint64_t b, std::uint64_t limit) {
    if (a > b) throw std::invalid_argument("primes_in: empty interval (a > b)");
    if (b - a > limit) throw std::length_error("primes_in: window exceeds configured limit");
}

}  // namespace

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    for (const std::uint32_t p : small_primes()) {
        if (m == p) return true;
        if (m % p == 0) return false;
    }
    if (m < kTrialBound * kTrialBound) return true;
    std::uint64_t d = m - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // First twelve primes as bases: deterministic below 3.3e24.
    static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    return std::all_of(kBases.begin(), kBases.end(),
                       [&](std::uint64_t a) { return miller_rabin_round(m, d, s, a); });
}

Factorization factorize(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("factorize: m must be >= 2");
    Factorization out;
    for (const std::uint32_t p : small_primes()) {
        if (std::uint64_t{p} * p > m) break;
        if (m % p != 0) continue;
        unsigned e = 0;
        do {
            m /= p;
            ++e;
        } while (m % p == 0);
        out.push_back({p, e});
    }
    if (m == 1) return out;
    std::vector<std::uint64_t> rest;
    split(m, rest);
    std::sort(rest.begin(), rest.end());
    for (const std::uint64_t p : rest) {
        if (!out.empty() && out.back().prime == p)
            ++out.back().exponent;
        else
            out.push_back({p, 1});
    }
    return out;
}

std::uint64_t reassemble(const Factorization& f) {
    std::uint64_t v = 1;
    for (const auto& [p, e] : f)
        for (unsigned i = 0; i < e; ++i) v *= p;
    return v;
}

std::uint64_t order2(std::uint64_t p, const Factorization& pminus1) {
    std::uint64_t t = p - 1;
    for (const auto& pe : pminus1) {
        for (unsigned i = 0; i < pe.exponent; ++i) {
            if (powmod(2, t / pe.prime, p) != 1) break;
            t /= pe.prime;
        }
    }
    return t;
}

std::uint64_t order2(std::uint64_t p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("order2: p must be an odd prime");
    return order2(p, factorize(p - 1));
}

PrimeRecord prime_record(std::uint64_t p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("prime_record: p must be an odd prime");
    PrimeRecord rec{p, 0, factorize(p - 1)};
    rec.order2 = order2(p, rec.pminus1);
    return rec;
}

std::uint64_t largest_prime_factor(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("largest_prime_factor: m must be >= 2");
    return factorize(m).back().prime;
}

std::uint64_t smooth_divisor(std::uint64_t r, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("smooth_divisor: m must be >= 1");
    if (m == 1 || r < 2) return 1;
    std::uint64_t s = 1;
    if (r < kTrialBound) {
        for (const std::uint32_t p : small_primes()) {
            if (p > r) break;
            while (m % p == 0) {
                m /= p;
                s *= p;
            }
        }
        return s;
    }
    for (const auto& [p, e] : factorize(m))
        if (p <= r)
            for (unsigned i = 0; i < e; ++i) s *= p;
    return s;
}

std::vector<std::uint64_t> primes_in(std::uint64_t a, std::uint64_t b, std::uint64_t window_limit) {
    require_window(a, b, window_limit);
    std::vector<std::uint64_t> out;
    const std::uint64_t width = b - a + 1;
    const std::uint64_t root = isqrt(b);
    // Sieving costs ~root for the base primes; only worth it for dense windows.
    if (root > 4 * width + 1024) {
        for (std::uint64_t m = a;; ++m) {
            if (is_prime(m)) out.push_back(m);
            if (m == b) break;
        }
        return out;
    }
    std::vector<bool> base_composite(root + 1, false);
    std::vector<bool> composite(width, false);
    for (std::uint64_t p = 2; p <= root; ++p) {
        if (base_composite[p]) continue;
        for (std::uint64_t j = p * p; j <= root; j += p) base_composite[j] = true;
        const std::uint64_t offset = (p - a % p) % p;
        if (offset > b - a) continue;
        for (std::uint64_t j = std::max(p * p, a + offset); j <= b; j += p) {
            composite[j - a] = true;
            if (b - j < p) break;
        }
    }
    for (std::uint64_t i = 0; i < width; ++i)
        if (!composite[i] && a + i >= 2) out.push_back(a + i);
    return out;
}

std::uint64_t next_prime(std::uint64_t n) {
    for (std::uint64_t m = n + 1; m > n; ++m)
        if (is_prime(m)) return m;
    throw std::overflow_error("next_prime: no prime above n below 2^64");
}

}  // namespace nonint
