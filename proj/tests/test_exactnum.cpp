#include <random>

#include "doctest.h"
#include "nonint/exactnum.hpp"
#include "oracles.hpp"

using namespace nonint;

TEST_CASE("binomial small values") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(7, 0) == 1);
    CHECK(binomial(4, 6) == 0);
    CHECK(binomial(0, 0) == 1);
}

TEST_CASE("binomial satisfies Pascal's rule up to n = 200") {
    for (std::uint64_t n = 1; n <= 200; ++n)
        for (std::uint64_t k = 1; k <= n; ++k) REQUIRE(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("ExactRational is canonical") {
    const ExactRational x(ExactInteger(-6), ExactInteger(-4));
    CHECK(x.numerator() == 3);
    CHECK(x.denominator() == 2);
    const ExactRational y(ExactInteger(6), ExactInteger(-4));
    CHECK(y.numerator() == -3);
    CHECK(y.denominator() == 2);
    CHECK(ExactRational(ExactInteger(0), ExactInteger(7)).denominator() == 1);
    CHECK_THROWS_AS(ExactRational(ExactInteger(1), ExactInteger(0)), std::invalid_argument);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const auto num = static_cast<long>(rng() % 20001) - 10000;
        const auto den = static_cast<long>(rng() % 10000) + 1;
        const ExactRational q{ExactInteger(num), ExactInteger(den)};
        REQUIRE(q.reduced() == q);
        REQUIRE(q.reduced().numerator() == q.numerator());
        REQUIRE(q.reduced().denominator() == q.denominator());
        REQUIRE(q.denominator() >= 1);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), q.numerator().get_mpz_t(), q.denominator().get_mpz_t());
        REQUIRE(g == 1);
    }
}

TEST_CASE("valuation") {
    CHECK(valuation(2, ExactRational(ExactInteger(8))) == 3);
    CHECK(valuation(3, ExactRational(ExactInteger(10))) == 0);
    CHECK(valuation(5, ExactRational(ExactInteger(209), ExactInteger(35))) == -1);
    CHECK(valuation(7, ExactRational(ExactInteger(209), ExactInteger(35))) == -1);
    CHECK(valuation(11, ExactRational(ExactInteger(209), ExactInteger(35))) == 1);
    CHECK_THROWS_AS(valuation(5, ExactRational()), std::invalid_argument);
    CHECK_THROWS_AS(valuation(4, ExactRational(ExactInteger(8))), std::invalid_argument);
    CHECK_THROWS_AS(valuation(1, ExactRational(ExactInteger(8))), std::invalid_argument);
}

TEST_CASE("valuation is additive over products") {
    std::mt19937_64 rng(11);
    const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13};
    for (int i = 0; i < 400; ++i) {
        const auto pick = [&] {
            const auto num = static_cast<long>(rng() % 4000) + 1;
            const auto den = static_cast<long>(rng() % 4000) + 1;
            return ExactRational(ExactInteger((rng() & 1) ? num : -num), ExactInteger(den));
        };
        const ExactRational x = pick();
        const ExactRational y = pick();
        for (const std::uint64_t p : primes) REQUIRE(valuation(p, x * y) == valuation(p, x) + valuation(p, y));
    }
}

TEST_CASE("power_compare decides a against b^(p/q) exactly") {
    for (unsigned long r = 2; r < 50; ++r)
        CHECK(power_compare(1, r, 61, 100) == std::strong_ordering::less);
    CHECK(power_compare(16, 100, 61, 100) == std::strong_ordering::less);
    CHECK(power_compare(17, 100, 61, 100) == std::strong_ordering::greater);
    CHECK(power_compare(8, 4, 3, 2) == std::strong_ordering::equal);
    CHECK_THROWS_AS(power_compare(0, 4, 3, 2), std::invalid_argument);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        const ExactInteger a = static_cast<unsigned long>(rng() % 100000 + 1);
        const ExactInteger b = static_cast<unsigned long>(rng() % 100000 + 1);
        const unsigned long p = rng() % 120 + 1;
        const unsigned long q = rng() % 120 + 1;
        REQUIRE(power_compare(a, b, p, q) == power_compare(a * a, b * b, p, q));
    }
}

TEST_CASE("floor_power matches the largest a with a^q <= b^p") {
    CHECK(floor_power(10, 61, 100) == 4);
    CHECK(floor_power(100, 61, 100) == 16);
    CHECK(floor_power(1'000'000, 61, 100) == 4570);
    for (unsigned long b = 2; b < 300; b += 7) {
        const ExactInteger a = floor_power(b, 61, 100);
        CHECK(power_compare(a, b, 61, 100) != std::strong_ordering::greater);
        CHECK(power_compare(a + 1, b, 61, 100) == std::strong_ordering::greater);
    }
}

TEST_CASE("u64 conversion") {
    CHECK(to_u64(to_exact(UINT64_MAX)) == UINT64_MAX);
    CHECK_THROWS_AS(to_u64(to_exact(UINT64_MAX) + 1), std::out_of_range);
    CHECK_THROWS_AS(to_u64(ExactInteger(-1)), std::out_of_range);
}
