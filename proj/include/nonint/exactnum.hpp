#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace nonint {

using ExactInteger = mpz_class;

/// Arbitrary-precision rational, always held in lowest terms with a
/// positive denominator.
class ExactRational {
public:
    ExactRational() = default;
    ExactRational(const ExactInteger& value);  // NOLINT(google-explicit-constructor)
    ExactRational(ExactInteger numerator, ExactInteger denominator);
    explicit ExactRational(const mpq_class& value);

    [[nodiscard]] ExactInteger numerator() const { return value_.get_num(); }
    [[nodiscard]] ExactInteger denominator() const { return value_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return value_; }

    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
    [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }

    /// Rebuild from the stored parts. Canonical values are a fixpoint.
    [[nodiscard]] ExactRational reduced() const;

    [[nodiscard]] std::string str() const { return value_.get_str(); }

    ExactRational& operator+=(const ExactRational& rhs);
    ExactRational& operator-=(const ExactRational& rhs);
    ExactRational& operator*=(const ExactRational& rhs);
    ExactRational& operator/=(const ExactRational& rhs);

    friend ExactRational operator+(ExactRational lhs, const ExactRational& rhs) { return lhs += rhs; }
    friend ExactRational operator-(ExactRational lhs, const ExactRational& rhs) { return lhs -= rhs; }
    friend ExactRational operator*(ExactRational lhs, const ExactRational& rhs) { return lhs *= rhs; }
    friend ExactRational operator/(ExactRational lhs, const ExactRational& rhs) { return lhs /= rhs; }

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b);

private:
    mpq_class value_{0};
};

ExactInteger binomial(std::uint64_t n, std::uint64_t k);

/// v_p(x) for a nonzero rational x; negative exactly when p divides the
/// reduced denominator. Throws std::invalid_argument on x == 0 or p not prime.
long valuation(std::uint64_t p, const ExactRational& x);
long valuation(std::uint64_t p, const ExactInteger& x);

/// Orders a against b^(p/q) by comparing a^q with b^p exactly.
std::strong_ordering power_compare(const ExactInteger& a, const ExactInteger& b,
                                   unsigned long p, unsigned long q);

/// Largest a >= 0 with a^q <= b^p, i.e. floor(b^(p/q)).
ExactInteger floor_power(const ExactInteger& b, unsigned long p, unsigned long q);

ExactInteger pow2(unsigned long e);
ExactInteger to_exact(std::uint64_t v);
/// Throws std::out_of_range when v does not fit.
std::uint64_t to_u64(const ExactInteger& v);

/// Rational exponent p/q used for the real-valued thresholds.
struct Exponent {
    unsigned long num;
    unsigned long den;
    friend bool operator==(const Exponent&, const Exponent&) = default;
};

}  // namespace nonint
