#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "nonint/exactnum.hpp"

namespace nonint {

/// One sum S_r(n). Both parameters are >= 1 and r + n must fit in 64 bits.
struct Instance {
    std::uint64_t r;
    std::uint64_t n;
    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws std::invalid_argument unless r >= 1, n >= 1 and r + n < 2^64.
void validate(const Instance& inst);

/// A prime p > n dividing k0 + r for some 1 <= k0 <= n.
struct SylvesterPrime {
    std::uint64_t p;
    std::uint64_t k0;
    friend bool operator==(const SylvesterPrime&, const SylvesterPrime&) = default;
};

/// An odd prime p > r dividing n + j (1 <= j <= r) whose order of 2 does not
/// divide n + j. Then p sits in the reduced denominator of the j-th term of
/// the alternating closed form and of no other term, so S(r,n), and with it
/// S_r(n) = 2^n - S(r,n), is not an integer. The reasoning: p > r means p
/// hits exactly one of n+1..n+r, p does not divide r, every prime factor of
/// C(r-1, j-1) is below r, and ord_p(2) not dividing n+j gives p not dividing
/// 2^(n+j) - 1.
struct OrderCertificate {
    std::uint64_t p;
    std::uint64_t j;
    std::uint64_t order2;  // informational; verification recomputes it
    friend bool operator==(const OrderCertificate&, const OrderCertificate&) = default;
};

/// M_r(n) with 2^M_r(n) <= r.
struct SmoothBound {
    std::uint64_t m_value;
    friend bool operator==(const SmoothBound&, const SmoothBound&) = default;
};

using Certificate = std::variant<SylvesterPrime, OrderCertificate, SmoothBound>;

struct CertifiedNonintegral {
    Certificate certificate;
};
struct OracleNonintegral {
    ExactRational value;
};
struct OracleIntegral {
    ExactRational value;
};
struct Undecided {
    std::string reason;
};

using Classification = std::variant<CertifiedNonintegral, OracleNonintegral, OracleIntegral, Undecided>;

inline constexpr std::uint64_t kDefaultOracleCutoff = 3000;
inline constexpr std::uint64_t kDefaultClosedFormCutoff = 200;
inline constexpr std::uint64_t kDefaultWindowLimit = 10'000'000;
/// Closed-form evaluation materializes 2^(n+r); n above this is refused.
inline constexpr std::uint64_t kClosedFormMaxN = std::uint64_t{1} << 24;

struct Budget {
    std::uint64_t oracle_cutoff = kDefaultOracleCutoff;
    std::uint64_t closed_form_cutoff = kDefaultClosedFormCutoff;
    /// Cap on the number of consecutive values a certificate search touches.
    std::uint64_t window_limit = kDefaultWindowLimit;
};

/// S_r(n) by direct summation. Throws std::length_error when n exceeds the
/// oracle cutoff.
ExactRational s_lower(const Instance& inst, std::uint64_t oracle_cutoff = kDefaultOracleCutoff);

/// S(r,n) by direct summation; same cutoff rule as s_lower.
ExactRational s_upper(const Instance& inst, std::uint64_t oracle_cutoff = kDefaultOracleCutoff);

/// S(r,n) via sum_{j=1}^{r} (-1)^(r-j) r C(r-1,j-1) (2^(n+j)-1)/(n+j).
/// Throws std::length_error when r exceeds the cutoff or n > kClosedFormMaxN.
ExactRational s_upper_closed(const Instance& inst,
                             std::uint64_t closed_form_cutoff = kDefaultClosedFormCutoff);

bool complement_check(const Instance& inst, std::uint64_t oracle_cutoff = kDefaultOracleCutoff);

// Certificate searches. Ties go to the smallest prime, then the smallest index.
// Each throws std::length_error if the values it must inspect exceed
// window_limit.
std::optional<SylvesterPrime> sylvester_certificate(const Instance& inst,
                                                    std::uint64_t window_limit = kDefaultWindowLimit);
std::optional<OrderCertificate> order_certificate(const Instance& inst,
                                                  std::uint64_t window_limit = kDefaultWindowLimit);
std::uint64_t m_lower(const Instance& inst, std::uint64_t window_limit = kDefaultWindowLimit);
std::optional<SmoothBound> smooth_certificate(const Instance& inst,
                                              std::uint64_t window_limit = kDefaultWindowLimit);

/// Re-checks a certificate's defining conditions from scratch.
bool verify(const Instance& inst, const SylvesterPrime& cert);
bool verify(const Instance& inst, const OrderCertificate& cert);
bool verify(const Instance& inst, const SmoothBound& cert,
            std::uint64_t window_limit = kDefaultWindowLimit);
bool verify(const Instance& inst, const Certificate& cert);

/// Sylvester, then order, then smooth; falls back to the exact oracle when
/// n is within the budget's oracle cutoff, otherwise Undecided.
Classification classify(const Instance& inst, const Budget& budget = {});

}  // namespace nonint
