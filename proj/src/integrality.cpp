#include "nonint/integrality.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonint/ntkernel.hpp"

namespace nonint {

namespace {

void require_oracle(const Instance& inst, std::uint64_t cutoff) {
    validate(inst);
    if (inst.n > cutoff)
        throw std::length_error("n = " + std::to_string(inst.n) + " exceeds oracle cutoff " +
                                std::to_string(cutoff));
}

void require_window(std::uint64_t width, std::uint64_t limit) {
    if (width > limit)
        throw std::length_error("search window of " + std::to_string(width) + " values exceeds limit " +
                                std::to_string(limit));
}

ExactInteger lcm_range(std::uint64_t lo, std::uint64_t hi) {
    ExactInteger l = 1;
    for (std::uint64_t v = lo; v <= hi; ++v) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), v);
    return l;
}

// sum_{k=first}^{n} weight(k) C(n,k) / (k + r), weight given as a u64.
template <typename Weight>
ExactRational binomial_quotient_sum(const Instance& inst, std::uint64_t first, Weight weight) {
    const ExactInteger common = lcm_range(first + inst.r, inst.n + inst.r);
    ExactInteger total = 0;
    ExactInteger choose = 1;  // C(n, k)
    ExactInteger share;
    for (std::uint64_t k = 0; k <= inst.n; ++k) {
        if (k > 0) {
            choose *= static_cast<unsigned long>(inst.n - k + 1);
            mpz_divexact_ui(choose.get_mpz_t(), choose.get_mpz_t(), k);
        }
        if (k < first) continue;
        mpz_divexact_ui(share.get_mpz_t(), common.get_mpz_t(), k + inst.r);
        share *= choose;
        share *= static_cast<unsigned long>(weight(k));
        total += share;
    }
    return ExactRational(total, common);
}

}  // namespace

void validate(const Instance& inst) {
    if (inst.r < 1) throw std::invalid_argument("r must be >= 1");
    if (inst.n < 1) throw std::invalid_argument("n must be >= 1");
    if (inst.r > std::numeric_limits<std::uint64_t>::max() - inst.n)
        throw std::invalid_argument("r + n must be below 2^64");
}

ExactRational s_lower(const Instance& inst, std::uint64_t oracle_cutoff) {
    require_oracle(inst, oracle_cutoff);
    return binomial_quotient_sum(inst, 1, [](std::uint64_t k) { return k; });
}

ExactRational s_upper(const Instance& inst, std::uint64_t oracle_cutoff) {
    require_oracle(inst, oracle_cutoff);
    return binomial_quotient_sum(inst, 0, [r = inst.r](std::uint64_t) { return r; });
}

ExactRational s_upper_closed(const Instance& inst, std::uint64_t closed_form_cutoff) {
    validate(inst);
    if (inst.r > closed_form_cutoff)
        throw std::length_error("r = " + std::to_string(inst.r) + " exceeds closed-form cutoff " +
                                std::to_string(closed_form_cutoff));
    if (inst.n > kClosedFormMaxN) throw std::length_error("n too large for closed-form evaluation");
    const std::uint64_t r = inst.r;
    const std::uint64_t n = inst.n;
    const ExactInteger common = lcm_range(n + 1, n + r);
    ExactInteger total = 0;
    ExactInteger power = pow2(n + 1);
    ExactInteger term;
    for (std::uint64_t j = 1; j <= r; ++j, power <<= 1) {
        mpz_divexact_ui(term.get_mpz_t(), common.get_mpz_t(), n + j);
        term *= power - 1;
        term *= binomial(r - 1, j - 1);
        if ((r - j) % 2 == 0)
            total += term;
        else
            total -= term;
    }
    total *= static_cast<unsigned long>(r);
    return ExactRational(total, common);
}

bool complement_check(const Instance& inst, std::uint64_t oracle_cutoff) {
    return s_lower(inst, oracle_cutoff) + s_upper(inst, oracle_cutoff) == ExactRational(pow2(inst.n));
}

std::optional<SylvesterPrime> sylvester_certificate(const Instance& inst, std::uint64_t window_limit) {
    validate(inst);
    const std::uint64_t r = inst.r;
    const std::uint64_t n = inst.n;
    if (n >= r) {
        // A prime p > n >= r with a multiple in [r+1, n+r] must equal that
        // multiple, so scan (n, n+r] for the first prime.
        require_window(r, window_limit);
        for (std::uint64_t p = n + 1; p <= n + r; ++p)
            if (is_prime(p)) return SylvesterPrime{p, p - r};
        return std::nullopt;
    }
    require_window(n, window_limit);
    std::optional<SylvesterPrime> best;
    for (std::uint64_t k = 1; k <= n; ++k) {
        const Factorization f = factorize(k + r);
        const auto it = std::find_if(f.begin(), f.end(), [n](const PrimePower& pe) { return pe.prime > n; });
        if (it != f.end() && (!best || it->prime < best->p)) best = SylvesterPrime{it->prime, k};
    }
    return best;
}

std::optional<OrderCertificate> order_certificate(const Instance& inst, std::uint64_t window_limit) {
    validate(inst);
    require_window(inst.r, window_limit);
    struct Candidate {
        std::uint64_t p;
        std::uint64_t j;
    };
    std::vector<Candidate> candidates;
    for (std::uint64_t j = 1; j <= inst.r; ++j) {
        const std::uint64_t m = inst.n + j;
        if (m < 3) continue;
        for (const auto& pe : factorize(m))
            if (pe.prime > inst.r && pe.prime != 2) candidates.push_back({pe.prime, j});
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.p != b.p ? a.p < b.p : a.j < b.j; });
    for (const auto& c : candidates) {
        const std::uint64_t ord = order2(c.p);
        if ((inst.n + c.j) % ord != 0) return OrderCertificate{c.p, c.j, ord};
    }
    return std::nullopt;
}

std::uint64_t m_lower(const Instance& inst, std::uint64_t window_limit) {
    validate(inst);
    require_window(inst.r, window_limit);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (std::uint64_t j = 1; j <= inst.r && best > 1; ++j)
        best = std::min(best, smooth_divisor(inst.r, inst.n + j));
    return best;
}

namespace {

bool pow2_at_most(std::uint64_t e, std::uint64_t bound) { return e < 64 && (std::uint64_t{1} << e) <= bound; }

}  // namespace

std::optional<SmoothBound> smooth_certificate(const Instance& inst, std::uint64_t window_limit) {
    const std::uint64_t m = m_lower(inst, window_limit);
    if (pow2_at_most(m, inst.r)) return SmoothBound{m};
    return std::nullopt;
}

bool verify(const Instance& inst, const SylvesterPrime& cert) {
    validate(inst);
    return cert.k0 >= 1 && cert.k0 <= inst.n && cert.p > inst.n && is_prime(cert.p) &&
           (cert.k0 + inst.r) % cert.p == 0;
}

bool verify(const Instance& inst, const OrderCertificate& cert) {
    validate(inst);
    if (cert.j < 1 || cert.j > inst.r) return false;
    if (cert.p == 2 || cert.p <= inst.r || !is_prime(cert.p)) return false;
    const std::uint64_t m = inst.n + cert.j;
    return m % cert.p == 0 && m % order2(cert.p) != 0;
}

bool verify(const Instance& inst, const SmoothBound& cert, std::uint64_t window_limit) {
    return pow2_at_most(cert.m_value, inst.r) && m_lower(inst, window_limit) == cert.m_value;
}

bool verify(const Instance& inst, const Certificate& cert) {
    return std::visit([&](const auto& c) { return verify(inst, c); }, cert);
}

Classification classify(const Instance& inst, const Budget& budget) {
    validate(inst);
    std::string skipped;
    const auto attempt = [&](const char* name, auto&& search) -> std::optional<Certificate> {
        try {
            if (auto c = search()) return Certificate{*c};
        } catch (const std::length_error&) {
            skipped += skipped.empty() ? "" : ",";
            skipped += name;
        }
        return std::nullopt;
    };
    const std::uint64_t limit = budget.window_limit;
    if (auto c = attempt("sylvester", [&] { return sylvester_certificate(inst, limit); }))
        return CertifiedNonintegral{*c};
    if (auto c = attempt("order", [&] { return order_certificate(inst, limit); }))
        return CertifiedNonintegral{*c};
    if (auto c = attempt("smooth", [&] { return smooth_certificate(inst, limit); }))
        return CertifiedNonintegral{*c};
    if (inst.n <= budget.oracle_cutoff) {
        ExactRational value = s_lower(inst, budget.oracle_cutoff);
        if (value.is_integer()) return OracleIntegral{std::move(value)};
        return OracleNonintegral{std::move(value)};
    }
    std::string reason = "no certificate; n exceeds oracle cutoff " + std::to_string(budget.oracle_cutoff);
    if (!skipped.empty()) reason += "; window limit skipped " + skipped;
    return Undecided{std::move(reason)};
}

}  // namespace nonint
