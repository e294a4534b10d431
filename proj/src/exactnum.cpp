#include "nonint/exactnum.hpp"

#include <stdexcept>
#include <utility>

#include "nonint/ntkernel.hpp"

namespace nonint {

ExactRational::ExactRational(const ExactInteger& value) : value_(value) {}

ExactRational::ExactRational(ExactInteger numerator, ExactInteger denominator) {
    if (denominator == 0) throw std::invalid_argument("ExactRational: zero denominator");
    value_.get_num() = std::move(numerator);
    value_.get_den() = std::move(denominator);
    value_.canonicalize();
}

ExactRational::ExactRational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

ExactRational ExactRational::reduced() const { return ExactRational(numerator(), denominator()); }

ExactRational& ExactRational::operator+=(const ExactRational& rhs) {
    value_ += rhs.value_;
    return *this;
}
ExactRational& ExactRational::operator-=(const ExactRational& rhs) {
    value_ -= rhs.value_;
    return *this;
}
ExactRational& ExactRational::operator*=(const ExactRational& rhs) {
    value_ *= rhs.value_;
    return *this;
}
ExactRational& ExactRational::operator/=(const ExactRational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("ExactRational: division by zero");
    value_ /= rhs.value_;
    return *this;
}

std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

ExactInteger binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    ExactInteger out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

namespace {

void require_prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("valuation: p must be prime");
}

long valuation_nonzero(std::uint64_t p, const mpz_class& x) {
    mpz_class rest = x;
    const mpz_class base = to_exact(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), base.get_mpz_t()));
}

}  // namespace

long valuation(std::uint64_t p, const ExactRational& x) {
    require_prime(p);
    if (x.is_zero()) throw std::invalid_argument("valuation: x must be nonzero");
    return valuation_nonzero(p, x.raw().get_num()) - valuation_nonzero(p, x.raw().get_den());
}

long valuation(std::uint64_t p, const ExactInteger& x) {
    require_prime(p);
    if (x == 0) throw std::invalid_argument("valuation: x must be nonzero");
    return valuation_nonzero(p, x);
}

std::strong_ordering power_compare(const ExactInteger& a, const ExactInteger& b, unsigned long p,
                                   unsigned long q) {
    if (a < 1 || b < 1 || p < 1 || q < 1)
        throw std::invalid_argument("power_compare: arguments must be positive");
    ExactInteger lhs;
    ExactInteger rhs;
    mpz_pow_ui(lhs.get_mpz_t(), a.get_mpz_t(), q);
    mpz_pow_ui(rhs.get_mpz_t(), b.get_mpz_t(), p);
    const int c = cmp(lhs, rhs);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

ExactInteger floor_power(const ExactInteger& b, unsigned long p, unsigned long q) {
    if (b < 1 || q < 1) throw std::invalid_argument("floor_power: b and q must be positive");
    ExactInteger target;
    mpz_pow_ui(target.get_mpz_t(), b.get_mpz_t(), p);
    ExactInteger root;
    mpz_root(root.get_mpz_t(), target.get_mpz_t(), q);  // truncated q-th root is exact floor
    return root;
}

ExactInteger pow2(unsigned long e) {
    ExactInteger out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, e);
    return out;
}

ExactInteger to_exact(std::uint64_t v) {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return ExactInteger(static_cast<unsigned long>(v));
}

std::uint64_t to_u64(const ExactInteger& v) {
    if (v < 0 || !v.fits_ulong_p()) throw std::out_of_range("to_u64: value outside [0, 2^64)");
    return v.get_ui();
}

}  // namespace nonint
