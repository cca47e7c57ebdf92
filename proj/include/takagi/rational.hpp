#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "takagi/errors.hpp"

namespace takagi {

/// Exact rational number. Always stored in lowest terms with positive
/// denominator; every operation is exact. Backed by GMP so denominators of
/// thousands of bits (deep level-set work) stay cheap.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose, mirrors integer literals
    Rational(long n, long d);
    explicit Rational(mpz_class n) : v_(std::move(n)) {}
    Rational(mpz_class n, mpz_class d);
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    /// True when the denominator is a power of two.
    bool is_dyadic() const;

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw DomainError("division by zero");
        return Rational(mpq_class(a.v_ / b.v_));
    }
    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    /// Renders "p/q", or just "p" for integers ("0", "1", "8/15").
    std::string str() const;

    /// Truncated decimal rendering with exactly `digits` fractional digits.
    /// Deterministic (truncation toward zero), used only at output boundaries.
    std::string decimal(unsigned digits) const;

    /// Parses "p/q" or "p" (optionally signed). Throws DomainError on
    /// malformed input or zero denominator.
    static Rational parse(std::string_view text);

    /// floor(x), as an integer-valued rational's numerator.
    mpz_class floor() const;

    std::size_t hash() const;

  private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Lowest-terms rational equal to p/q with positive denominator.
/// Throws DomainError when q = 0.
Rational normalize(const mpz_class& p, const mpz_class& q);
inline Rational normalize(long p, long q) { return normalize(mpz_class(p), mpz_class(q)); }

/// Dyadic rational k / 2^n, normalized so that k is odd or n = 0.
struct Dyadic {
    mpz_class k{0};
    unsigned n{0};

    Dyadic() = default;
    Dyadic(mpz_class numerator, unsigned scale);

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.k == b.k && a.n == b.n; }

    /// Renders "k/2^n" ("5/2^4"), or just "k" when n = 0.
    std::string str() const;
    static Dyadic parse(std::string_view text);
};

/// Exact conversion k/2^n -> rational; injective on normalized dyadics.
Rational dyadic_to_rational(const Dyadic& d);

/// Exact conversion when the rational has power-of-two denominator.
std::optional<Dyadic> rational_to_dyadic(const Rational& r);

/// Closed rational interval [lo, hi]; operations are outward-conservative.
struct RatInterval {
    Rational lo;
    Rational hi;

    RatInterval() = default;
    RatInterval(Rational l, Rational h);

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }

    friend bool operator==(const RatInterval& a, const RatInterval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// Exact affine image [a*lo + b, a*hi + b]; requires a >= 0.
RatInterval interval_scale_shift(const RatInterval& iv, const Rational& a, const Rational& b);

/// Hull of two intervals.
RatInterval interval_hull(const RatInterval& a, const RatInterval& b);

/// 2^-n as a rational.
Rational pow2_inv(unsigned n);

/// 2^n as an integer.
mpz_class pow2(unsigned n);

}  // namespace takagi
