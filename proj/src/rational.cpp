#include "takagi/rational.hpp"

#include "takagi/caps.hpp"

#include <atomic>

#include <ostream>
#include <sstream>

namespace takagi {

namespace {
std::atomic<std::size_t> g_enumeration_cap{20'000'000};
std::atomic<std::size_t> g_bracket_cap{1'000'000};
}  // namespace

std::size_t enumeration_cap() { return g_enumeration_cap.load(); }
void set_enumeration_cap(std::size_t cap) { g_enumeration_cap.store(cap); }
std::size_t bracket_cap() { return g_bracket_cap.load(); }
void set_bracket_cap(std::size_t cap) { g_bracket_cap.store(cap); }

Rational::Rational(long n, long d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(mpz_class n, mpz_class d) {
    if (sgn(d) == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(std::move(n), std::move(d));
    v_.canonicalize();
}

bool Rational::is_dyadic() const {
    mpz_class d = v_.get_den();
    // den is a power of two iff den & (den-1) == 0 (den >= 1 always)
    mpz_class m = d & (d - 1);
    return sgn(m) == 0;
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::decimal(unsigned digits) const {
    mpz_class n = v_.get_num();
    mpz_class d = v_.get_den();
    bool neg = sgn(n) < 0;
    if (neg) n = -n;
    mpz_class ip = n / d;
    mpz_class rem = n % d;
    std::string out = (neg && (sgn(ip) != 0 || sgn(rem) != 0)) ? "-" : "";
    out += ip.get_str();
    if (digits == 0) return out;
    out += '.';
    for (unsigned i = 0; i < digits; ++i) {
        rem *= 10;
        mpz_class q = rem / d;
        rem %= d;
        out += static_cast<char>('0' + q.get_ui());
    }
    return out;
}

Rational Rational::parse(std::string_view text) {
    if (text.empty()) throw DomainError("empty rational literal");
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(mpz_class(s));
        }
        mpz_class p(s.substr(0, slash));
        mpz_class q(s.substr(slash + 1));
        return normalize(p, q);
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed rational literal: " + s);
    }
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

std::size_t Rational::hash() const {
    // cheap mix of low limbs; collisions resolved by exact equality
    std::size_t h = mpz_get_ui(v_.get_num().get_mpz_t());
    std::size_t d = mpz_get_ui(v_.get_den().get_mpz_t());
    return h * 0x9e3779b97f4a7c15ULL ^ (d + 0x7f4a7c15U);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational normalize(const mpz_class& p, const mpz_class& q) {
    if (sgn(q) == 0) throw DomainError("rational with zero denominator");
    return Rational(p, q);
}

Dyadic::Dyadic(mpz_class numerator, unsigned scale) : k(std::move(numerator)), n(scale) {
    if (sgn(k) == 0) {
        n = 0;
        return;
    }
    while (n > 0 && mpz_even_p(k.get_mpz_t())) {
        k >>= 1;
        --n;
    }
}

std::string Dyadic::str() const {
    if (n == 0) return k.get_str();
    return k.get_str() + "/2^" + std::to_string(n);
}

Dyadic Dyadic::parse(std::string_view text) {
    std::string s(text);
    auto pos = s.find("/2^");
    try {
        if (pos == std::string::npos) return Dyadic(mpz_class(s), 0);
        mpz_class k(s.substr(0, pos));
        unsigned long n = std::stoul(s.substr(pos + 3));
        return Dyadic(k, static_cast<unsigned>(n));
    } catch (const std::exception&) {
        throw DomainError("malformed dyadic literal: " + s);
    }
}

Rational dyadic_to_rational(const Dyadic& d) {
    return Rational(d.k, pow2(d.n));
}

std::optional<Dyadic> rational_to_dyadic(const Rational& r) {
    if (!r.is_dyadic()) return std::nullopt;
    mpz_class den = r.den();
    unsigned n = static_cast<unsigned>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
    return Dyadic(r.num(), n);
}

RatInterval::RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) throw DomainError("interval with hi < lo");
}

RatInterval interval_scale_shift(const RatInterval& iv, const Rational& a, const Rational& b) {
    if (a.sign() < 0) throw DomainError("interval_scale_shift requires a >= 0");
    return RatInterval(a * iv.lo + b, a * iv.hi + b);
}

RatInterval interval_hull(const RatInterval& a, const RatInterval& b) {
    return RatInterval(a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi);
}

Rational pow2_inv(unsigned n) {
    return Rational(mpz_class(1), pow2(n));
}

mpz_class pow2(unsigned n) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, n);
    return p;
}

}  // namespace takagi
