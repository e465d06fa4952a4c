#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tleaf {

// Exact rational. Small values live in two int64 words; anything that does
// not fit is promoted to an mpq_class and demoted again when it shrinks.
class Rational {
public:
    Rational() = default;
    Rational(int v) : n_(v) {}
    Rational(long v) : n_(v) {}
    Rational(long long v) : n_(v) {}
    Rational(long long n, long long d) { assign128(n, d); }
    explicit Rational(const mpq_class& q) { from_mpq(q); }

    static Rational parse(const std::string& s) {
        mpq_class q;
        if (s.empty() || q.set_str(s, 10) != 0)
            throw std::invalid_argument("bad rational: " + s);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
        q.canonicalize();
        return Rational(q);
    }

    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }
    int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }
    bool is_small() const { return !big_; }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q;
        mpz_set_si(q.get_num_mpz_t(), n_);
        mpz_set_si(q.get_den_mpz_t(), d_);
        return q;
    }

    // Only valid for small integers; used for Weyl/root data.
    long long to_int() const {
        if (!is_integer()) throw std::domain_error("not an integer: " + str());
        if (big_) throw std::overflow_error("integer too large");
        return n_;
    }

    std::string str() const {
        if (big_) return big_->get_str();
        if (d_ == 1) return std::to_string(n_);
        return std::to_string(n_) + "/" + std::to_string(d_);
    }

    Rational operator-() const {
        if (big_) return Rational(mpq_class(-*big_));
        if (n_ == INT64_MIN) return Rational(mpq_class(-to_mpq()));
        Rational r;
        r.n_ = -n_;
        r.d_ = d_;
        return r;
    }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("division by zero");
        if (big_) return Rational(mpq_class(1 / *big_));
        Rational r;
        r.assign128(d_, n_);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.d_ == 1 && b.d_ == 1) {
                long long s;
                if (!__builtin_add_overflow(a.n_, b.n_, &s)) return Rational(s);
                return from128((__int128)a.n_ + b.n_, 1);
            }
            if (a.d_ == b.d_) return from128((__int128)a.n_ + b.n_, a.d_);
            return from128((__int128)a.n_ * b.d_ + (__int128)b.n_ * a.d_, (__int128)a.d_ * b.d_);
        }
        return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

    friend Rational operator*(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.n_ == 0 || b.n_ == 0) return Rational();
            if (a.d_ == 1 && b.d_ == 1) {
                long long p;
                if (!__builtin_mul_overflow(a.n_, b.n_, &p)) return Rational(p);
                return from128((__int128)a.n_ * b.n_, 1);
            }
            long long g1 = gcd64(a.n_, b.d_), g2 = gcd64(b.n_, a.d_);
            __int128 num = (__int128)(a.n_ / g1) * (b.n_ / g2);
            __int128 den = (__int128)(a.d_ / g2) * (b.d_ / g1);
            return from_reduced128(num, den);
        }
        return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
    }
    friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // canonical: a small value is never stored big
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return (a - b).sign() < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    long long n_ = 0;
    long long d_ = 1;
    std::shared_ptr<const mpq_class> big_;

    static long long gcd64(long long a, long long b) {
        unsigned long long x = a < 0 ? 0ull - (unsigned long long)a : (unsigned long long)a;
        unsigned long long y = b < 0 ? 0ull - (unsigned long long)b : (unsigned long long)b;
        while (y) {
            unsigned long long t = x % y;
            x = y;
            y = t;
        }
        return (long long)x;
    }

    static unsigned __int128 gcd128(unsigned __int128 x, unsigned __int128 y) {
        while (y) {
            unsigned __int128 t = x % y;
            x = y;
            y = t;
        }
        return x;
    }

    static bool fits(__int128 v) { return v >= INT64_MIN && v <= INT64_MAX; }

    static mpz_class z128(__int128 v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? (unsigned __int128)0 - (unsigned __int128)v : (unsigned __int128)v;
        unsigned long long words[2] = {(unsigned long long)u, (unsigned long long)(u >> 64)};
        mpz_class z;
        mpz_import(z.get_mpz_t(), 2, -1, sizeof(unsigned long long), 0, 0, words);
        if (neg) z = -z;
        return z;
    }

    // num/den already coprime, den > 0
    static Rational from_reduced128(__int128 num, __int128 den) {
        Rational r;
        if (fits(num) && fits(den)) {
            r.n_ = (long long)num;
            r.d_ = (long long)den;
            return r;
        }
        mpq_class q(z128(num), z128(den));
        r.big_ = std::make_shared<const mpq_class>(q);
        return r;
    }

    static Rational from128(__int128 num, __int128 den) {
        Rational r;
        r.assign128(num, den);
        return r;
    }

    void assign128(__int128 num, __int128 den) {
        if (den == 0) throw std::domain_error("zero denominator");
        if (num == 0) {
            n_ = 0;
            d_ = 1;
            big_.reset();
            return;
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
        unsigned __int128 un = num < 0 ? (unsigned __int128)0 - (unsigned __int128)num : (unsigned __int128)num;
        unsigned __int128 g = gcd128(un, (unsigned __int128)den);
        if (g != 1) {
            num /= (__int128)g;
            den /= (__int128)g;
        }
        *this = from_reduced128(num, den);
    }

    void from_mpq(const mpq_class& q) {
        if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t())) {
            n_ = mpz_get_si(q.get_num_mpz_t());
            d_ = mpz_get_si(q.get_den_mpz_t());
            big_.reset();
        } else {
            n_ = 0;
            d_ = 1;
            big_ = std::make_shared<const mpq_class>(q);
        }
    }
};

}  // namespace tleaf
