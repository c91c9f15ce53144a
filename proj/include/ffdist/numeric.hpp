#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "ffdist/error.hpp"

namespace ffdist {

// Exact arithmetic: GMP throughout. Counting kernels use unsigned __int128
// when a precomputed bound shows it suffices, mpz otherwise.
using Int = mpz_class;
using Rat = mpq_class;
using u128 = unsigned __int128;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
    return r;  // already canonical when base is
}

// q^e for possibly negative e, as an exact rational.
inline Rat q_power(long q, long e) {
    Int num = int_pow(Int(q), static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return Rat(num);
    Rat r(1, num);
    r.canonicalize();
    return r;
}

inline Int to_int(u128 v) {
    Int r = static_cast<unsigned long>(v >> 64);
    r <<= 64;
    r += static_cast<unsigned long>(v & 0xffffffffffffffffULL);
    return r;
}

inline bool fits_u128(const Int& v) { return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 126; }

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// sign of a - b * q^(num/den), all of a, b >= 0, q >= 2, den >= 1.
// Exact: raises both sides to the den-th power and clears negative exponents.
inline int cmp_rat_qpow(const Rat& a, const Rat& b, long q, long num, long den) {
    if (den <= 0) throw ZeroParameterError("cmp_rat_qpow: den must be positive");
    if (sgn(a) < 0 || sgn(b) < 0) throw IndexOutOfRangeError("cmp_rat_qpow: needs nonnegative values");
    if (sgn(b) == 0) return sgn(a) > 0 ? 1 : 0;
    if (sgn(a) == 0) return -1;
    Rat lhs = rat_pow(a, static_cast<unsigned long>(den));
    Rat rhs = rat_pow(b, static_cast<unsigned long>(den));
    if (num >= 0) {
        rhs *= q_power(q, num);
    } else {
        lhs *= q_power(q, -num);
    }
    return cmp(lhs, rhs);
}

// Element of Q(sqrt(q)): value a + b*sqrt(q). When q is a perfect square the
// radical collapses and b stays 0. Supports the exact comparisons needed for
// bounds whose only irrationality is a half-integer power of q.
class QSqrt {
  public:
    QSqrt(long q, Rat a, Rat b) : q_(q), a_(std::move(a)), b_(std::move(b)) {
        long r = static_cast<long>(std::sqrt(static_cast<double>(q)));
        while (r * r > q) --r;
        while ((r + 1) * (r + 1) <= q) ++r;
        if (r * r == q) {
            a_ += b_ * r;
            b_ = 0;
            root_ = r;
        } else {
            root_ = 0;
        }
    }
    static QSqrt of(long q, Rat a) { return QSqrt(q, std::move(a), Rat(0)); }

    // rational * q^(e/2) for integer e (possibly negative)
    static QSqrt q_half_power(long q, const Rat& coeff, long e) {
        long fl = (e >= 0) ? e / 2 : -((-e + 1) / 2);  // floor(e/2)
        long rem = e - 2 * fl;                         // 0 or 1
        Rat base = coeff * q_power(q, fl);
        if (rem == 0) return QSqrt(q, base, Rat(0));
        return QSqrt(q, Rat(0), base);
    }

    QSqrt operator+(const QSqrt& o) const { return QSqrt(q_, a_ + o.a_, b_ + o.b_); }
    QSqrt operator-(const QSqrt& o) const { return QSqrt(q_, a_ - o.a_, b_ - o.b_); }
    QSqrt operator*(const Rat& r) const { return QSqrt(q_, a_ * r, b_ * r); }
    QSqrt operator*(const QSqrt& o) const {
        return QSqrt(q_, a_ * o.a_ + b_ * o.b_ * q_, a_ * o.b_ + b_ * o.a_);
    }

    // sign of the real value a + b*sqrt(q)
    int sign() const {
        int sa = sgn(a_), sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 vs b^2 q
        int c = cmp(a_ * a_, b_ * b_ * q_);
        // |a| > |b|sqrt(q) -> sign of a, else sign of b; equal impossible (sqrt irrational here)
        if (c == 0) return 0;
        return (c > 0) ? sa : sb;
    }
    int cmp_value(const QSqrt& o) const { return (*this - o).sign(); }

    double to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(q_)); }
    const Rat& rational_part() const { return a_; }
    const Rat& radical_part() const { return b_; }

  private:
    long q_;
    Rat a_, b_;
    long root_;
};

}  // namespace ffdist
