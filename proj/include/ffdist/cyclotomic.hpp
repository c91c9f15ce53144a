#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ffdist/error.hpp"
#include "ffdist/numeric.hpp"

namespace ffdist {

// Element of Z[zeta_p], p odd prime, stored as integer coefficients of
// 1, zeta, ..., zeta^(p-1). Canonical form pins c[p-1] = 0: the relation
// sum_j zeta^j = 0 lets us subtract c[p-1] from every coefficient, and with
// that convention equality of values is equality of coefficient vectors.
// C is the coefficient type: long long for character sums at desk scale,
// Int (mpz) where powers blow past 64 bits (spectral cycle counts).
template <class C>
class Cyclo {
  public:
    Cyclo() : p_(0) {}
    explicit Cyclo(int p, C constant = C(0)) : p_(p), c_(static_cast<std::size_t>(p), C(0)) {
        if (p < 3) throw ZeroParameterError("cyclotomic order must be an odd prime >= 3");
        c_[0] = constant;
    }

    static Cyclo root(int p, long exponent) {
        Cyclo z(p);
        long e = exponent % p;
        if (e < 0) e += p;
        z.c_[static_cast<std::size_t>(e)] += C(1);
        z.reduce();
        return z;
    }

    int order() const { return p_; }
    const std::vector<C>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const C& v : c_)
            if (v != C(0)) return false;
        return true;
    }
    bool is_integer() const {
        for (std::size_t j = 1; j < c_.size(); ++j)
            if (c_[j] != C(0)) return false;
        return true;
    }
    C integer_value() const {
        if (!is_integer()) throw NonCanonicalFormError("cyclotomic value is not a rational integer");
        return c_[0];
    }

    Cyclo& operator+=(const Cyclo& o) {
        check(o);
        for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
        return *this;
    }
    Cyclo& operator-=(const Cyclo& o) {
        check(o);
        for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
        return *this;
    }
    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
    Cyclo operator-() const {
        Cyclo r = *this;
        for (C& v : r.c_) v = -v;
        return r;
    }

    Cyclo& operator*=(const C& s) {
        for (C& v : c_) v *= s;
        return *this;
    }
    friend Cyclo operator*(Cyclo a, const C& s) { return a *= s; }

    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        a.check(b);
        Cyclo r(a.p_);
        const std::size_t p = static_cast<std::size_t>(a.p_);
        for (std::size_t i = 0; i < p; ++i) {
            if (a.c_[i] == C(0)) continue;
            for (std::size_t j = 0; j < p; ++j) {
                if (b.c_[j] == C(0)) continue;
                std::size_t k = i + j;
                if (k >= p) k -= p;
                r.c_[k] += a.c_[i] * b.c_[j];
            }
        }
        r.reduce();
        return r;
    }

    Cyclo pow(unsigned long e) const {
        Cyclo r(p_, C(1));
        Cyclo base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    Cyclo conj() const {  // complex conjugation: zeta -> zeta^(p-1)
        Cyclo r(p_);
        const std::size_t p = static_cast<std::size_t>(p_);
        for (std::size_t j = 0; j < p; ++j) {
            std::size_t k = (p - j) % p;
            r.c_[k] += c_[j];
        }
        r.reduce();
        return r;
    }

    // x += root(e) without a temporary; the workhorse of character sums.
    void add_root(long exponent) {
        long e = exponent % p_;
        if (e < 0) e += p_;
        c_[static_cast<std::size_t>(e)] += C(1);
        if (e == p_ - 1) reduce();
    }
    void add_root_scaled(long exponent, const C& s) {
        long e = exponent % p_;
        if (e < 0) e += p_;
        c_[static_cast<std::size_t>(e)] += s;
        if (e == p_ - 1) reduce();
    }

    // exact division by a rational integer, asserting divisibility
    Cyclo div_exact(const C& k) const {
        Cyclo r = *this;
        for (C& v : r.c_) {
            if (v % k != C(0)) throw NonCanonicalFormError("cyclotomic division is not exact");
            v /= k;
        }
        return r;
    }

    bool operator==(const Cyclo& o) const { return p_ == o.p_ && c_ == o.c_; }

    std::complex<double> embed() const {
        std::complex<double> z(0.0, 0.0);
        const double w = 2.0 * 3.14159265358979323846 / p_;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            double cj = coeff_double(c_[j]);
            if (cj != 0.0) z += cj * std::complex<double>(std::cos(w * j), std::sin(w * j));
        }
        return z;
    }

    std::string str() const {
        std::string s;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == C(0)) continue;
            if (!s.empty()) s += " + ";
            s += coeff_str(c_[j]);
            if (j > 0) s += "*z^" + std::to_string(j);
        }
        return s.empty() ? "0" : s;
    }

  private:
    void check(const Cyclo& o) const {
        if (p_ != o.p_) throw DimensionMismatchError("cyclotomic orders differ");
    }
    void reduce() {
        C last = c_[static_cast<std::size_t>(p_ - 1)];
        if (last == C(0)) return;
        for (C& v : c_) v -= last;
    }
    static double coeff_double(long long v) { return static_cast<double>(v); }
    static double coeff_double(const Int& v) { return v.get_d(); }
    static std::string coeff_str(long long v) { return std::to_string(v); }
    static std::string coeff_str(const Int& v) { return v.get_str(); }

    int p_;
    std::vector<C> c_;
};

using CyclotomicInt = Cyclo<long long>;
using CyclotomicBig = Cyclo<Int>;

inline CyclotomicBig widen(const CyclotomicInt& x) {
    // canonical form (c[p-1] = 0) is preserved by a plain coefficient copy
    CyclotomicBig r(x.order());
    for (std::size_t j = 0; j + 1 < x.coeffs().size(); ++j)
        r.add_root_scaled(static_cast<long>(j), Int(static_cast<long>(x.coeffs()[j])));
    return r;
}

}  // namespace ffdist
