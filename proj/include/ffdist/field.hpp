#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ffdist/cyclotomic.hpp"
#include "ffdist/error.hpp"

namespace ffdist {

// GF(p^k), p an odd prime. Elements are indices in [0, q): index
// sum_i c_i p^i encodes the polynomial sum_i c_i x^i (little-endian base-p
// digits), so index<->element is O(1) and enumeration order is fixed.
// The modulus is the lexicographically least monic irreducible of degree k
// (non-leading coefficient vector compared as a little-endian base-p integer),
// making construction deterministic.
//
// All tables are built once in the constructor; instances are immutable and
// safe to share across threads.
class FiniteField {
  public:
    static constexpr long kMaxQ = 1L << 20;

    FiniteField(long p, int k);

    long p() const { return p_; }
    int k() const { return k_; }
    long q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }  // k+1 coeffs, monic
    std::string modulus_str() const;

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg_[b]); }
    uint32_t mul(uint32_t a, uint32_t b) const {
        if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * q_ + b];
        return mul_slow(a, b);
    }
    uint32_t neg(uint32_t a) const { return neg_[a]; }
    uint32_t inv(uint32_t a) const {
        if (a == 0) throw ZeroParameterError("inverse of zero");
        return inv_[a];
    }
    uint32_t pow(uint32_t a, unsigned long e) const;
    uint32_t frobenius(uint32_t a) const { return frob_[a]; }

    // scalar embedding of an ordinary integer (n mod p as a constant poly)
    uint32_t from_integer(long n) const {
        long r = n % p_;
        if (r < 0) r += p_;
        return static_cast<uint32_t>(r);
    }

    // absolute trace, a value in [0, p)
    int trace(uint32_t a) const { return trace_[a]; }

    // canonical additive character chi(a) = zeta_p^{Tr(a)}
    CyclotomicInt chi(uint32_t a) const { return CyclotomicInt::root(static_cast<int>(p_), trace_[a]); }

    // quadratic character: 0 at 0, +1 on squares, -1 on non-squares
    int eta(uint32_t a) const { return eta_[a]; }

    // some b with b*b == a, or UINT32_MAX when a is a non-square
    uint32_t sqrt(uint32_t a) const { return sqrt_[a]; }
    uint32_t least_nonsquare() const { return nonsquare_; }

    bool check_range(uint32_t a) const { return a < static_cast<uint32_t>(q_); }
    void require_range(uint32_t a) const {
        if (!check_range(a)) throw IndexOutOfRangeError("field element index out of range");
    }

  private:
    uint32_t mul_slow(uint32_t a, uint32_t b) const;
    void build_tables();

    long p_;
    int k_;
    long q_;
    std::vector<int> modulus_;
    std::vector<std::vector<int>> reduction_;  // x^(k+i) mod modulus, i in [0, k)
    std::vector<uint32_t> mul_table_;          // q*q when q <= 512, else empty
    std::vector<uint32_t> neg_, inv_, frob_;
    std::vector<int> trace_;
    std::vector<int8_t> eta_vec_;
    const int8_t* eta_;  // alias into eta_vec_
    std::vector<uint32_t> sqrt_;
    uint32_t nonsquare_;
};

// Value-type element for ergonomic code and the python layer. Counting
// kernels work on raw indices instead.
class FieldElement {
  public:
    FieldElement(const FiniteField& f, uint32_t idx) : f_(&f), idx_(idx) { f.require_range(idx); }

    uint32_t index() const { return idx_; }
    const FiniteField& field() const { return *f_; }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        a.match(b);
        return FieldElement(*a.f_, a.f_->add(a.idx_, b.idx_));
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        a.match(b);
        return FieldElement(*a.f_, a.f_->sub(a.idx_, b.idx_));
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        a.match(b);
        return FieldElement(*a.f_, a.f_->mul(a.idx_, b.idx_));
    }
    FieldElement inverse() const { return FieldElement(*f_, f_->inv(idx_)); }
    FieldElement operator-() const { return FieldElement(*f_, f_->neg(idx_)); }
    bool operator==(const FieldElement& o) const { return f_ == o.f_ && idx_ == o.idx_; }

  private:
    void match(const FieldElement& o) const {
        if (f_ != o.f_) throw DimensionMismatchError("elements of different fields");
    }
    const FiniteField* f_;
    uint32_t idx_;
};

}  // namespace ffdist
