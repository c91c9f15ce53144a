#pragma once

#include <cstdint>
#include <vector>

#include "ffdist/error.hpp"
#include "ffdist/field.hpp"

namespace ffdist {

// F_q^d with points addressed by index in [0, q^d): base-q little-endian
// digit encoding of coordinate vectors. Pointwise group operations go through
// two precomputed half-tables (low digits, high digits), so vector addition
// is two lookups; this is the inner loop of every counting kernel.
class VectorSpace {
  public:
    static constexpr uint64_t kMaxPoints = 1ULL << 24;

    VectorSpace(const FiniteField& f, int d) : F_(f), d_(d) {
        if (d < 1) throw ZeroParameterError("dimension must be >= 1");
        n_ = 1;
        for (int i = 0; i < d; ++i) {
            n_ *= static_cast<uint64_t>(f.q());
            if (n_ > kMaxPoints) throw TooLargeError("vector space exceeds the supported size cap");
        }
        d_lo_ = d / 2;
        lo_size_ = 1;
        for (int i = 0; i < d_lo_; ++i) lo_size_ *= static_cast<uint64_t>(f.q());
        hi_size_ = n_ / lo_size_;
        if (lo_size_ * lo_size_ + hi_size_ * hi_size_ <= (1ULL << 26)) {
            build_half(lo_add_, static_cast<uint32_t>(lo_size_), d_lo_);
            build_half(hi_add_, static_cast<uint32_t>(hi_size_), d_ - d_lo_);
            build_half_dot(lo_dot_, static_cast<uint32_t>(lo_size_), d_lo_);
            build_half_dot(hi_dot_, static_cast<uint32_t>(hi_size_), d_ - d_lo_);
        }
        neg_.resize(n_);
        for (uint64_t x = 0; x < n_; ++x) {
            uint64_t r = 0, mult = 1, v = x;
            for (int i = 0; i < d_; ++i) {
                r += static_cast<uint64_t>(F_.neg(static_cast<uint32_t>(v % F_.q()))) * mult;
                mult *= static_cast<uint64_t>(F_.q());
                v /= static_cast<uint64_t>(F_.q());
            }
            neg_[x] = static_cast<uint32_t>(r);
        }
    }

    const FiniteField& field() const { return F_; }
    int dim() const { return d_; }
    uint64_t points() const { return n_; }

    void require_range(uint32_t x) const {
        if (x >= n_) throw IndexOutOfRangeError("point index out of range");
    }

    uint32_t encode(const std::vector<uint32_t>& coords) const {
        if (static_cast<int>(coords.size()) != d_) throw DimensionMismatchError("coordinate count != dim");
        uint64_t r = 0, mult = 1;
        for (int i = 0; i < d_; ++i) {
            F_.require_range(coords[static_cast<std::size_t>(i)]);
            r += static_cast<uint64_t>(coords[static_cast<std::size_t>(i)]) * mult;
            mult *= static_cast<uint64_t>(F_.q());
        }
        return static_cast<uint32_t>(r);
    }
    std::vector<uint32_t> decode(uint32_t x) const {
        std::vector<uint32_t> c(static_cast<std::size_t>(d_));
        uint64_t v = x;
        for (int i = 0; i < d_; ++i) {
            c[static_cast<std::size_t>(i)] = static_cast<uint32_t>(v % F_.q());
            v /= static_cast<uint64_t>(F_.q());
        }
        return c;
    }

    uint32_t add(uint32_t x, uint32_t y) const {
        if (!lo_add_.empty()) {
            uint32_t lo = lo_add_.empty() ? 0 : lo_add_[(x % lo_size_) * lo_size_ + (y % lo_size_)];
            uint32_t hi = hi_add_[(x / lo_size_) * hi_size_ + (y / lo_size_)];
            return static_cast<uint32_t>(hi * lo_size_ + lo);
        }
        return add_slow(x, y);
    }
    uint32_t sub(uint32_t x, uint32_t y) const { return add(x, neg_[y]); }
    uint32_t neg_point(uint32_t x) const { return neg_[x]; }

    // standard dot product sum_i x_i y_i in F_q
    uint32_t dot(uint32_t x, uint32_t y) const {
        if (!lo_dot_.empty()) {
            return F_.add(lo_dot_[(x % lo_size_) * lo_size_ + (y % lo_size_)],
                          hi_dot_[(x / lo_size_) * hi_size_ + (y / lo_size_)]);
        }
        uint32_t s = 0;
        uint64_t vx = x, vy = y;
        for (int i = 0; i < d_; ++i) {
            s = F_.add(s, F_.mul(static_cast<uint32_t>(vx % F_.q()), static_cast<uint32_t>(vy % F_.q())));
            vx /= static_cast<uint64_t>(F_.q());
            vy /= static_cast<uint64_t>(F_.q());
        }
        return s;
    }

    uint32_t scale(uint32_t c, uint32_t x) const {
        uint64_t r = 0, mult = 1, v = x;
        for (int i = 0; i < d_; ++i) {
            r += static_cast<uint64_t>(F_.mul(c, static_cast<uint32_t>(v % F_.q()))) * mult;
            mult *= static_cast<uint64_t>(F_.q());
            v /= static_cast<uint64_t>(F_.q());
        }
        return static_cast<uint32_t>(r);
    }

  private:
    uint32_t add_slow(uint32_t x, uint32_t y) const {
        uint64_t r = 0, mult = 1, vx = x, vy = y;
        for (int i = 0; i < d_; ++i) {
            r += static_cast<uint64_t>(
                     F_.add(static_cast<uint32_t>(vx % F_.q()), static_cast<uint32_t>(vy % F_.q()))) *
                 mult;
            mult *= static_cast<uint64_t>(F_.q());
            vx /= static_cast<uint64_t>(F_.q());
            vy /= static_cast<uint64_t>(F_.q());
        }
        return static_cast<uint32_t>(r);
    }

    void build_half(std::vector<uint32_t>& table, uint32_t size, int digits) {
        table.resize(static_cast<std::size_t>(size) * size);
        for (uint32_t x = 0; x < size; ++x)
            for (uint32_t y = 0; y < size; ++y) {
                uint64_t r = 0, mult = 1, vx = x, vy = y;
                for (int i = 0; i < digits; ++i) {
                    r += static_cast<uint64_t>(
                             F_.add(static_cast<uint32_t>(vx % F_.q()), static_cast<uint32_t>(vy % F_.q()))) *
                         mult;
                    mult *= static_cast<uint64_t>(F_.q());
                    vx /= static_cast<uint64_t>(F_.q());
                    vy /= static_cast<uint64_t>(F_.q());
                }
                table[static_cast<std::size_t>(x) * size + y] = static_cast<uint32_t>(r);
            }
    }

    void build_half_dot(std::vector<uint32_t>& table, uint32_t size, int digits) {
        table.resize(static_cast<std::size_t>(size) * size);
        for (uint32_t x = 0; x < size; ++x)
            for (uint32_t y = 0; y < size; ++y) {
                uint32_t s = 0;
                uint64_t vx = x, vy = y;
                for (int i = 0; i < digits; ++i) {
                    s = F_.add(s, F_.mul(static_cast<uint32_t>(vx % F_.q()),
                                         static_cast<uint32_t>(vy % F_.q())));
                    vx /= static_cast<uint64_t>(F_.q());
                    vy /= static_cast<uint64_t>(F_.q());
                }
                table[static_cast<std::size_t>(x) * size + y] = s;
            }
    }

    const FiniteField& F_;
    int d_;
    uint64_t n_;
    int d_lo_;
    uint64_t lo_size_, hi_size_;
    std::vector<uint32_t> lo_add_, hi_add_;
    std::vector<uint32_t> lo_dot_, hi_dot_;
    std::vector<uint32_t> neg_;
};

}  // namespace ffdist
