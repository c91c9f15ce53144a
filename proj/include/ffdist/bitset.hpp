#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace ffdist {

// Flat bitset over point indices [0, n). Hot path of every counting kernel,
// so membership is a single shift/mask.
class IndexBitset {
  public:
    IndexBitset() : n_(0) {}
    explicit IndexBitset(std::size_t n) : n_(n), blocks_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    void set(std::size_t i) { blocks_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { blocks_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (blocks_[i >> 6] >> (i & 63)) & 1; }

    std::size_t count() const {
        std::size_t c = 0;
        for (uint64_t b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
        return c;
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
            uint64_t b = blocks_[bi];
            while (b) {
                unsigned tz = static_cast<unsigned>(std::countr_zero(b));
                fn(static_cast<uint32_t>((bi << 6) + tz));
                b &= b - 1;
            }
        }
    }

    bool operator==(const IndexBitset&) const = default;

  private:
    std::size_t n_;
    std::vector<uint64_t> blocks_;
};

}  // namespace ffdist
