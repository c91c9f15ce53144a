#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffdist/bitset.hpp"
#include "ffdist/forms.hpp"
#include "ffdist/vectorspace.hpp"

namespace ffdist {

// A subset of the point indices of a vector space, kept both as a bitset (for
// membership tests inside counting loops) and as a sorted list (for scans).
// The descriptor string regenerates the same set, which is what report
// witnesses store.
class PointSet {
  public:
    PointSet(const VectorSpace& V, IndexBitset bits, std::string descriptor);

    const VectorSpace& space() const { return *V_; }
    uint64_t size() const { return points_.size(); }
    bool contains(uint32_t x) const { return bits_.test(x); }
    const std::vector<uint32_t>& points() const { return points_; }
    const IndexBitset& bits() const { return bits_; }
    const std::string& descriptor() const { return descriptor_; }
    bool is_full() const { return size() == V_->points(); }

  private:
    const VectorSpace* V_;
    IndexBitset bits_;
    std::vector<uint32_t> points_;
    std::string descriptor_;
};

// Descriptor grammar (deterministic: the same descriptor always rebuilds the
// same set, across runs and platforms):
//   full                      every point
//   random:<count>:<seed>     count distinct points drawn with mt19937_64
//   sphere:<t>                level set of the quadratic form (fn required)
//   affine:<j>:<c>            hyperplane { x : x_j = c }
//   explicit:<i1>,<i2>,...    listed point indices
//   complement(<desc>)
//   union(<a>;<b>)
//   inter(<a>;<b>)
// `fn` may be null when no sphere:<t> appears.
PointSet parse_pointset(const VectorSpace& V, const DistanceFn* fn, const std::string& desc);

}  // namespace ffdist
