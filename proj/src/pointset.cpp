#include "ffdist/pointset.hpp"

#include <numeric>
#include <random>

#include "ffdist/error.hpp"

namespace ffdist {

PointSet::PointSet(const VectorSpace& V, IndexBitset bits, std::string descriptor)
    : V_(&V), bits_(std::move(bits)), descriptor_(std::move(descriptor)) {
    points_.reserve(bits_.count());
    bits_.for_each([&](uint32_t x) { points_.push_back(x); });
}

namespace {

IndexBitset build_bits(const VectorSpace& V, const DistanceFn* fn, const std::string& desc);

// split "a;b" at the single top-level ';'
std::pair<std::string, std::string> split_args(const std::string& s, const std::string& ctx) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == ';' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
    }
    throw ConfigParseError("expected two ';'-separated set descriptors in: " + ctx);
}

long parse_long(const std::string& s, const std::string& ctx) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigParseError("bad number '" + s + "' in set descriptor: " + ctx);
    }
}

IndexBitset random_subset(const VectorSpace& V, uint64_t count, uint64_t seed) {
    const uint64_t n = V.points();
    if (count > n) throw IndexOutOfRangeError("random subset larger than the space");
    IndexBitset bits(n);
    std::mt19937_64 rng(seed);
    // mt19937_64 output is pinned by the standard; avoiding std distributions
    // keeps the draw identical across library implementations.
    if (count * 4 < n) {
        uint64_t placed = 0;
        while (placed < count) {
            uint32_t x = static_cast<uint32_t>(rng() % n);
            if (!bits.test(x)) {
                bits.set(x);
                ++placed;
            }
        }
    } else {
        std::vector<uint32_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0u);
        for (uint64_t i = 0; i < count; ++i) {
            uint64_t j = i + rng() % (n - i);
            std::swap(idx[i], idx[j]);
            bits.set(idx[i]);
        }
    }
    return bits;
}

IndexBitset build_bits(const VectorSpace& V, const DistanceFn* fn, const std::string& desc) {
    const uint64_t n = V.points();
    if (desc == "full") {
        IndexBitset bits(n);
        for (uint64_t x = 0; x < n; ++x) bits.set(static_cast<uint32_t>(x));
        return bits;
    }
    if (desc.rfind("complement(", 0) == 0 && desc.back() == ')') {
        IndexBitset inner = build_bits(V, fn, desc.substr(11, desc.size() - 12));
        IndexBitset bits(n);
        for (uint64_t x = 0; x < n; ++x)
            if (!inner.test(static_cast<uint32_t>(x))) bits.set(static_cast<uint32_t>(x));
        return bits;
    }
    if (desc.rfind("union(", 0) == 0 && desc.back() == ')') {
        auto [a, b] = split_args(desc.substr(6, desc.size() - 7), desc);
        IndexBitset bits = build_bits(V, fn, a);
        IndexBitset other = build_bits(V, fn, b);
        other.for_each([&](uint32_t x) { bits.set(x); });
        return bits;
    }
    if (desc.rfind("inter(", 0) == 0 && desc.back() == ')') {
        auto [a, b] = split_args(desc.substr(6, desc.size() - 7), desc);
        IndexBitset lhs = build_bits(V, fn, a);
        IndexBitset rhs = build_bits(V, fn, b);
        IndexBitset bits(n);
        lhs.for_each([&](uint32_t x) {
            if (rhs.test(x)) bits.set(x);
        });
        return bits;
    }
    if (desc.rfind("random:", 0) == 0) {
        std::string rest = desc.substr(7);
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw ConfigParseError("random set needs a count and a seed: " + desc);
        long count = parse_long(rest.substr(0, colon), desc);
        long seed = parse_long(rest.substr(colon + 1), desc);
        if (count < 0) throw ConfigParseError("negative count in: " + desc);
        return random_subset(V, static_cast<uint64_t>(count), static_cast<uint64_t>(seed));
    }
    if (desc.rfind("sphere:", 0) == 0) {
        if (fn == nullptr || fn->kind() != FormKind::quadratic)
            throw ConfigParseError("sphere set needs a quadratic form: " + desc);
        if (&fn->space() != &V) throw DimensionMismatchError("sphere set from a different space");
        long t = parse_long(desc.substr(7), desc);
        V.field().require_range(static_cast<uint32_t>(t));
        return fn->sphere(static_cast<uint32_t>(t)).bits;
    }
    if (desc.rfind("affine:", 0) == 0) {
        std::string rest = desc.substr(7);
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw ConfigParseError("affine set needs a coordinate and a value: " + desc);
        long j = parse_long(rest.substr(0, colon), desc);
        long c = parse_long(rest.substr(colon + 1), desc);
        if (j < 0 || j >= V.dim()) throw IndexOutOfRangeError("affine coordinate out of range");
        V.field().require_range(static_cast<uint32_t>(c));
        IndexBitset bits(n);
        for (uint64_t x = 0; x < n; ++x)
            if (V.decode(static_cast<uint32_t>(x))[static_cast<std::size_t>(j)] ==
                static_cast<uint32_t>(c))
                bits.set(static_cast<uint32_t>(x));
        return bits;
    }
    if (desc.rfind("explicit:", 0) == 0) {
        IndexBitset bits(n);
        std::string rest = desc.substr(9);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            long x = parse_long(rest.substr(pos, comma - pos), desc);
            V.require_range(static_cast<uint32_t>(x));
            bits.set(static_cast<uint32_t>(x));
            pos = comma + 1;
        }
        return bits;
    }
    throw ConfigParseError("unrecognized set descriptor: " + desc);
}

}  // namespace

PointSet parse_pointset(const VectorSpace& V, const DistanceFn* fn, const std::string& desc) {
    return PointSet(V, build_bits(V, fn, desc), desc);
}

}  // namespace ffdist
