#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ffdist/bitset.hpp"
#include "ffdist/cyclotomic.hpp"
#include "ffdist/error.hpp"
#include "ffdist/vectorspace.hpp"

namespace ffdist {

enum class FormKind { bilinear, quadratic };

struct Sphere {
    uint32_t t;
    std::vector<uint32_t> points;  // sorted indices
    IndexBitset bits;
    std::size_t size() const { return points.size(); }
};

// A distance-type function on F_q^d: either phi(x, y) = x^T A y with A
// invertible (bilinear kind; symmetry optional and recorded), or
// phi(x, y) = Q(x - y) for a non-degenerate quadratic form Q given by its
// symmetric Gram matrix (quadratic kind).
//
// Quadratic instances carry their classification: the canonical diagonal
// representative X_1^2 + ... + X_{d-1}^2 + a X_d^2 with a in {1, nu} (nu the
// least non-square), a change of basis P with Q(P x) = canonical(x), the dual
// diagonal coefficients (1, ..., 1, a^{-1}), and the level sets ("spheres")
// of Q, precomputed as a partition of the space. Instances are immutable and
// safe for concurrent reads.
class DistanceFn {
  public:
    static DistanceFn bilinear(const VectorSpace& V, std::vector<uint32_t> matrix);
    static DistanceFn quadratic(const VectorSpace& V, std::vector<uint32_t> gram);
    static DistanceFn dot(const VectorSpace& V);  // identity-matrix bilinear

    const VectorSpace& space() const { return *V_; }
    FormKind kind() const { return kind_; }
    bool symmetric() const { return symmetric_; }
    const std::vector<uint32_t>& matrix() const { return mat_; }
    std::string spec() const;  // round-trips through parse_form

    uint32_t entry(int i, int j) const { return mat_[static_cast<std::size_t>(i) * V_->dim() + j]; }

    // phi(x, y); for quadratic this is Q(x - y)
    uint32_t phi(uint32_t x, uint32_t y) const {
        if (kind_ == FormKind::quadratic) return qval_[V_->sub(x, y)];
        return V_->dot(x, right_img_[y]);
    }
    // Q(v) (quadratic only)
    uint32_t quad(uint32_t v) const { return require_quadratic(), qval_[v]; }

    // d_lambda(x, y) = q * [phi(x,y) = lambda], lambda != 0
    long dist_kernel(uint32_t x, uint32_t y, uint32_t lambda) const {
        if (lambda == 0) throw ZeroLabelError("distance labels must be nonzero");
        return phi(x, y) == lambda ? V_->field().q() : 0;
    }

    // quadratic classification
    uint32_t canonical_a() const { return require_quadratic(), canonical_a_; }
    const std::vector<uint32_t>& change_of_basis() const { return require_quadratic(), cob_; }
    // dual form coefficients: Q'(X) = X_1^2 + ... + X_{d-1}^2 + a^{-1} X_d^2
    const std::vector<uint32_t>& dual_coeffs() const { return require_quadratic(), dual_; }
    uint32_t dual_value(uint32_t xi) const;  // Q'(xi)
    bool is_canonical_diagonal() const;

    const Sphere& sphere(uint32_t t) const;

    // Neighbor enumeration: all x with phi(x, z) = t ("left") or all y with
    // phi(z, y) = t ("right"). For quadratic both coincide with z + S_t.
    // fn receives each neighbor index. Count of enumerated points = level-set
    // size: q^(d-1) exactly for bilinear, |S_t| for quadratic.
    template <class Fn>
    void for_left_neighbors(uint32_t z, uint32_t t, Fn&& fn) const {
        if (kind_ == FormKind::quadratic) {
            translate_sphere(z, t, fn);
        } else {
            hyperplane(mat_vec_right(z), t, fn);  // x . (A z) = t
        }
    }
    template <class Fn>
    void for_right_neighbors(uint32_t z, uint32_t t, Fn&& fn) const {
        if (kind_ == FormKind::quadratic) {
            translate_sphere(z, t, fn);
        } else {
            hyperplane(mat_vec_left(z), t, fn);  // (A^T z) . y = t
        }
    }
    // upper bound on points produced by either neighbor enumeration
    uint64_t neighbor_bound(uint32_t t) const;

    // A z (column action) and A^T z, as point indices
    uint32_t mat_vec_right(uint32_t z) const;
    uint32_t mat_vec_left(uint32_t z) const;

  private:
    DistanceFn(const VectorSpace& V, FormKind kind, std::vector<uint32_t> m);
    void require_quadratic() const {
        if (kind_ != FormKind::quadratic) throw NonCanonicalFormError("operation requires a quadratic form");
    }
    void classify();
    void build_tables();
    void build_spheres();
    uint32_t quad_compute(uint32_t v) const;
    uint32_t mat_vec_right_compute(uint32_t z) const;
    uint32_t mat_vec_left_compute(uint32_t z) const;
    template <class Fn>
    void translate_sphere(uint32_t z, uint32_t t, Fn&& fn) const {
        const Sphere& s = sphere(t);
        for (uint32_t p : s.points) fn(V_->add(z, p));
    }
    template <class Fn>
    void hyperplane(uint32_t w, uint32_t t, Fn&& fn) const;

    const VectorSpace* V_;
    FormKind kind_;
    std::vector<uint32_t> mat_;
    bool symmetric_;
    uint32_t canonical_a_ = 1;
    std::vector<uint32_t> cob_;
    std::vector<uint32_t> dual_;
    std::vector<Sphere> spheres_;
    // per-point caches filled at construction: Q(v) for quadratic,
    // the index of A z for bilinear; both keep phi() allocation-free
    std::vector<uint32_t> qval_;
    std::vector<uint32_t> right_img_;
};

// enumerate {x : x . w = t}; empty when w = 0 and t != 0
template <class Fn>
void DistanceFn::hyperplane(uint32_t w, uint32_t t, Fn&& fn) const {
    const FiniteField& F = V_->field();
    const int d = V_->dim();
    const long q = F.q();
    std::vector<uint32_t> wc = V_->decode(w);
    int piv = -1;
    for (int i = 0; i < d; ++i)
        if (wc[static_cast<std::size_t>(i)] != 0) {
            piv = i;
            break;
        }
    if (piv < 0) {
        if (t != 0) return;
        for (uint64_t x = 0; x < V_->points(); ++x) fn(static_cast<uint32_t>(x));
        return;
    }
    const uint32_t winv = F.inv(wc[static_cast<std::size_t>(piv)]);
    uint64_t pivmult = 1;
    for (int i = 0; i < piv; ++i) pivmult *= static_cast<uint64_t>(q);
    const uint64_t rest = V_->points() / static_cast<uint64_t>(q);
    for (uint64_t r = 0; r < rest; ++r) {
        uint64_t v = r;
        uint32_t s = 0;
        uint64_t base = 0, mult = 1;
        for (int i = 0; i < d; ++i) {
            if (i == piv) {
                mult *= static_cast<uint64_t>(q);
                continue;
            }
            uint32_t ci = static_cast<uint32_t>(v % static_cast<uint64_t>(q));
            v /= static_cast<uint64_t>(q);
            if (ci != 0) s = F.add(s, F.mul(ci, wc[static_cast<std::size_t>(i)]));
            base += static_cast<uint64_t>(ci) * mult;
            mult *= static_cast<uint64_t>(q);
        }
        uint32_t xpiv = F.mul(F.sub(t, s), winv);
        fn(static_cast<uint32_t>(base + static_cast<uint64_t>(xpiv) * pivmult));
    }
}

// form spec mini-grammar:
//   bilinear:dot | bilinear:matrix=[[..],[..]] |
//   quadratic:diag=c1,...,cd | quadratic:matrix=[[..],[..]]
// diagonal entries and matrix entries are field element indices; the token
// 'a' denotes the least non-square.
DistanceFn parse_form(const VectorSpace& V, const std::string& spec);

// determinant of a d x d matrix of field element indices; 0 iff singular
uint32_t matrix_det(const VectorSpace& V, const std::vector<uint32_t>& m);

// exact Fourier coefficient of a sphere: q^d * S^(m) = sum_{x in S_t} chi(x.m)
CyclotomicInt sphere_fourier_sum(const DistanceFn& fn, uint32_t t, uint32_t m);

struct FourierValue {
    CyclotomicInt exact_sum;        // q^d * S^(m)
    std::complex<double> value;     // S^(m)
    double magnitude;               // |S^(m)|
};
FourierValue sphere_fourier(const DistanceFn& fn, uint32_t t, uint32_t m);

}  // namespace ffdist
