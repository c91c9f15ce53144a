#pragma once

#include <complex>
#include <cstdint>

#include "ffdist/cyclotomic.hpp"
#include "ffdist/field.hpp"
#include "ffdist/forms.hpp"

namespace ffdist {

// an exponential sum held exactly in Z[zeta_p] alongside its complex embedding
struct SumValue {
    CyclotomicInt exact;
    std::complex<double> value;
    double magnitude = 0.0;
};

SumValue make_sum_value(CyclotomicInt c);

// G = sum_{a != 0} eta(a) chi(a).  Satisfies G * conj(G) = q and G^2 = eta(-1) q.
SumValue gauss_sum(const FiniteField& F);

// K(a, b) = sum_{x != 0} chi(a x + b x^{-1})
SumValue kloosterman_sum(const FiniteField& F, uint32_t a, uint32_t b);

// eta-twisted variant: sum_{x != 0} eta(x) chi(a x + b x^{-1})
SumValue salie_sum(const FiniteField& F, uint32_t a, uint32_t b);

// sum_{x in F} chi(c x), enumerated; equals q when c = 0 and 0 otherwise
CyclotomicInt additive_orthogonality(const FiniteField& F, uint32_t c);

// sum_{x in V} chi(x . m), enumerated; equals q^d when m = 0 and 0 otherwise
CyclotomicInt additive_orthogonality(const VectorSpace& V, uint32_t m);

// Evaluation of sum_x chi(ell Q(x) + x . xi) for a diagonal quadratic form
// Q(x) = sum_i c_i x_i^2.  `sum` is the enumerated value (either a full scan of
// the space or, with factored = true, the product of d one-dimensional scans);
// `closed_form` is eta(ell)^d eta(c_1 ... c_d) G^d chi(-Q'(xi) / (4 ell)) where
// Q'(xi) = sum_i xi_i^2 / c_i.  `match` reports exact equality in Z[zeta_p].
struct WeilIdentity {
    CyclotomicInt sum;
    CyclotomicInt closed_form;
    bool match = false;
};

WeilIdentity quadratic_weil(const DistanceFn& fn, uint32_t ell, uint32_t xi_point,
                            bool factored = false);

}  // namespace ffdist
