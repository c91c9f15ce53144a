#include "ffdist/charsums.hpp"

#include "ffdist/error.hpp"

namespace ffdist {

SumValue make_sum_value(CyclotomicInt c) {
    SumValue sv;
    sv.value = c.embed();
    sv.magnitude = std::abs(sv.value);
    sv.exact = std::move(c);
    return sv;
}

SumValue gauss_sum(const FiniteField& F) {
    CyclotomicInt g(F.p());
    for (uint32_t a = 1; a < F.q(); ++a) g.add_root_scaled(F.trace(a), F.eta(a));
    return make_sum_value(std::move(g));
}

SumValue kloosterman_sum(const FiniteField& F, uint32_t a, uint32_t b) {
    F.require_range(a);
    F.require_range(b);
    CyclotomicInt s(F.p());
    for (uint32_t x = 1; x < F.q(); ++x)
        s.add_root(F.trace(F.add(F.mul(a, x), F.mul(b, F.inv(x)))));
    return make_sum_value(std::move(s));
}

SumValue salie_sum(const FiniteField& F, uint32_t a, uint32_t b) {
    F.require_range(a);
    F.require_range(b);
    CyclotomicInt s(F.p());
    for (uint32_t x = 1; x < F.q(); ++x)
        s.add_root_scaled(F.trace(F.add(F.mul(a, x), F.mul(b, F.inv(x)))), F.eta(x));
    return make_sum_value(std::move(s));
}

CyclotomicInt additive_orthogonality(const FiniteField& F, uint32_t c) {
    F.require_range(c);
    CyclotomicInt s(F.p());
    for (uint32_t x = 0; x < F.q(); ++x) s.add_root(F.trace(F.mul(c, x)));
    return s;
}

CyclotomicInt additive_orthogonality(const VectorSpace& V, uint32_t m) {
    const FiniteField& F = V.field();
    CyclotomicInt s(F.p());
    for (uint64_t x = 0; x < V.points(); ++x)
        s.add_root(F.trace(V.dot(static_cast<uint32_t>(x), m)));
    return s;
}

WeilIdentity quadratic_weil(const DistanceFn& fn, uint32_t ell, uint32_t xi_point,
                            bool factored) {
    const VectorSpace& V = fn.space();
    const FiniteField& F = V.field();
    const int d = V.dim();
    if (fn.kind() != FormKind::quadratic)
        throw NonCanonicalFormError("quadratic_weil needs a quadratic form");
    const auto& M = fn.matrix();
    std::vector<uint32_t> c(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            uint32_t e = M[static_cast<std::size_t>(i) * d + j];
            if (i == j)
                c[static_cast<std::size_t>(i)] = e;
            else if (e != 0)
                throw NonCanonicalFormError("quadratic_weil needs a diagonal form");
        }
    if (ell == 0) throw ZeroParameterError("quadratic_weil needs ell != 0");
    F.require_range(ell);
    V.require_range(xi_point);
    std::vector<uint32_t> xi = V.decode(xi_point);
    const long p = F.p();

    WeilIdentity out;
    if (factored) {
        CyclotomicInt prod = CyclotomicInt::root(p, 0);
        for (int i = 0; i < d; ++i) {
            CyclotomicInt one(p);
            for (uint32_t x = 0; x < F.q(); ++x) {
                uint32_t e = F.add(F.mul(ell, F.mul(c[static_cast<std::size_t>(i)], F.mul(x, x))),
                                   F.mul(xi[static_cast<std::size_t>(i)], x));
                one.add_root(F.trace(e));
            }
            prod = prod * one;
        }
        out.sum = std::move(prod);
    } else {
        CyclotomicInt s(p);
        for (uint64_t v = 0; v < V.points(); ++v) {
            uint32_t x = static_cast<uint32_t>(v);
            uint32_t e = F.add(F.mul(ell, fn.quad(x)), V.dot(x, xi_point));
            s.add_root(F.trace(e));
        }
        out.sum = std::move(s);
    }

    uint32_t prodc = 1;
    uint32_t dual = 0;
    for (int i = 0; i < d; ++i) {
        prodc = F.mul(prodc, c[static_cast<std::size_t>(i)]);
        uint32_t xii = xi[static_cast<std::size_t>(i)];
        dual = F.add(dual, F.mul(F.mul(xii, xii), F.inv(c[static_cast<std::size_t>(i)])));
    }
    int sign = F.eta(prodc) * (d % 2 == 1 ? F.eta(ell) : 1);
    uint32_t arg = F.neg(F.mul(dual, F.inv(F.mul(F.from_integer(4), ell))));
    CyclotomicInt rhs = gauss_sum(F).exact.pow(d) * CyclotomicInt::root(p, F.trace(arg));
    out.closed_form = rhs * static_cast<long long>(sign);
    out.match = out.sum == out.closed_form;
    return out;
}

}  // namespace ffdist
