#include "ffdist/forms.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ffdist {

namespace {

// column operations on a row-major d x d matrix of field indices
struct Mat {
    const FiniteField& F;
    int d;
    std::vector<uint32_t> v;
    uint32_t& at(int i, int j) { return v[static_cast<std::size_t>(i) * d + j]; }
    uint32_t at(int i, int j) const { return v[static_cast<std::size_t>(i) * d + j]; }
    static Mat identity(const FiniteField& F, int d) {
        Mat m{F, d, std::vector<uint32_t>(static_cast<std::size_t>(d) * d, 0)};
        for (int i = 0; i < d; ++i) m.at(i, i) = 1;
        return m;
    }
    void swap_cols(int a, int b) {
        for (int i = 0; i < d; ++i) std::swap(at(i, a), at(i, b));
    }
    // col_a += c * col_b
    void add_col(int a, int b, uint32_t c) {
        for (int i = 0; i < d; ++i) at(i, a) = F.add(at(i, a), F.mul(c, at(i, b)));
    }
    void scale_col(int a, uint32_t c) {
        for (int i = 0; i < d; ++i) at(i, a) = F.mul(at(i, a), c);
    }
    // replace columns (a, b) by (u*col_a + v*col_b, -v*col_a + u*col_b)
    void rotate_cols(int a, int b, uint32_t u, uint32_t w) {
        for (int i = 0; i < d; ++i) {
            uint32_t ca = at(i, a), cb = at(i, b);
            at(i, a) = F.add(F.mul(u, ca), F.mul(w, cb));
            at(i, b) = F.add(F.mul(F.neg(w), ca), F.mul(u, cb));
        }
    }
};

// B[i][j] -> (P^T B P)[i][j], full recompute (d is tiny)
std::vector<uint32_t> congruence(const FiniteField& F, int d, const std::vector<uint32_t>& B,
                                 const Mat& P) {
    std::vector<uint32_t> r(static_cast<std::size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            uint32_t s = 0;
            for (int a = 0; a < d; ++a) {
                if (P.at(a, i) == 0) continue;
                for (int b = 0; b < d; ++b)
                    s = F.add(s, F.mul(F.mul(P.at(a, i), B[static_cast<std::size_t>(a) * d + b]),
                                       P.at(b, j)));
            }
            r[static_cast<std::size_t>(i) * d + j] = s;
        }
    return r;
}

}  // namespace

uint32_t matrix_det(const VectorSpace& V, const std::vector<uint32_t>& m) {
    const FiniteField& F = V.field();
    int d = V.dim();
    if (m.size() != static_cast<std::size_t>(d) * d) throw DimensionMismatchError("matrix size != d*d");
    std::vector<uint32_t> a = m;
    auto at = [&](int i, int j) -> uint32_t& { return a[static_cast<std::size_t>(i) * d + j]; };
    uint32_t det = 1;
    for (int c = 0; c < d; ++c) {
        int piv = -1;
        for (int r = c; r < d; ++r)
            if (at(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < d; ++j) std::swap(at(piv, j), at(c, j));
            det = F.neg(det);
        }
        det = F.mul(det, at(c, c));
        uint32_t ipiv = F.inv(at(c, c));
        for (int r = c + 1; r < d; ++r) {
            if (at(r, c) == 0) continue;
            uint32_t f = F.mul(at(r, c), ipiv);
            for (int j = c; j < d; ++j) at(r, j) = F.sub(at(r, j), F.mul(f, at(c, j)));
        }
    }
    return det;
}

DistanceFn::DistanceFn(const VectorSpace& V, FormKind kind, std::vector<uint32_t> m)
    : V_(&V), kind_(kind), mat_(std::move(m)) {
    int d = V.dim();
    if (mat_.size() != static_cast<std::size_t>(d) * d) throw DimensionMismatchError("matrix size != d*d");
    for (uint32_t e : mat_) V.field().require_range(e);
    if (matrix_det(V, mat_) == 0) throw DegenerateFormError("form matrix is singular");
    symmetric_ = true;
    for (int i = 0; i < d && symmetric_; ++i)
        for (int j = i + 1; j < d; ++j)
            if (entry(i, j) != entry(j, i)) {
                symmetric_ = false;
                break;
            }
    build_tables();
    if (kind_ == FormKind::quadratic) {
        classify();
        build_spheres();
    }
}

void DistanceFn::build_tables() {
    const uint64_t n = V_->points();
    if (kind_ == FormKind::quadratic) {
        qval_.resize(n);
        for (uint64_t v = 0; v < n; ++v) qval_[v] = quad_compute(static_cast<uint32_t>(v));
    } else {
        right_img_.resize(n);
        for (uint64_t z = 0; z < n; ++z)
            right_img_[z] = mat_vec_right_compute(static_cast<uint32_t>(z));
    }
}

DistanceFn DistanceFn::bilinear(const VectorSpace& V, std::vector<uint32_t> matrix) {
    return DistanceFn(V, FormKind::bilinear, std::move(matrix));
}

DistanceFn DistanceFn::quadratic(const VectorSpace& V, std::vector<uint32_t> gram) {
    const FiniteField& F = V.field();
    int d = V.dim();
    if (gram.size() != static_cast<std::size_t>(d) * d) throw DimensionMismatchError("matrix size != d*d");
    // symmetrize: (M + M^T) / 2 leaves v^T M v unchanged
    uint32_t half = F.inv(F.from_integer(2));
    std::vector<uint32_t> sym(gram.size());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            sym[static_cast<std::size_t>(i) * d + j] =
                F.mul(half, F.add(gram[static_cast<std::size_t>(i) * d + j],
                                  gram[static_cast<std::size_t>(j) * d + i]));
    return DistanceFn(V, FormKind::quadratic, std::move(sym));
}

DistanceFn DistanceFn::dot(const VectorSpace& V) {
    int d = V.dim();
    std::vector<uint32_t> id(static_cast<std::size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) id[static_cast<std::size_t>(i) * d + i] = 1;
    return bilinear(V, std::move(id));
}

namespace {
// q >= 3 and q^d <= VectorSpace::kMaxPoints = 2^24 force d <= 15
constexpr int kStackDim = 24;

inline void decode_into(uint32_t x, uint32_t q, int d, uint32_t* c) {
    uint64_t v = x;
    for (int i = 0; i < d; ++i) {
        c[i] = static_cast<uint32_t>(v % q);
        v /= q;
    }
}
}  // namespace

uint32_t DistanceFn::quad_compute(uint32_t v) const {
    const FiniteField& F = V_->field();
    const int d = V_->dim();
    uint32_t c[kStackDim];
    decode_into(v, F.q(), d, c);
    uint32_t s = 0;
    for (int i = 0; i < d; ++i) {
        if (c[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (c[j] == 0) continue;
            s = F.add(s, F.mul(F.mul(c[i], entry(i, j)), c[j]));
        }
    }
    return s;
}

uint32_t DistanceFn::mat_vec_right(uint32_t z) const {
    if (!right_img_.empty()) return right_img_[z];
    return mat_vec_right_compute(z);
}

uint32_t DistanceFn::mat_vec_right_compute(uint32_t z) const {
    const FiniteField& F = V_->field();
    const int d = V_->dim();
    const uint64_t q = F.q();
    uint32_t c[kStackDim];
    decode_into(z, F.q(), d, c);
    uint64_t r = 0, mult = 1;
    for (int i = 0; i < d; ++i) {
        uint32_t s = 0;
        for (int j = 0; j < d; ++j)
            if (c[j] != 0) s = F.add(s, F.mul(entry(i, j), c[j]));
        r += static_cast<uint64_t>(s) * mult;
        mult *= q;
    }
    return static_cast<uint32_t>(r);
}

uint32_t DistanceFn::mat_vec_left(uint32_t z) const {
    if (symmetric_ && !right_img_.empty()) return right_img_[z];
    return mat_vec_left_compute(z);
}

uint32_t DistanceFn::mat_vec_left_compute(uint32_t z) const {
    const FiniteField& F = V_->field();
    const int d = V_->dim();
    const uint64_t q = F.q();
    uint32_t c[kStackDim];
    decode_into(z, F.q(), d, c);
    uint64_t r = 0, mult = 1;
    for (int j = 0; j < d; ++j) {
        uint32_t s = 0;
        for (int i = 0; i < d; ++i)
            if (c[i] != 0) s = F.add(s, F.mul(c[i], entry(i, j)));
        r += static_cast<uint64_t>(s) * mult;
        mult *= q;
    }
    return static_cast<uint32_t>(r);
}

uint32_t DistanceFn::dual_value(uint32_t xi) const {
    require_quadratic();
    const FiniteField& F = V_->field();
    const int d = V_->dim();
    uint32_t c[kStackDim];
    decode_into(xi, F.q(), d, c);
    uint32_t s = 0;
    for (int i = 0; i < d; ++i) {
        s = F.add(s, F.mul(dual_[static_cast<std::size_t>(i)], F.mul(c[i], c[i])));
    }
    return s;
}

bool DistanceFn::is_canonical_diagonal() const {
    if (kind_ != FormKind::quadratic) return false;
    int d = V_->dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            uint32_t e = entry(i, j);
            if (i != j && e != 0) return false;
            if (i == j && i < d - 1 && e != 1) return false;
        }
    uint32_t a = entry(d - 1, d - 1);
    return a == 1 || a == V_->field().least_nonsquare();
}

const Sphere& DistanceFn::sphere(uint32_t t) const {
    require_quadratic();
    V_->field().require_range(t);
    return spheres_[t];
}

uint64_t DistanceFn::neighbor_bound(uint32_t t) const {
    if (kind_ == FormKind::quadratic) return sphere(t).size();
    return V_->points() / static_cast<uint64_t>(V_->field().q());
}

void DistanceFn::build_spheres() {
    const uint64_t n = V_->points();
    const long q = V_->field().q();
    spheres_.resize(static_cast<std::size_t>(q));
    for (long t = 0; t < q; ++t) {
        spheres_[static_cast<std::size_t>(t)].t = static_cast<uint32_t>(t);
        spheres_[static_cast<std::size_t>(t)].bits = IndexBitset(n);
    }
    for (uint64_t x = 0; x < n; ++x) {
        uint32_t t = quad(static_cast<uint32_t>(x));
        spheres_[t].points.push_back(static_cast<uint32_t>(x));
        spheres_[t].bits.set(static_cast<std::size_t>(x));
    }
}

void DistanceFn::classify() {
    const FiniteField& F = V_->field();
    const int d = V_->dim();
    const uint32_t nu = F.least_nonsquare();
    std::vector<uint32_t> A = mat_;
    Mat P = Mat::identity(F, d);
    auto at = [&](int i, int j) -> uint32_t& { return A[static_cast<std::size_t>(i) * d + j]; };

    // congruence diagonalization by completing squares
    for (int i = 0; i < d; ++i) {
        if (at(i, i) == 0) {
            int jdiag = -1;
            for (int j = i + 1; j < d; ++j)
                if (at(j, j) != 0) {
                    jdiag = j;
                    break;
                }
            if (jdiag >= 0) {
                P.swap_cols(i, jdiag);
                for (int l = 0; l < d; ++l) std::swap(at(i, l), at(jdiag, l));
                for (int l = 0; l < d; ++l) std::swap(at(l, i), at(l, jdiag));
            } else {
                int joff = -1;
                for (int j = i + 1; j < d; ++j)
                    if (at(i, j) != 0) {
                        joff = j;
                        break;
                    }
                if (joff < 0) throw DegenerateFormError("form matrix is singular");
                // b_i += b_j turns the (i,i) entry into 2*A[i][j]
                P.add_col(i, joff, 1);
                for (int l = 0; l < d; ++l) at(i, l) = F.add(at(i, l), at(joff, l));
                for (int l = 0; l < d; ++l) at(l, i) = F.add(at(l, i), at(l, joff));
            }
        }
        uint32_t c = at(i, i);
        uint32_t cinv = F.inv(c);
        for (int j = i + 1; j < d; ++j) {
            if (at(i, j) == 0) continue;
            uint32_t coef = F.neg(F.mul(at(i, j), cinv));
            P.add_col(j, i, coef);
            for (int l = 0; l < d; ++l) at(j, l) = F.add(at(j, l), F.mul(coef, at(i, l)));
            for (int l = 0; l < d; ++l) at(l, j) = F.add(at(l, j), F.mul(coef, at(l, i)));
        }
    }

    // scale each diagonal entry into {1, nu}
    std::vector<int> nupos;
    for (int i = 0; i < d; ++i) {
        uint32_t c = at(i, i);
        if (F.eta(c) == 1) {
            P.scale_col(i, F.inv(F.sqrt(c)));
            at(i, i) = 1;
        } else {
            uint32_t s = F.sqrt(F.mul(c, F.inv(nu)));
            P.scale_col(i, F.inv(s));
            at(i, i) = nu;
            nupos.push_back(i);
        }
    }

    // each pair of nu entries collapses to ones: pick u, v with nu(u^2+v^2)=1
    if (nupos.size() >= 2) {
        uint32_t u = 0, v = 0;
        uint32_t target = F.inv(nu);
        for (uint32_t cu = 0; cu < static_cast<uint32_t>(F.q()); ++cu) {
            uint32_t rest = F.sub(target, F.mul(cu, cu));
            if (F.eta(rest) >= 0 && F.sqrt(rest) != UINT32_MAX) {
                u = cu;
                v = F.sqrt(rest);
                break;
            }
        }
        for (std::size_t idx = 0; idx + 1 < nupos.size(); idx += 2) {
            int i = nupos[idx], j = nupos[idx + 1];
            P.rotate_cols(i, j, u, v);
            at(i, i) = 1;
            at(j, j) = 1;
        }
    }
    if (nupos.size() % 2 == 1) {
        int i = nupos.back();
        if (i != d - 1) {
            P.swap_cols(i, d - 1);
            std::swap(at(i, i), at(d - 1, d - 1));
        }
        canonical_a_ = nu;
    } else {
        canonical_a_ = 1;
    }

    cob_ = P.v;

    // exact verification of the classification
    std::vector<uint32_t> check = congruence(F, d, mat_, P);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            uint32_t want = 0;
            if (i == j) want = (i == d - 1) ? canonical_a_ : 1;
            if (check[static_cast<std::size_t>(i) * d + j] != want)
                throw Error("internal: classification verification failed");
        }

    dual_.assign(static_cast<std::size_t>(d), 1);
    dual_[static_cast<std::size_t>(d - 1)] = F.inv(canonical_a_);
}

std::string DistanceFn::spec() const {
    int d = V_->dim();
    bool diag = true, ident = true;
    for (int i = 0; i < d && diag; ++i)
        for (int j = 0; j < d; ++j) {
            if (i != j && entry(i, j) != 0) {
                diag = false;
                break;
            }
            if (i == j && entry(i, j) != 1) ident = false;
        }
    std::ostringstream os;
    if (kind_ == FormKind::bilinear) {
        if (ident && diag) return "bilinear:dot";
        os << "bilinear:matrix=";
    } else if (diag) {
        os << "quadratic:diag=";
        for (int i = 0; i < d; ++i) os << (i ? "," : "") << entry(i, i);
        return os.str();
    } else {
        os << "quadratic:matrix=";
    }
    os << "[";
    for (int i = 0; i < d; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < d; ++j) os << (j ? "," : "") << entry(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

std::vector<uint32_t> parse_matrix_body(const VectorSpace& V, const std::string& body) {
    const int d = V.dim();
    std::vector<uint32_t> m;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < body.size() && (body[i] == ' ' || body[i] == '\t')) ++i;
    };
    auto expect = [&](char c) {
        skip();
        if (i >= body.size() || body[i] != c)
            throw ConfigParseError("form matrix: expected '" + std::string(1, c) + "' in " + body);
        ++i;
    };
    expect('[');
    for (int r = 0; r < d; ++r) {
        if (r) expect(',');
        expect('[');
        for (int c = 0; c < d; ++c) {
            if (c) expect(',');
            skip();
            if (i < body.size() && body[i] == 'a') {
                m.push_back(V.field().least_nonsquare());
                ++i;
            } else {
                std::size_t j = i;
                while (j < body.size() && isdigit(static_cast<unsigned char>(body[j]))) ++j;
                if (j == i) throw ConfigParseError("form matrix: expected entry in " + body);
                m.push_back(static_cast<uint32_t>(std::stoul(body.substr(i, j - i))));
                i = j;
            }
        }
        expect(']');
    }
    expect(']');
    skip();
    if (i != body.size()) throw ConfigParseError("form matrix: trailing characters in " + body);
    return m;
}

}  // namespace

DistanceFn parse_form(const VectorSpace& V, const std::string& spec) {
    const int d = V.dim();
    auto fail = [&] { throw ConfigParseError("unrecognized form spec: " + spec); };
    if (spec == "bilinear:dot") return DistanceFn::dot(V);
    const std::string bm = "bilinear:matrix=";
    const std::string qd = "quadratic:diag=";
    const std::string qm = "quadratic:matrix=";
    if (spec.rfind(bm, 0) == 0) return DistanceFn::bilinear(V, parse_matrix_body(V, spec.substr(bm.size())));
    if (spec.rfind(qm, 0) == 0) return DistanceFn::quadratic(V, parse_matrix_body(V, spec.substr(qm.size())));
    if (spec.rfind(qd, 0) == 0) {
        std::string body = spec.substr(qd.size());
        std::vector<uint32_t> diag;
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t comma = body.find(',', pos);
            std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (tok == "a")
                diag.push_back(V.field().least_nonsquare());
            else if (!tok.empty() && std::all_of(tok.begin(), tok.end(), [](char c) {
                         return isdigit(static_cast<unsigned char>(c));
                     }))
                diag.push_back(static_cast<uint32_t>(std::stoul(tok)));
            else
                throw ConfigParseError("bad diagonal entry '" + tok + "' in " + spec);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (static_cast<int>(diag.size()) != d)
            throw DimensionMismatchError("diagonal length != dim in " + spec);
        std::vector<uint32_t> m(static_cast<std::size_t>(d) * d, 0);
        for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i) * d + i] = diag[static_cast<std::size_t>(i)];
        return DistanceFn::quadratic(V, std::move(m));
    }
    fail();
    return DistanceFn::dot(V);  // unreachable
}

CyclotomicInt sphere_fourier_sum(const DistanceFn& fn, uint32_t t, uint32_t m) {
    const VectorSpace& V = fn.space();
    const FiniteField& F = V.field();
    CyclotomicInt s(static_cast<int>(F.p()));
    for (uint32_t x : fn.sphere(t).points) s.add_root(F.trace(V.dot(x, m)));
    return s;
}

FourierValue sphere_fourier(const DistanceFn& fn, uint32_t t, uint32_t m) {
    FourierValue r{sphere_fourier_sum(fn, t, m), {}, 0.0};
    double nd = static_cast<double>(fn.space().points());
    r.value = r.exact_sum.embed() / nd;
    r.magnitude = std::abs(r.value);
    return r;
}

}  // namespace ffdist
