#include "ffdist/field.hpp"

#include <algorithm>
#include <cmath>

namespace ffdist {

namespace {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// dense little-endian coefficient vectors over F_p
using Poly = std::vector<int>;

int degree(const Poly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

void trim(Poly& a) { a.resize(static_cast<std::size_t>(degree(a) + 1)); }

Poly poly_mod(Poly a, const Poly& m, long p) {
    int dm = degree(m);
    long lead_inv = 1;
    {  // inverse of m's leading coefficient mod p
        long lead = m[static_cast<std::size_t>(dm)];
        for (long x = 1; x < p; ++x)
            if (lead * x % p == 1) {
                lead_inv = x;
                break;
            }
    }
    for (int da = degree(a); da >= dm; da = degree(a)) {
        long c = a[static_cast<std::size_t>(da)] * lead_inv % p;
        for (int i = 0; i <= dm; ++i) {
            long t = a[static_cast<std::size_t>(da - dm + i)] - c * m[static_cast<std::size_t>(i)] % p;
            t %= p;
            if (t < 0) t += p;
            a[static_cast<std::size_t>(da - dm + i)] = static_cast<int>(t);
        }
    }
    trim(a);
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, long p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<int>((r[i + j] + static_cast<long>(a[i]) * b[j]) % p);
    }
    return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, Int e, const Poly& m, long p) {
    Poly r{1};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, long p) {
    while (degree(b) >= 0) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    trim(a);
    return a;
}

Poly poly_sub(Poly a, const Poly& b, long p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        int t = a[i] - b[i];
        if (t < 0) t += static_cast<int>(p);
        a[i] = t;
    }
    trim(a);
    return a;
}

// f monic of degree k: irreducible iff x^(p^k) = x (mod f) and
// gcd(x^(p^(k/r)) - x, f) = 1 for every prime r | k.
bool is_irreducible(const Poly& f, long p, int k) {
    Poly x{0, 1};
    Int pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    Poly xq = poly_powmod(x, pk, f, p);
    if (poly_sub(xq, x, p) != Poly{}) return false;
    for (int r = 2; r <= k; ++r) {
        if (k % r != 0) continue;
        bool r_prime = true;
        for (int d = 2; d * d <= r; ++d)
            if (r % d == 0) r_prime = false;
        if (!r_prime) continue;
        Int pkr;
        mpz_ui_pow_ui(pkr.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k / r));
        Poly xr = poly_powmod(x, pkr, f, p);
        Poly g = poly_gcd(f, poly_sub(xr, x, p), p);
        if (degree(g) != 0) return false;
    }
    return true;
}

}  // namespace

FiniteField::FiniteField(long p, int k) : p_(p), k_(k) {
    if (p == 2) throw EvenCharacteristicError("characteristic 2 is not supported");
    if (!is_prime(p)) throw NotPrimeError("p = " + std::to_string(p) + " is not prime");
    if (k < 1) throw ZeroParameterError("extension degree must be >= 1");
    double qd = std::pow(static_cast<double>(p), k);
    if (qd > static_cast<double>(kMaxQ)) throw TooLargeError("field size exceeds the supported cap");
    q_ = 1;
    for (int i = 0; i < k; ++i) q_ *= p;

    // lexicographically least monic irreducible: scan non-leading coefficient
    // vectors in base-p enumeration order
    modulus_.assign(static_cast<std::size_t>(k) + 1, 0);
    modulus_[static_cast<std::size_t>(k)] = 1;
    if (k == 1) {
        // x itself: reduction is just mod p; modulus x + 0 would make 0 a root,
        // but for k = 1 the modulus is unused. Keep x for reporting.
    } else {
        bool found = false;
        for (long m = 0; m < q_ && !found; ++m) {
            Poly f(static_cast<std::size_t>(k) + 1, 0);
            long mm = m;
            for (int i = 0; i < k; ++i) {
                f[static_cast<std::size_t>(i)] = static_cast<int>(mm % p);
                mm /= p;
            }
            f[static_cast<std::size_t>(k)] = 1;
            if (is_irreducible(f, p, k)) {
                modulus_.assign(f.begin(), f.end());
                found = true;
            }
        }
        if (!found) throw Error("no irreducible modulus found");  // unreachable
    }
    build_tables();
}

std::string FiniteField::modulus_str() const {
    if (k_ == 1) return "x";
    std::string s;
    for (int i = k_; i >= 0; --i) {
        int c = modulus_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0) {
            s += std::to_string(c);
        } else {
            if (c != 1) s += std::to_string(c) + "*";
            s += (i == 1) ? "x" : "x^" + std::to_string(i);
        }
    }
    return s;
}

uint32_t FiniteField::add(uint32_t a, uint32_t b) const {
    if (k_ == 1) {
        uint32_t s = a + b;
        return s >= static_cast<uint32_t>(p_) ? s - static_cast<uint32_t>(p_) : s;
    }
    uint32_t r = 0, mult = 1;
    for (int i = 0; i < k_; ++i) {
        uint32_t da = a % p_, db = b % p_;
        uint32_t ds = da + db;
        if (ds >= static_cast<uint32_t>(p_)) ds -= static_cast<uint32_t>(p_);
        r += ds * mult;
        mult *= static_cast<uint32_t>(p_);
        a /= static_cast<uint32_t>(p_);
        b /= static_cast<uint32_t>(p_);
    }
    return r;
}

uint32_t FiniteField::mul_slow(uint32_t a, uint32_t b) const {
    if (k_ == 1) return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % static_cast<uint64_t>(p_));
    // schoolbook product, then fold degrees >= k via precomputed rows
    int da[16], db[16];
    long prod[31] = {0};
    for (int i = 0; i < k_; ++i) {
        da[i] = static_cast<int>(a % p_);
        a /= static_cast<uint32_t>(p_);
        db[i] = static_cast<int>(b % p_);
        b /= static_cast<uint32_t>(p_);
    }
    for (int i = 0; i < k_; ++i) {
        if (da[i] == 0) continue;
        for (int j = 0; j < k_; ++j) prod[i + j] += static_cast<long>(da[i]) * db[j];
    }
    for (int i = 2 * k_ - 2; i >= k_; --i) {
        long c = prod[i] % p_;
        if (c == 0) continue;
        const std::vector<int>& row = reduction_[static_cast<std::size_t>(i - k_)];
        for (int j = 0; j < k_; ++j) prod[j] += c * row[static_cast<std::size_t>(j)];
    }
    uint32_t r = 0, mult = 1;
    for (int i = 0; i < k_; ++i) {
        long d = prod[i] % p_;
        if (d < 0) d += p_;
        r += static_cast<uint32_t>(d) * mult;
        mult *= static_cast<uint32_t>(p_);
    }
    return r;
}

uint32_t FiniteField::pow(uint32_t a, unsigned long e) const {
    uint32_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

void FiniteField::build_tables() {
    const std::size_t q = static_cast<std::size_t>(q_);

    if (k_ > 1) {
        // rows: x^(k+i) mod modulus as coefficient vectors
        reduction_.assign(static_cast<std::size_t>(k_), std::vector<int>(static_cast<std::size_t>(k_), 0));
        Poly cur(modulus_.begin(), modulus_.end() - 1);  // x^k = -(low part)
        for (int& c : cur) c = c == 0 ? 0 : static_cast<int>(p_) - c;
        for (int i = 0; i < k_; ++i) {
            reduction_[static_cast<std::size_t>(i)] = cur;
            // multiply cur by x, reduce once
            Poly next(static_cast<std::size_t>(k_), 0);
            int carry = cur[static_cast<std::size_t>(k_ - 1)];
            for (int j = k_ - 1; j >= 1; --j) next[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)];
            next[0] = 0;
            if (carry != 0) {
                for (int j = 0; j < k_; ++j) {
                    long t = next[static_cast<std::size_t>(j)] +
                             static_cast<long>(carry) * reduction_[0][static_cast<std::size_t>(j)];
                    next[static_cast<std::size_t>(j)] = static_cast<int>(t % p_);
                }
            }
            cur = next;
        }
    }

    neg_.resize(q);
    for (std::size_t a = 0; a < q; ++a) {
        uint32_t r = 0, mult = 1;
        uint32_t x = static_cast<uint32_t>(a);
        for (int i = 0; i < k_; ++i) {
            uint32_t d = x % static_cast<uint32_t>(p_);
            r += (d == 0 ? 0 : static_cast<uint32_t>(p_) - d) * mult;
            mult *= static_cast<uint32_t>(p_);
            x /= static_cast<uint32_t>(p_);
        }
        neg_[a] = r;
    }

    if (q_ <= 512) {
        mul_table_.resize(q * q);
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t b = a; b < q; ++b) {
                uint32_t v = mul_slow(static_cast<uint32_t>(a), static_cast<uint32_t>(b));
                mul_table_[a * q + b] = v;
                mul_table_[b * q + a] = v;
            }
    }

    inv_.assign(q, 0);
    for (std::size_t a = 1; a < q; ++a) inv_[a] = pow(static_cast<uint32_t>(a), static_cast<unsigned long>(q_ - 2));

    frob_.resize(q);
    for (std::size_t a = 0; a < q; ++a) frob_[a] = pow(static_cast<uint32_t>(a), static_cast<unsigned long>(p_));

    trace_.resize(q);
    for (std::size_t a = 0; a < q; ++a) {
        uint32_t s = 0, x = static_cast<uint32_t>(a);
        for (int i = 0; i < k_; ++i) {
            s = add(s, x);
            x = frob_[x];
        }
        trace_[a] = static_cast<int>(s % static_cast<uint32_t>(p_));  // constant poly value
    }

    eta_vec_.assign(q, -1);
    sqrt_.assign(q, UINT32_MAX);
    eta_vec_[0] = 0;
    for (std::size_t b = 0; b < q; ++b) {
        uint32_t sq = mul(static_cast<uint32_t>(b), static_cast<uint32_t>(b));
        eta_vec_[sq] = (sq == 0) ? 0 : 1;
        if (sqrt_[sq] == UINT32_MAX) sqrt_[sq] = static_cast<uint32_t>(b);
    }
    sqrt_[0] = 0;
    eta_ = eta_vec_.data();
    nonsquare_ = 0;
    for (std::size_t a = 1; a < q; ++a)
        if (eta_vec_[a] == -1) {
            nonsquare_ = static_cast<uint32_t>(a);
            break;
        }
}

}  // namespace ffdist
