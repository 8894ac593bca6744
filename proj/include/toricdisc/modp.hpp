#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace toricdisc {

class PrimeField {
public:
    explicit PrimeField(std::uint64_t p) : p_(p) {}

    std::uint64_t prime() const { return p_; }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint64_t neg(std::uint64_t a) const { return a ? p_ - a : 0; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero mod p");
        return pow(a, p_ - 2);
    }
    std::uint64_t from_int(std::int64_t v) const {
        std::int64_t m = v % static_cast<std::int64_t>(p_);
        return static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(p_) : m);
    }
    std::uint64_t from_mpz(const mpz_class& v) const {
        if (v.fits_slong_p()) return from_int(v.get_si());
        mpz_class m, pp;
        mpz_import(pp.get_mpz_t(), 1, 1, sizeof(p_), 0, 0, &p_);
        mpz_fdiv_r(m.get_mpz_t(), v.get_mpz_t(), pp.get_mpz_t());
        std::uint64_t out = 0;
        mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, m.get_mpz_t());
        return out;
    }
    std::uint64_t from_mpq(const mpq_class& q) const { return mul(from_mpz(q.get_num()), inv(from_mpz(q.get_den()))); }
    // Symmetric lift to an integer in (-p/2, p/2].
    mpz_class to_signed(std::uint64_t a) const {
        mpz_class v;
        mpz_import(v.get_mpz_t(), 1, 1, sizeof(a), 0, 0, &a);
        if (a > p_ / 2) {
            mpz_class pp;
            mpz_import(pp.get_mpz_t(), 1, 1, sizeof(p_), 0, 0, &p_);
            v -= pp;
        }
        return v;
    }

private:
    std::uint64_t p_;
};

inline constexpr std::uint64_t kPrime61 = 2305843009213693951ull;  // 2^61 - 1
inline constexpr std::uint64_t kPrime62 = 4611686018427387847ull;  // 2^62 - 57

// Dense univariate polynomials mod p, coefficient k multiplies t^k.
using UPoly = std::vector<std::uint64_t>;

inline void utrim(UPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline long udeg(const UPoly& a) { return static_cast<long>(a.size()) - 1; }

inline std::uint64_t ueval(const UPoly& a, std::uint64_t t, const PrimeField& F) {
    std::uint64_t r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, t), a[i]);
    return r;
}

inline UPoly umonic(UPoly a, const PrimeField& F) {
    utrim(a);
    if (a.empty()) return a;
    std::uint64_t li = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, li);
    return a;
}

inline UPoly urem(UPoly a, const UPoly& b, const PrimeField& F) {
    utrim(a);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    std::uint64_t li = F.inv(b.back());
    while (a.size() >= b.size()) {
        std::uint64_t q = F.mul(a.back(), li);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(q, b[i]));
        utrim(a);
    }
    return a;
}

inline UPoly udiv(UPoly a, const UPoly& b, const PrimeField& F) {
    utrim(a);
    if (a.size() < b.size()) return {};
    UPoly q(a.size() - b.size() + 1, 0);
    std::uint64_t li = F.inv(b.back());
    while (a.size() >= b.size()) {
        std::uint64_t c = F.mul(a.back(), li);
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
        a.pop_back();
        utrim(a);
        if (a.size() < b.size()) break;
    }
    return q;
}

inline UPoly ugcd(UPoly a, UPoly b, const PrimeField& F) {
    utrim(a);
    utrim(b);
    while (!b.empty()) {
        UPoly r = urem(a, b, F);
        a = std::move(b);
        b = std::move(r);
    }
    return umonic(a, F);
}

// Newton interpolation through (xs[i], ys[i]).
inline UPoly uinterpolate(const std::vector<std::uint64_t>& xs, const std::vector<std::uint64_t>& ys, const PrimeField& F) {
    const std::size_t n = xs.size();
    std::vector<std::uint64_t> c = ys, diff(n), pre(n + 1);
    for (std::size_t j = 1; j < n; ++j) {
        // batch inversion of xs[i] - xs[i-j]
        pre[j] = 1;
        for (std::size_t i = j; i < n; ++i) {
            diff[i] = F.sub(xs[i], xs[i - j]);
            pre[i + 1] = F.mul(pre[i], diff[i]);
        }
        std::uint64_t acc = F.inv(pre[n]);
        for (std::size_t i = n - 1; i >= j; --i) {
            std::uint64_t inv_i = F.mul(acc, pre[i]);
            acc = F.mul(acc, diff[i]);
            c[i] = F.mul(F.sub(c[i], c[i - 1]), inv_i);
            if (i == j) break;
        }
    }
    UPoly r(1, c[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;) {
        UPoly nr(r.size() + 1, 0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            nr[i + 1] = F.add(nr[i + 1], r[i]);
            nr[i] = F.sub(nr[i], F.mul(r[i], xs[k]));
        }
        nr[0] = F.add(nr[0], c[k]);
        r = std::move(nr);
    }
    utrim(r);
    return r;
}

// Determinant of a dense matrix mod p by Gaussian elimination.
inline std::uint64_t det_mod(std::vector<std::vector<std::uint64_t>> m, const PrimeField& F) {
    const std::size_t n = m.size();
    std::uint64_t d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t r = c; r < n; ++r)
            if (m[r][c]) {
                piv = r;
                break;
            }
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = F.neg(d);
        }
        d = F.mul(d, m[c][c]);
        std::uint64_t iv = F.inv(m[c][c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (!m[r][c]) continue;
            std::uint64_t f = F.mul(m[r][c], iv);
            for (std::size_t k = c; k < n; ++k)
                if (m[c][k]) m[r][k] = F.sub(m[r][k], F.mul(f, m[c][k]));
        }
    }
    return d;
}

}  // namespace toricdisc
