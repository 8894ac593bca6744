#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

#include "coeff.hpp"
#include "modp.hpp"

namespace toricdisc {

namespace detail {

class GcdEngine {
public:
    explicit GcdEngine(std::uint64_t seed) : rng_(seed), F_(kPrime61) {}

    CoeffPoly gcd(const CoeffPoly& a, const CoeffPoly& b) {
        if (a.is_zero()) return b.primitive_part().sign_normalized();
        if (b.is_zero()) return a.primitive_part().sign_normalized();
        Monomial ma = a.monomial_content(), mb = b.monomial_content();
        Monomial mg = Monomial::gcd(ma, mb);
        CoeffPoly pa = a.divided_by_monomial(ma).primitive_part();
        CoeffPoly pb = b.divided_by_monomial(mb).primitive_part();
        CoeffPoly g = gcd_prim(pa, pb);
        return g.times_monomial(mg, 1).sign_normalized();
    }

    // gcd of a list, smallest entries first.
    CoeffPoly gcd_list(std::vector<CoeffPoly> ps) {
        ps.erase(std::remove_if(ps.begin(), ps.end(), [](const CoeffPoly& p) { return p.is_zero(); }), ps.end());
        if (ps.empty()) return {};
        std::sort(ps.begin(), ps.end(), [](const CoeffPoly& x, const CoeffPoly& y) { return x.size() < y.size(); });
        CoeffPoly g = ps[0].primitive_part().sign_normalized();
        for (std::size_t i = 1; i < ps.size(); ++i) {
            if (g.is_constant()) return CoeffPoly(1);
            g = gcd(g, ps[i]);
        }
        return g.is_constant() ? CoeffPoly(1) : g;
    }

    CoeffPoly content_in(const CoeffPoly& a, std::uint32_t v) { return gcd_list(a.coefficients_in(v)); }

private:
    // Degree of gcd of univariate images in v, others at random points; -1 if the images lost degree.
    long probe(const CoeffPoly& a, const CoeffPoly& b, std::uint32_t v, const std::unordered_map<std::uint32_t, std::uint64_t>& pt) {
        UPoly ia = image(a, v, pt), ib = image(b, v, pt);
        if (udeg(ia) != static_cast<long>(a.degree_in(v)) || udeg(ib) != static_cast<long>(b.degree_in(v))) return -1;
        return udeg(ugcd(ia, ib, F_));
    }

    UPoly image(const CoeffPoly& a, std::uint32_t v, const std::unordered_map<std::uint32_t, std::uint64_t>& pt) {
        UPoly r(a.degree_in(v) + 1, 0);
        for (auto& t : a.terms()) {
            std::uint64_t c = F_.from_mpz(t.c);
            std::uint32_t e = 0;
            for (std::size_t i = 0; i < t.m.nvars() && c; ++i) {
                if (t.m.var(i) == v) e = t.m.exp(i);
                else c = F_.mul(c, F_.pow(pt.at(t.m.var(i)), t.m.exp(i)));
            }
            r[e] = F_.add(r[e], c);
        }
        utrim(r);
        return r;
    }

    std::map<std::uint32_t, long> degree_probes(const CoeffPoly& a, const CoeffPoly& b, const std::set<std::uint32_t>& vars) {
        std::uniform_int_distribution<std::uint64_t> dist(1, F_.prime() - 1);
        for (int attempt = 0; attempt < 8; ++attempt) {
            std::unordered_map<std::uint32_t, std::uint64_t> pt;
            for (auto v : vars) pt[v] = dist(rng_);
            std::map<std::uint32_t, long> d;
            bool ok = true;
            for (auto v : vars) {
                long k = probe(a, b, v, pt);
                if (k < 0) {
                    ok = false;
                    break;
                }
                d[v] = k;
            }
            if (ok) return d;
        }
        throw AlgebraError("gcd degree probes kept degenerating");
    }

    CoeffPoly gcd_prim(const CoeffPoly& a, const CoeffPoly& b) {
        if (a.is_constant() || b.is_constant()) return CoeffPoly(1);
        if (a.same_up_to_sign(b)) return a.sign_normalized();
        auto va = a.variables(), vb = b.variables();
        for (auto v : va)
            if (!vb.count(v)) return with_list(b, a.coefficients_in(v));
        for (auto v : vb)
            if (!va.count(v)) return with_list(a, b.coefficients_in(v));
        auto d = degree_probes(a, b, va);
        bool all_zero = true, like_a = true, like_b = true;
        std::uint32_t free_var = 0, best_free = 0;
        bool have_free = false;
        for (auto [v, k] : d) {
            if (k) all_zero = false;
            if (k != static_cast<long>(a.degree_in(v))) like_a = false;
            if (k != static_cast<long>(b.degree_in(v))) like_b = false;
            if (k == 0 && a.degree_in(v) + b.degree_in(v) > best_free) {
                best_free = a.degree_in(v) + b.degree_in(v);
                free_var = v;
                have_free = true;
            }
        }
        if (all_zero) return CoeffPoly(1);
        if (have_free) {
            const CoeffPoly& big = a.size() >= b.size() ? a : b;
            const CoeffPoly& small = a.size() >= b.size() ? b : a;
            auto cs = small.coefficients_in(free_var);
            cs.push_back(big);
            return gcd_list(std::move(cs));
        }
        if (like_a && b.try_divide(a)) return a.sign_normalized();
        if (like_b && a.try_divide(b)) return b.sign_normalized();
        for (auto [v, k] : d) {
            if (k > 0 && k == static_cast<long>(a.degree_in(v))) return split_on(a, b, v);
            if (k > 0 && k == static_cast<long>(b.degree_in(v))) return split_on(b, a, v);
        }
        return prs(a, b, d);
    }

    // Cofactor of p is free of v: gcd = pp_v(p) * gcd(cont_v p, cont_v q).
    CoeffPoly split_on(const CoeffPoly& p, const CoeffPoly& q, std::uint32_t v) {
        CoeffPoly cp = content_in(p, v);
        CoeffPoly pp = p.exact_divide(cp);
        CoeffPoly cq = content_in(q, v);
        return (pp * gcd(cp, cq)).primitive_part().sign_normalized();
    }

    CoeffPoly with_list(const CoeffPoly& other, std::vector<CoeffPoly> cs) {
        cs.push_back(other);
        return gcd_list(std::move(cs));
    }

    using Upoly = std::vector<CoeffPoly>;

    static void trim(Upoly& p) {
        while (!p.empty() && p.back().is_zero()) p.pop_back();
    }

    static Upoly prem(Upoly A, const Upoly& B) {
        long da = static_cast<long>(A.size()) - 1, db = static_cast<long>(B.size()) - 1;
        const CoeffPoly& lb = B.back();
        long e = da - db + 1;
        while (static_cast<long>(A.size()) - 1 >= db && !A.empty()) {
            CoeffPoly lr = A.back();
            long shift = static_cast<long>(A.size()) - 1 - db;
            for (auto& c : A) c = c * lb;
            for (long i = 0; i <= db; ++i) A[shift + i] -= lr * B[i];
            A.pop_back();
            trim(A);
            --e;
        }
        if (e > 0) {
            CoeffPoly f = lb.pow(static_cast<unsigned>(e));
            for (auto& c : A) c = c * f;
        }
        return A;
    }

    CoeffPoly prs(const CoeffPoly& a, const CoeffPoly& b, const std::map<std::uint32_t, long>& d) {
        std::uint32_t v = d.begin()->first;
        std::uint32_t best = ~0u;
        for (auto [x, k] : d) {
            (void)k;
            std::uint32_t s = a.degree_in(x) + b.degree_in(x);
            if (s < best) {
                best = s;
                v = x;
            }
        }
        CoeffPoly ca = content_in(a, v), cb = content_in(b, v);
        CoeffPoly cg = gcd(ca, cb);
        Upoly A = a.exact_divide(ca).coefficients_in(v), B = b.exact_divide(cb).coefficients_in(v);
        if (A.size() < B.size()) std::swap(A, B);
        CoeffPoly g(1), h(1);
        for (;;) {
            long delta = static_cast<long>(A.size()) - static_cast<long>(B.size());
            Upoly R = prem(A, B);
            if (R.empty()) break;
            if (R.size() == 1) return cg;
            CoeffPoly div = g * h.pow(static_cast<unsigned>(delta));
            for (auto& c : R) c = c.exact_divide(div);
            A = std::move(B);
            B = std::move(R);
            g = A.back();
            if (delta > 0) h = g.pow(static_cast<unsigned>(delta)).exact_divide(h.pow(static_cast<unsigned>(delta - 1)));
        }
        CoeffPoly last = CoeffPoly::from_coefficients(B, v);
        CoeffPoly pl = last.exact_divide(content_in(last, v));
        return (pl * cg).primitive_part().sign_normalized();
    }

    std::mt19937_64 rng_;
    PrimeField F_;
};

}  // namespace detail

// Greatest common divisor over Q, primitive over Z with positive leading coefficient.
inline CoeffPoly mv_gcd(const CoeffPoly& a, const CoeffPoly& b, std::uint64_t seed = 0x5eed) {
    if (a.is_zero() && b.is_zero()) throw AlgebraError("gcd of two zero polynomials");
    for (int attempt = 0; attempt < 4; ++attempt) {
        detail::GcdEngine eng(seed + static_cast<std::uint64_t>(attempt) * 7919);
        CoeffPoly g = eng.gcd(a, b);
        if ((a.is_zero() || a.try_divide(g)) && (b.is_zero() || b.try_divide(g))) return g;
    }
    throw AlgebraError("gcd verification failed");
}

}  // namespace toricdisc
