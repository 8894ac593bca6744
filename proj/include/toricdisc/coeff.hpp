#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "modp.hpp"

namespace toricdisc {

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The coefficient symbol c_{i,alpha}.
struct Symbol {
    int label = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

// Order-preserving 32-bit encoding of a symbol.
inline std::uint32_t symbol_key(const Symbol& s) {
    if (s.label < -128 || s.label > 127 || s.x < -2048 || s.x > 2047 || s.y < -2048 || s.y > 2047)
        throw AlgebraError("symbol out of encodable range");
    return (static_cast<std::uint32_t>(s.label + 128) << 24) | (static_cast<std::uint32_t>(s.x + 2048) << 12) |
           static_cast<std::uint32_t>(s.y + 2048);
}

inline Symbol symbol_of(std::uint32_t k) {
    return {static_cast<int>(k >> 24) - 128, static_cast<std::int64_t>((k >> 12) & 0xfff) - 2048,
            static_cast<std::int64_t>(k & 0xfff) - 2048};
}

inline int label_of_key(std::uint32_t k) { return static_cast<int>(k >> 24) - 128; }

inline std::string int_token(std::int64_t v) { return v < 0 ? "m" + std::to_string(-v) : std::to_string(v); }

// Printed as c_i_ex_ey; negative components use an m prefix (c_1_m1_0).
inline std::string symbol_name(const Symbol& s) {
    return "c_" + int_token(s.label) + "_" + int_token(s.x) + "_" + int_token(s.y);
}

inline Symbol parse_symbol_name(const std::string& name) {
    if (name.size() < 3 || name[0] != 'c' || name[1] != '_') throw AlgebraError("bad symbol name: " + name);
    std::vector<std::int64_t> parts;
    std::size_t pos = 2;
    while (pos <= name.size()) {
        std::size_t end = name.find('_', pos);
        if (end == std::string::npos) end = name.size();
        std::string tok = name.substr(pos, end - pos);
        bool neg = !tok.empty() && tok[0] == 'm';
        if (neg) tok = tok.substr(1);
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw AlgebraError("bad symbol name: " + name);
        parts.push_back(neg ? -std::stoll(tok) : std::stoll(tok));
        pos = end + 1;
    }
    if (parts.size() != 3) throw AlgebraError("bad symbol name: " + name);
    return {static_cast<int>(parts[0]), parts[1], parts[2]};
}

class Monomial {
public:
    Monomial() = default;

    static std::uint64_t pack(std::uint32_t key, std::uint32_t e) { return (static_cast<std::uint64_t>(key) << 32) | e; }
    static Monomial of(std::uint32_t key, std::uint32_t e = 1) {
        Monomial m;
        if (e) {
            m.f_.push_back(pack(key, e));
            m.deg_ = e;
        }
        return m;
    }

    std::size_t nvars() const { return f_.size(); }
    std::uint32_t var(std::size_t i) const { return static_cast<std::uint32_t>(f_[i] >> 32); }
    std::uint32_t exp(std::size_t i) const { return static_cast<std::uint32_t>(f_[i]); }
    std::uint32_t degree() const { return deg_; }
    bool is_one() const { return f_.empty(); }
    const std::vector<std::uint64_t>& raw() const { return f_; }

    std::uint32_t degree_in(std::uint32_t key) const {
        auto it = std::lower_bound(f_.begin(), f_.end(), pack(key, 0));
        if (it != f_.end() && static_cast<std::uint32_t>(*it >> 32) == key) return static_cast<std::uint32_t>(*it);
        return 0;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        r.f_.reserve(f_.size() + o.f_.size());
        std::size_t i = 0, j = 0;
        while (i < f_.size() && j < o.f_.size()) {
            std::uint32_t a = var(i), b = o.var(j);
            if (a < b) r.f_.push_back(f_[i++]);
            else if (b < a) r.f_.push_back(o.f_[j++]);
            else {
                r.f_.push_back(pack(a, exp(i) + o.exp(j)));
                ++i;
                ++j;
            }
        }
        while (i < f_.size()) r.f_.push_back(f_[i++]);
        while (j < o.f_.size()) r.f_.push_back(o.f_[j++]);
        r.deg_ = deg_ + o.deg_;
        return r;
    }

    bool divides(const Monomial& o) const {
        if (deg_ > o.deg_) return false;
        std::size_t j = 0;
        for (std::size_t i = 0; i < f_.size(); ++i) {
            while (j < o.f_.size() && o.var(j) < var(i)) ++j;
            if (j == o.f_.size() || o.var(j) != var(i) || o.exp(j) < exp(i)) return false;
        }
        return true;
    }

    // Requires divides(o) to hold for *this dividing o: returns o / *this.
    Monomial quotient_of(const Monomial& o) const {
        Monomial r;
        std::size_t i = 0;
        for (std::size_t j = 0; j < o.f_.size(); ++j) {
            std::uint32_t e = o.exp(j);
            if (i < f_.size() && var(i) == o.var(j)) e -= exp(i++);
            if (e) r.f_.push_back(pack(o.var(j), e));
        }
        r.deg_ = o.deg_ - deg_;
        return r;
    }

    static Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial r;
        std::size_t i = 0, j = 0;
        while (i < a.f_.size() && j < b.f_.size()) {
            if (a.var(i) < b.var(j)) ++i;
            else if (b.var(j) < a.var(i)) ++j;
            else {
                std::uint32_t e = std::min(a.exp(i), b.exp(j));
                r.f_.push_back(pack(a.var(i), e));
                r.deg_ += e;
                ++i;
                ++j;
            }
        }
        return r;
    }

    // Splits into the part over keys in the predicate and the rest.
    template <class Pred>
    std::pair<Monomial, Monomial> split(Pred in_first) const {
        Monomial a, b;
        for (std::size_t i = 0; i < f_.size(); ++i) {
            Monomial& t = in_first(var(i)) ? a : b;
            t.f_.push_back(f_[i]);
            t.deg_ += exp(i);
        }
        return {a, b};
    }

    Monomial without(std::uint32_t key) const {
        Monomial r;
        for (std::size_t i = 0; i < f_.size(); ++i)
            if (var(i) != key) {
                r.f_.push_back(f_[i]);
                r.deg_ += exp(i);
            }
        return r;
    }

    bool operator==(const Monomial& o) const { return deg_ == o.deg_ && f_ == o.f_; }

private:
    std::vector<std::uint64_t> f_;
    std::uint32_t deg_ = 0;
};

// Graded lexicographic: total degree first, then the earliest symbol in the order dominates.
inline int compare(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
    const auto& fa = a.raw();
    const auto& fb = b.raw();
    std::size_t n = std::min(fa.size(), fb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (fa[i] == fb[i]) continue;
        std::uint32_t va = a.var(i), vb = b.var(i);
        if (va != vb) return va < vb ? 1 : -1;
        return a.exp(i) > b.exp(i) ? 1 : -1;
    }
    if (fa.size() == fb.size()) return 0;
    return fa.size() > fb.size() ? 1 : -1;
}

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::uint64_t h = 1469598103934665603ull ^ m.degree();
        for (auto w : m.raw()) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

struct Term {
    Monomial m;
    mpz_class c;
};

class CoeffPoly {
public:
    CoeffPoly() = default;
    CoeffPoly(long v) {
        if (v) t_.push_back({Monomial(), mpz_class(v)});
    }
    CoeffPoly(const mpz_class& v) {
        if (v != 0) t_.push_back({Monomial(), v});
    }

    static CoeffPoly symbol(const Symbol& s) { return monomial(Monomial::of(symbol_key(s)), 1); }
    static CoeffPoly symbol(int label, const LatticePoint& a) { return symbol(Symbol{label, a.x, a.y}); }
    static CoeffPoly monomial(const Monomial& m, const mpz_class& c) {
        CoeffPoly p;
        if (c != 0) p.t_.push_back({m, c});
        return p;
    }
    // Sorts and combines arbitrary terms.
    static CoeffPoly from_terms(std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return compare(a.m, b.m) > 0; });
        CoeffPoly p;
        for (auto& t : terms) {
            if (!p.t_.empty() && p.t_.back().m == t.m) p.t_.back().c += t.c;
            else {
                if (!p.t_.empty() && p.t_.back().c == 0) p.t_.pop_back();
                p.t_.push_back(std::move(t));
            }
        }
        if (!p.t_.empty() && p.t_.back().c == 0) p.t_.pop_back();
        return p;
    }
    // Terms already strictly descending with nonzero coefficients.
    static CoeffPoly from_sorted(std::vector<Term> terms) {
        CoeffPoly p;
        p.t_ = std::move(terms);
        return p;
    }

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    mpz_class constant_value() const { return t_.empty() ? mpz_class(0) : t_.back().m.is_one() ? t_.back().c : mpz_class(0); }
    std::size_t size() const { return t_.size(); }
    const std::vector<Term>& terms() const { return t_; }
    const Term& leading() const { return t_.front(); }
    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (auto& t : t_) d = std::max(d, t.m.degree());
        return d;
    }

    friend bool operator==(const CoeffPoly& a, const CoeffPoly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (std::size_t i = 0; i < a.t_.size(); ++i)
            if (a.t_[i].c != b.t_[i].c || !(a.t_[i].m == b.t_[i].m)) return false;
        return true;
    }

    CoeffPoly operator-() const {
        CoeffPoly r = *this;
        for (auto& t : r.t_) t.c = -t.c;
        return r;
    }

    friend CoeffPoly operator+(const CoeffPoly& a, const CoeffPoly& b) { return combine(a, b, false); }
    friend CoeffPoly operator-(const CoeffPoly& a, const CoeffPoly& b) { return combine(a, b, true); }
    CoeffPoly& operator+=(const CoeffPoly& b) { return *this = combine(*this, b, false); }
    CoeffPoly& operator-=(const CoeffPoly& b) { return *this = combine(*this, b, true); }

    CoeffPoly scaled(const mpz_class& s) const {
        if (s == 0) return {};
        CoeffPoly r = *this;
        for (auto& t : r.t_) t.c *= s;
        return r;
    }

    CoeffPoly times_monomial(const Monomial& m, const mpz_class& c) const {
        CoeffPoly r;
        if (c == 0) return r;
        r.t_.reserve(t_.size());
        for (auto& t : t_) r.t_.push_back({t.m * m, t.c * c});
        return r;
    }

    friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        const CoeffPoly& s = a.t_.size() <= b.t_.size() ? a : b;
        const CoeffPoly& l = a.t_.size() <= b.t_.size() ? b : a;
        std::vector<CoeffPoly> parts;
        parts.reserve(s.t_.size());
        for (auto& t : s.t_) parts.push_back(l.times_monomial(t.m, t.c));
        while (parts.size() > 1) {
            std::vector<CoeffPoly> next;
            next.reserve(parts.size() / 2 + 1);
            for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(combine(parts[i], parts[i + 1], false));
            if (parts.size() % 2) next.push_back(std::move(parts.back()));
            parts = std::move(next);
        }
        return std::move(parts[0]);
    }
    CoeffPoly& operator*=(const CoeffPoly& b) { return *this = *this * b; }

    CoeffPoly pow(unsigned e) const {
        CoeffPoly r(1), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    // Exact quotient or nullopt; on failure *bad receives the offending remainder term.
    std::optional<CoeffPoly> try_divide(const CoeffPoly& d, Term* bad = nullptr) const {
        if (d.is_zero()) throw AlgebraError("division by zero polynomial");
        if (is_zero()) return CoeffPoly();
        const Term& lt = d.t_[0];
        if (d.t_.size() == 1) {
            CoeffPoly q;
            q.t_.reserve(t_.size());
            for (auto& t : t_) {
                if (!lt.m.divides(t.m) || !mpz_divisible_p(t.c.get_mpz_t(), lt.c.get_mpz_t())) {
                    if (bad) *bad = t;
                    return std::nullopt;
                }
                q.t_.push_back({lt.m.quotient_of(t.m), t.c / lt.c});
            }
            return q;
        }
        struct Entry {
            Monomial m;
            std::size_t i, j;
        };
        auto less = [](const Entry& a, const Entry& b) { return compare(a.m, b.m) < 0; };
        std::priority_queue<Entry, std::vector<Entry>, decltype(less)> heap(less);
        std::vector<Term> q;
        std::size_t k = 0;
        mpz_class c, tmp;
        while (k < t_.size() || !heap.empty()) {
            Monomial cur;
            if (heap.empty()) cur = t_[k].m;
            else if (k >= t_.size()) cur = heap.top().m;
            else cur = compare(t_[k].m, heap.top().m) >= 0 ? t_[k].m : heap.top().m;
            c = 0;
            if (k < t_.size() && t_[k].m == cur) c = t_[k++].c;
            while (!heap.empty() && heap.top().m == cur) {
                Entry e = heap.top();
                heap.pop();
                mpz_mul(tmp.get_mpz_t(), q[e.j].c.get_mpz_t(), d.t_[e.i].c.get_mpz_t());
                c -= tmp;
                if (e.i + 1 < d.t_.size()) heap.push({q[e.j].m * d.t_[e.i + 1].m, e.i + 1, e.j});
            }
            if (c == 0) continue;
            if (!lt.m.divides(cur) || !mpz_divisible_p(c.get_mpz_t(), lt.c.get_mpz_t())) {
                if (bad) *bad = Term{cur, c};
                return std::nullopt;
            }
            q.push_back({lt.m.quotient_of(cur), c / lt.c});
            heap.push({q.back().m * d.t_[1].m, 1, q.size() - 1});
        }
        return from_sorted(std::move(q));
    }

    CoeffPoly exact_divide(const CoeffPoly& d) const;

    std::set<std::uint32_t> variables() const {
        std::set<std::uint32_t> s;
        for (auto& t : t_)
            for (std::size_t i = 0; i < t.m.nvars(); ++i) s.insert(t.m.var(i));
        return s;
    }
    std::uint32_t degree_in(std::uint32_t key) const {
        std::uint32_t d = 0;
        for (auto& t : t_) d = std::max(d, t.m.degree_in(key));
        return d;
    }
    // Coefficients with respect to one symbol; entry e multiplies key^e.
    std::vector<CoeffPoly> coefficients_in(std::uint32_t key) const {
        std::vector<std::vector<Term>> buckets(degree_in(key) + 1);
        for (auto& t : t_) buckets[t.m.degree_in(key)].push_back({t.m.without(key), t.c});
        std::vector<CoeffPoly> out;
        out.reserve(buckets.size());
        for (auto& b : buckets) out.push_back(from_sorted(std::move(b)));
        return out;
    }
    static CoeffPoly from_coefficients(const std::vector<CoeffPoly>& cs, std::uint32_t key) {
        std::vector<Term> all;
        for (std::size_t e = 0; e < cs.size(); ++e)
            for (auto& t : cs[e].t_) all.push_back({t.m * Monomial::of(key, static_cast<std::uint32_t>(e)), t.c});
        return from_terms(std::move(all));
    }

    mpz_class content() const {
        mpz_class g = 0;
        for (auto& t : t_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }
    Monomial monomial_content() const {
        if (t_.empty()) return {};
        Monomial g = t_[0].m;
        for (auto& t : t_) {
            if (g.is_one()) break;
            g = Monomial::gcd(g, t.m);
        }
        return g;
    }
    CoeffPoly divided_by_monomial(const Monomial& m) const {
        CoeffPoly r;
        r.t_.reserve(t_.size());
        for (auto& t : t_) r.t_.push_back({m.quotient_of(t.m), t.c});
        return r;
    }
    CoeffPoly primitive_part() const {
        if (t_.empty()) return {};
        mpz_class g = content();
        CoeffPoly r = *this;
        if (g != 1)
            for (auto& t : r.t_) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
        return r;
    }
    // Leading coefficient made positive.
    CoeffPoly sign_normalized() const { return (!t_.empty() && t_[0].c < 0) ? -*this : *this; }
    bool same_up_to_sign(const CoeffPoly& o) const { return *this == o || *this == -o; }

    // Label -> maximal total degree in the symbols carrying that label.
    std::map<int, std::uint32_t> group_multidegree() const {
        std::map<int, std::uint32_t> out;
        for (auto& t : t_) {
            std::map<int, std::uint32_t> d;
            for (std::size_t i = 0; i < t.m.nvars(); ++i) d[label_of_key(t.m.var(i))] += t.m.exp(i);
            for (auto& [l, v] : d) out[l] = std::max(out[l], v);
        }
        return out;
    }
    bool is_group_homogeneous() const {
        auto md = group_multidegree();
        for (auto& t : t_) {
            std::map<int, std::uint32_t> d;
            for (std::size_t i = 0; i < t.m.nvars(); ++i) d[label_of_key(t.m.var(i))] += t.m.exp(i);
            for (auto& [l, v] : md)
                if (d[l] != v) return false;
        }
        return true;
    }

    mpq_class evaluate(const std::map<Symbol, mpq_class>& a) const {
        std::unordered_map<std::uint32_t, mpq_class> vals;
        for (auto& [s, v] : a) vals[symbol_key(s)] = v;
        mpq_class acc = 0;
        for (auto& t : t_) {
            mpq_class term(t.c);
            for (std::size_t i = 0; i < t.m.nvars(); ++i) {
                auto it = vals.find(t.m.var(i));
                if (it == vals.end()) throw AlgebraError("missing symbol " + symbol_name(symbol_of(t.m.var(i))));
                mpq_class pw;
                mpz_pow_ui(pw.get_num_mpz_t(), it->second.get_num().get_mpz_t(), t.m.exp(i));
                mpz_pow_ui(pw.get_den_mpz_t(), it->second.get_den().get_mpz_t(), t.m.exp(i));
                pw.canonicalize();
                term *= pw;
            }
            acc += term;
        }
        return acc;
    }

    // Partial evaluation: symbols in the map are replaced by rationals; the result is scaled to integers.
    // Returns the polynomial over Q as (integer polynomial, common denominator).
    std::pair<CoeffPoly, mpz_class> partial_evaluate(const std::map<Symbol, mpq_class>& a) const {
        std::unordered_map<std::uint32_t, mpq_class> vals;
        for (auto& [s, v] : a) vals[symbol_key(s)] = v;
        std::vector<std::pair<Monomial, mpq_class>> acc;
        for (auto& t : t_) {
            mpq_class term(t.c);
            Monomial rest;
            for (std::size_t i = 0; i < t.m.nvars(); ++i) {
                auto it = vals.find(t.m.var(i));
                if (it == vals.end()) {
                    rest = rest * Monomial::of(t.m.var(i), t.m.exp(i));
                    continue;
                }
                mpq_class pw;
                mpz_pow_ui(pw.get_num_mpz_t(), it->second.get_num().get_mpz_t(), t.m.exp(i));
                mpz_pow_ui(pw.get_den_mpz_t(), it->second.get_den().get_mpz_t(), t.m.exp(i));
                pw.canonicalize();
                term *= pw;
            }
            acc.push_back({rest, term});
        }
        mpz_class den = 1;
        for (auto& [m, q] : acc) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
        std::vector<Term> terms;
        for (auto& [m, q] : acc) {
            mpq_class s = q * den;
            terms.push_back({m, s.get_num()});
        }
        return {from_terms(std::move(terms)), den};
    }

    std::uint64_t evaluate_mod(const std::unordered_map<std::uint32_t, std::uint64_t>& vals, const PrimeField& F) const {
        std::uint64_t acc = 0;
        for (auto& t : t_) {
            std::uint64_t v = F.from_mpz(t.c);
            for (std::size_t i = 0; i < t.m.nvars() && v; ++i) {
                auto it = vals.find(t.m.var(i));
                if (it == vals.end()) throw AlgebraError("missing symbol " + symbol_name(symbol_of(t.m.var(i))));
                v = F.mul(v, F.pow(it->second, t.m.exp(i)));
            }
            acc = F.add(acc, v);
        }
        return acc;
    }

    // Replaces symbols by polynomials; unlisted symbols are kept.
    CoeffPoly substitute(const std::map<std::uint32_t, CoeffPoly>& sub) const {
        auto in_sub = [&](std::uint32_t k) { return sub.count(k) > 0; };
        std::vector<std::pair<Monomial, std::vector<Term>>> groups;
        std::unordered_map<Monomial, std::size_t, MonomialHash> where;
        for (auto& t : t_) {
            auto [s, keep] = t.m.split(in_sub);
            auto it = where.find(s);
            if (it == where.end()) {
                where.emplace(s, groups.size());
                groups.push_back({s, {}});
                it = where.find(s);
            }
            groups[it->second].second.push_back({keep, t.c});
        }
        std::map<std::pair<std::uint32_t, std::uint32_t>, CoeffPoly> powers;
        auto power = [&](std::uint32_t k, std::uint32_t e) -> const CoeffPoly& {
            auto key = std::make_pair(k, e);
            auto it = powers.find(key);
            if (it != powers.end()) return it->second;
            CoeffPoly v = e == 1 ? sub.at(k) : sub.at(k).pow(e);
            return powers.emplace(key, std::move(v)).first->second;
        };
        std::vector<CoeffPoly> parts;
        for (auto& [s, keep] : groups) {
            CoeffPoly p = from_sorted(std::move(keep));
            for (std::size_t i = 0; i < s.nvars(); ++i) p = p * power(s.var(i), s.exp(i));
            parts.push_back(std::move(p));
        }
        return sum(std::move(parts));
    }

    static CoeffPoly sum(std::vector<CoeffPoly> parts) {
        if (parts.empty()) return {};
        while (parts.size() > 1) {
            std::vector<CoeffPoly> next;
            for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(combine(parts[i], parts[i + 1], false));
            if (parts.size() % 2) next.push_back(std::move(parts.back()));
            parts = std::move(next);
        }
        return std::move(parts[0]);
    }

    std::string to_string() const;

private:
    static CoeffPoly combine(const CoeffPoly& a, const CoeffPoly& b, bool subtract) {
        CoeffPoly r;
        r.t_.reserve(a.t_.size() + b.t_.size());
        std::size_t i = 0, j = 0;
        while (i < a.t_.size() && j < b.t_.size()) {
            int c = compare(a.t_[i].m, b.t_[j].m);
            if (c > 0) r.t_.push_back(a.t_[i++]);
            else if (c < 0) {
                r.t_.push_back(b.t_[j++]);
                if (subtract) r.t_.back().c = -r.t_.back().c;
            } else {
                mpz_class s = a.t_[i].c;
                if (subtract) s -= b.t_[j].c;
                else s += b.t_[j].c;
                if (s != 0) r.t_.push_back({a.t_[i].m, std::move(s)});
                ++i;
                ++j;
            }
        }
        while (i < a.t_.size()) r.t_.push_back(a.t_[i++]);
        while (j < b.t_.size()) {
            r.t_.push_back(b.t_[j++]);
            if (subtract) r.t_.back().c = -r.t_.back().c;
        }
        return r;
    }

    std::vector<Term> t_;
};

inline std::string monomial_string(const Monomial& m) {
    std::string s;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
        if (!s.empty()) s += "*";
        s += symbol_name(symbol_of(m.var(i)));
        if (m.exp(i) > 1) s += "^" + std::to_string(m.exp(i));
    }
    return s;
}

inline CoeffPoly CoeffPoly::exact_divide(const CoeffPoly& d) const {
    Term bad;
    auto q = try_divide(d, &bad);
    if (!q) {
        std::string lt = bad.c.get_str() + (bad.m.is_one() ? "" : "*" + monomial_string(bad.m));
        throw AlgebraError("inexact division, remainder term " + lt);
    }
    return *q;
}

// Canonical text: terms in descending canonical order, e.g. "c_1_1_0^2 - 4*c_1_0_0*c_1_2_0".
inline std::string CoeffPoly::to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& t : t_) {
        mpz_class a = abs(t.c);
        if (first) s += t.c < 0 ? "-" : "";
        else s += t.c < 0 ? " - " : " + ";
        first = false;
        if (t.m.is_one()) s += a.get_str();
        else if (a == 1) s += monomial_string(t.m);
        else s += a.get_str() + "*" + monomial_string(t.m);
    }
    return s;
}

inline CoeffPoly parse_coeff_poly(const std::string& text) {
    std::vector<Term> terms;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (text.substr(i) == "0") return {};
    while (i < text.size()) {
        int sign = 1;
        skip();
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') sign = -1;
            ++i;
            skip();
        }
        mpz_class c = 1;
        Monomial m;
        bool any = false;
        for (;;) {
            skip();
            if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                std::size_t s = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                c *= mpz_class(text.substr(s, i - s));
            } else if (i < text.size() && text[i] == 'c') {
                std::size_t s = i;
                while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
                Symbol sym = parse_symbol_name(text.substr(s, i - s));
                std::uint32_t e = 1;
                if (i < text.size() && text[i] == '^') {
                    std::size_t t = ++i;
                    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                    if (t == i) throw AlgebraError("bad exponent in polynomial text");
                    e = static_cast<std::uint32_t>(std::stoul(text.substr(t, i - t)));
                }
                m = m * Monomial::of(symbol_key(sym), e);
            } else {
                throw AlgebraError("unexpected character in polynomial text at offset " + std::to_string(i));
            }
            any = true;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        if (!any) throw AlgebraError("empty term in polynomial text");
        terms.push_back({m, sign * c});
        skip();
    }
    return CoeffPoly::from_terms(std::move(terms));
}

// Bivariate Laurent polynomial with CoeffPoly coefficients.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(SupportConfig support) : support_(std::move(support)) {}

    // Generic polynomial: coefficient c_{label,alpha} at every alpha of the support.
    static LaurentPoly symbolic(const SupportConfig& a) {
        LaurentPoly f(a);
        for (const auto& p : a.points) f.terms_[p] = CoeffPoly::symbol(a.label, p);
        return f;
    }

    const SupportConfig& support() const { return support_; }
    int label() const { return support_.label; }
    const std::map<LatticePoint, CoeffPoly>& terms() const { return terms_; }

    void set(const LatticePoint& p, const CoeffPoly& c) {
        if (!support_.index_of(p)) throw AlgebraError("exponent outside declared support");
        if (c.is_zero()) terms_.erase(p);
        else terms_[p] = c;
    }
    CoeffPoly coeff(const LatticePoint& p) const {
        auto it = terms_.find(p);
        return it == terms_.end() ? CoeffPoly() : it->second;
    }
    bool is_zero() const { return terms_.empty(); }
    bool is_symbolic() const {
        if (terms_.size() != support_.size()) return false;
        for (auto& [p, c] : terms_)
            if (!(c == CoeffPoly::symbol(support_.label, p))) return false;
        return true;
    }
    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

    // x_k d/dx_k, which keeps the support.
    LaurentPoly euler_derivative(int k) const {
        LaurentPoly r(support_);
        for (auto& [p, c] : terms_) {
            std::int64_t e = k == 1 ? p.x : p.y;
            if (e) r.terms_[p] = c.scaled(mpz_class(static_cast<long>(e)));
        }
        return r;
    }

    LaurentPoly partial_derivative(int k) const {
        std::vector<LatticePoint> pts;
        for (const auto& p : support_.points) {
            std::int64_t e = k == 1 ? p.x : p.y;
            if (e) pts.push_back(k == 1 ? LatticePoint{p.x - 1, p.y} : LatticePoint{p.x, p.y - 1});
        }
        if (pts.empty()) pts.push_back({0, 0});
        LaurentPoly r(SupportConfig(support_.label, pts));
        for (auto& [p, c] : terms_) {
            std::int64_t e = k == 1 ? p.x : p.y;
            if (!e) continue;
            LatticePoint q = k == 1 ? LatticePoint{p.x - 1, p.y} : LatticePoint{p.x, p.y - 1};
            r.terms_[q] = c.scaled(mpz_class(static_cast<long>(e)));
        }
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r(minkowski_sum(a.support_, b.support_));
        for (auto& [p, c] : a.terms_)
            for (auto& [q, d] : b.terms_) r.terms_[p + q] += c * d;
        r.drop_zeros();
        return r;
    }
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return merge(a, b, false); }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return merge(a, b, true); }

    LaurentPoly with_support(const SupportConfig& s) const {
        LaurentPoly r(s);
        for (auto& [p, c] : terms_) r.set(p, c);
        return r;
    }

    LaurentPoly specialize(const std::map<Symbol, mpq_class>& a, mpz_class* denominator = nullptr) const {
        std::map<LatticePoint, mpq_class> vals;
        mpz_class den = 1;
        for (auto& [p, c] : terms_) {
            vals[p] = c.evaluate(a);
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), vals[p].get_den().get_mpz_t());
        }
        LaurentPoly r(support_);
        for (auto& [p, v] : vals) {
            mpq_class s = v * den;
            r.set(p, CoeffPoly(s.get_num()));
        }
        if (denominator) *denominator = den;
        return r;
    }

    // Evaluation at a torus point with rational coordinates.
    mpq_class value_at(const mpq_class& x1, const mpq_class& x2) const {
        mpq_class acc = 0;
        for (auto& [p, c] : terms_) {
            if (!c.is_constant()) throw AlgebraError("value_at needs numeric coefficients");
            acc += mpq_class(c.constant_value()) * qpow(x1, p.x) * qpow(x2, p.y);
        }
        return acc;
    }

    static mpq_class qpow(const mpq_class& b, std::int64_t e) {
        if (e < 0) return 1 / qpow(b, -e);
        mpq_class r = 1;
        for (std::int64_t i = 0; i < e; ++i) r *= b;
        return r;
    }

private:
    static LaurentPoly merge(const LaurentPoly& a, const LaurentPoly& b, bool subtract) {
        std::vector<LatticePoint> pts = a.support_.points;
        for (const auto& p : b.support_.points)
            if (!a.support_.index_of(p)) pts.push_back(p);
        LaurentPoly r(SupportConfig(a.support_.label, pts));
        r.terms_ = a.terms_;
        for (auto& [p, c] : b.terms_) {
            if (subtract) r.terms_[p] -= c;
            else r.terms_[p] += c;
        }
        r.drop_zeros();
        return r;
    }
    void drop_zeros() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }

    SupportConfig support_;
    std::map<LatticePoint, CoeffPoly> terms_;
};

// det [[x1 df1/dx1, x2 df1/dx2], [x1 df2/dx1, x2 df2/dx2]], declared on A1 + A2.
inline LaurentPoly toric_jacobian(const LaurentPoly& f1, const LaurentPoly& f2, int label = 0) {
    LaurentPoly r(minkowski_sum(f1.support(), f2.support(), label ? label : f1.label()));
    std::map<LatticePoint, CoeffPoly> acc;
    for (auto& [a, c] : f1.terms())
        for (auto& [b, d] : f2.terms()) {
            std::int64_t det = a.x * b.y - a.y * b.x;
            if (det) acc[a + b] += (c * d).scaled(mpz_class(static_cast<long>(det)));
        }
    for (auto& [p, c] : acc)
        if (!c.is_zero()) r.set(p, c);
    return r;
}

// Subsum of f over the face of its declared support selected by the profile.
inline LaurentPoly facial_restriction(const LaurentPoly& f, const EdgeProfile& profile, int which) {
    std::vector<LatticePoint> pts;
    for (auto k : profile.face(which)) pts.push_back(f.support().points.at(k));
    LaurentPoly r(SupportConfig(f.label(), pts));
    for (const auto& p : pts) r.set(p, f.coeff(p));
    return r;
}

}  // namespace toricdisc
