#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coeff.hpp"
#include "determinant.hpp"
#include "gcd.hpp"
#include "lattice.hpp"
#include "modp.hpp"

namespace toricdisc {

class ResultantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonGenericLifting : public ResultantError {
public:
    NonGenericLifting() : ResultantError("lifting not generic, reseed") {}
};

// Univariate polynomial over CoeffPoly; entry k multiplies t^k.
using UniPoly = std::vector<CoeffPoly>;

inline void trim(UniPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

inline PolyMatrix sylvester_matrix(UniPoly f, UniPoly g) {
    trim(f);
    trim(g);
    if (f.empty() || g.empty()) throw ResultantError("zero polynomial in resultant");
    const std::size_t m = f.size() - 1, n = g.size() - 1;
    if (m == 0 && n == 0) throw ResultantError("no variable to eliminate");
    PolyMatrix s(m + n, std::vector<CoeffPoly>(m + n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= m; ++k) s[i][i + m - k] = f[k];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k <= n; ++k) s[n + i][i + n - k] = g[k];
    return s;
}

inline CoeffPoly sylvester_resultant(const UniPoly& f, const UniPoly& g) {
    return ff_determinant(sylvester_matrix(f, g)).sign_normalized();
}

// Univariate view of a polynomial whose support lies on a line with primitive direction u.
struct LineView {
    UniPoly poly;
    std::int64_t length = 0;  // lattice length of the declared support
};

inline LineView line_view(const LaurentPoly& f, const LatticePoint& u) {
    const auto& pts = f.support().points;
    for (const auto& p : pts)
        if (cross(p - pts[0], u) != 0) throw ResultantError("face polynomials are not homogeneous for a common normal");
    std::int64_t uu = dot(u, u);
    std::int64_t lo = dot(pts[0], u), hi = lo;
    for (const auto& p : pts) {
        lo = std::min(lo, dot(p, u));
        hi = std::max(hi, dot(p, u));
    }
    LineView v;
    v.length = (hi - lo) / uu;
    v.poly.assign(static_cast<std::size_t>(v.length) + 1, CoeffPoly());
    for (const auto& [p, c] : f.terms()) v.poly[static_cast<std::size_t>((dot(p, u) - lo) / uu)] = c;
    return v;
}

inline std::optional<LatticePoint> common_direction(const LaurentPoly& a, const LaurentPoly& b) {
    for (const LaurentPoly* f : {&a, &b}) {
        const auto& pts = f->support().points;
        for (std::size_t k = 1; k < pts.size(); ++k) {
            LatticePoint d = pts[k] - pts[0];
            std::int64_t g = igcd(d.x, d.y);
            if (g) return LatticePoint{d.x / g, d.y / g};
        }
    }
    return std::nullopt;
}

// Resultant of two face polynomials on parallel edges (or vertices), in the cycle convention.
inline CoeffPoly edge_resultant(const LaurentPoly& f1, const LaurentPoly& f2, std::optional<LatticePoint> direction = std::nullopt) {
    bool m1 = f1.support().size() == 1, m2 = f2.support().size() == 1;
    if (m1 && m2) return CoeffPoly(1);
    LatticePoint u = direction ? *direction : *common_direction(f1, f2);
    LineView v1 = line_view(f1, u), v2 = line_view(f2, u);
    if (m1) return f1.terms().empty() ? CoeffPoly() : f1.terms().begin()->second.pow(static_cast<unsigned>(v2.length));
    if (m2) return f2.terms().empty() ? CoeffPoly() : f2.terms().begin()->second.pow(static_cast<unsigned>(v1.length));
    return sylvester_resultant(v1.poly, v2.poly);
}

using Triple = std::array<SupportConfig, 3>;

struct Lifting3 {
    std::array<std::vector<std::int64_t>, 3> w;

    static Lifting3 random(const Triple& a, std::uint64_t seed, int bits = 16) {
        std::mt19937_64 rng(seed);
        Lifting3 l;
        for (int i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < a[i].size(); ++k) l.w[i].push_back(static_cast<std::int64_t>(rng() >> (64 - bits)));
        return l;
    }
    Lifting3 negated() const {
        Lifting3 l = *this;
        for (auto& v : l.w)
            for (auto& x : v) x = -x;
        return l;
    }
};

struct SubdivisionCell {
    std::array<std::vector<std::size_t>, 3> faces;
    std::vector<LatticePoint> vertices;
    bool mixed = false;
    int vertex_summand = -1;  // for mixed cells, the summand contributing a single point
    std::int64_t volume = 0;
};

inline std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Fine mixed subdivision of A1+A2+A3 induced by the lifting (lower faces of the lifted sum).
inline std::vector<SubdivisionCell> mixed_subdivision(const Triple& a, const Lifting3& w) {
    std::vector<SubdivisionCell> cells;
    std::vector<LatticePoint> sum = minkowski_points(minkowski_points(a[0].points, a[1].points), a[2].points);
    const std::int64_t total = normalized_volume(sum);
    std::array<std::vector<std::vector<std::vector<std::size_t>>>, 3> subsets;
    for (int i = 0; i < 3; ++i)
        for (std::size_t k = 1; k <= 3; ++k) subsets[i].push_back(index_subsets(a[i].size(), k));
    std::int64_t covered = 0;
    for (int e0 = 0; e0 <= 2; ++e0)
        for (int e1 = 0; e1 <= 2 - e0; ++e1) {
            int e2 = 2 - e0 - e1;
            std::array<int, 3> ext{e0, e1, e2};
            for (const auto& F0 : subsets[0][e0])
                for (const auto& F1 : subsets[1][e1])
                    for (const auto& F2 : subsets[2][e2]) {
                        std::array<const std::vector<std::size_t>*, 3> F{&F0, &F1, &F2};
                        std::vector<std::pair<LatticePoint, std::int64_t>> rows;
                        for (int i = 0; i < 3; ++i)
                            for (std::size_t k = 1; k < F[i]->size(); ++k) {
                                std::size_t a0 = (*F[i])[0], ak = (*F[i])[k];
                                rows.push_back({a[i].points[ak] - a[i].points[a0], -(w.w[i][ak] - w.w[i][a0])});
                            }
                        auto [d1, r1] = rows[0];
                        auto [d2, r2] = rows[1];
                        __int128 det = cross(d1, d2);
                        if (det == 0) continue;
                        __int128 nx = static_cast<__int128>(r1) * d2.y - static_cast<__int128>(r2) * d1.y;
                        __int128 ny = static_cast<__int128>(d1.x) * r2 - static_cast<__int128>(d2.x) * r1;
                        if (det < 0) {
                            det = -det;
                            nx = -nx;
                            ny = -ny;
                        }
                        bool ok = true, tie = false;
                        for (int i = 0; i < 3 && ok; ++i) {
                            auto val = [&](std::size_t k) {
                                return nx * a[i].points[k].x + ny * a[i].points[k].y + det * w.w[i][k];
                            };
                            __int128 base = val((*F[i])[0]);
                            for (std::size_t k = 0; k < a[i].size(); ++k) {
                                if (std::find(F[i]->begin(), F[i]->end(), k) != F[i]->end()) continue;
                                __int128 v = val(k);
                                if (v == base) tie = true;
                                if (v < base) {
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        if (!ok) continue;
                        if (tie) throw NonGenericLifting();
                        SubdivisionCell c;
                        std::vector<LatticePoint> pts{{0, 0}};
                        for (int i = 0; i < 3; ++i) {
                            c.faces[i] = *F[i];
                            std::vector<LatticePoint> fp;
                            for (auto k : *F[i]) fp.push_back(a[i].points[k]);
                            pts = minkowski_points(pts, fp);
                        }
                        c.vertices = convex_hull(pts);
                        c.volume = hull_area2(c.vertices);
                        int edges = 0, point = -1;
                        for (int i = 0; i < 3; ++i) {
                            if (ext[i] == 1) ++edges;
                            if (ext[i] == 0) point = i;
                        }
                        c.mixed = edges == 2;
                        c.vertex_summand = c.mixed ? point : -1;
                        covered += c.volume;
                        cells.push_back(std::move(c));
                    }
        }
    if (covered != total) throw NonGenericLifting();
    return cells;
}

// Versioned text dump, one cell per line.
inline std::string dump_cells(const Triple& a, const std::vector<SubdivisionCell>& cells) {
    std::ostringstream os;
    os << "toric-disc-cells/1 " << cells.size() << "\n";
    for (const auto& c : cells) {
        os << "cell vertices=";
        for (std::size_t k = 0; k < c.vertices.size(); ++k)
            os << (k ? ";" : "") << c.vertices[k].x << "," << c.vertices[k].y;
        os << " type=" << (c.mixed ? "mixed" : "non-mixed") << " faces=";
        for (int i = 0; i < 3; ++i) {
            os << (i ? "|" : "");
            for (std::size_t k = 0; k < c.faces[i].size(); ++k) {
                const auto& p = a[i].points[c.faces[i][k]];
                os << (k ? ";" : "") << p.x << "," << p.y;
            }
        }
        os << " volume=" << c.volume << "\n";
    }
    return os.str();
}

inline constexpr std::int64_t kDeltaDenX = 1009;
inline constexpr std::int64_t kDeltaDenY = 1013;

// Strictly inside a counterclockwise polygon after shifting p by -delta.
inline bool shifted_inside(const std::vector<LatticePoint>& poly, const LatticePoint& p) {
    if (poly.size() < 3) return false;
    const __int128 D = kDeltaDenX * kDeltaDenY;
    __int128 qx = static_cast<__int128>(p.x) * D - kDeltaDenY, qy = static_cast<__int128>(p.y) * D - kDeltaDenX;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& s = poly[i];
        const auto& t = poly[(i + 1) % poly.size()];
        __int128 c = static_cast<__int128>(t.x - s.x) * (qy - s.y * D) - static_cast<__int128>(t.y - s.y) * (qx - s.x * D);
        if (c <= 0) return false;
    }
    return true;
}

struct CEStructure {
    Triple supports;
    std::vector<SubdivisionCell> cells;
    std::vector<LatticePoint> points;
    std::vector<int> row_poly;
    std::vector<LatticePoint> row_shift;
    // (column, index into the row polynomial's support)
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> entries;

    std::size_t size() const { return points.size(); }
    std::array<std::size_t, 3> rows_per_poly() const {
        std::array<std::size_t, 3> c{0, 0, 0};
        for (int i : row_poly) ++c[i];
        return c;
    }
};

inline CEStructure canny_emiris_structure(const Triple& a, const Lifting3& w) {
    CEStructure ce;
    ce.supports = a;
    ce.cells = mixed_subdivision(a, w);
    std::vector<LatticePoint> sum = minkowski_points(minkowski_points(a[0].points, a[1].points), a[2].points);
    auto hull = convex_hull(sum);
    if (hull.size() < 3) throw ResultantError("supports do not span the plane");
    std::int64_t x0 = hull[0].x, x1 = x0, y0 = hull[0].y, y1 = y0;
    for (const auto& p : hull) {
        x0 = std::min(x0, p.x); x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y); y1 = std::max(y1, p.y);
    }
    for (std::int64_t x = x0; x <= x1 + 1; ++x)
        for (std::int64_t y = y0; y <= y1 + 1; ++y)
            if (shifted_inside(hull, {x, y})) ce.points.push_back({x, y});
    std::map<LatticePoint, std::size_t> col;
    for (std::size_t k = 0; k < ce.points.size(); ++k) col[ce.points[k]] = k;
    for (const auto& p : ce.points) {
        const SubdivisionCell* found = nullptr;
        for (const auto& c : ce.cells)
            if (shifted_inside(c.vertices, p)) {
                if (found) throw NonGenericLifting();
                found = &c;
            }
        if (!found) throw NonGenericLifting();
        int i = -1;
        for (int k = 2; k >= 0; --k)
            if (found->faces[k].size() == 1) {
                i = k;
                break;
            }
        LatticePoint shift = p - a[i].points[found->faces[i][0]];
        ce.row_poly.push_back(i);
        ce.row_shift.push_back(shift);
        std::vector<std::pair<std::size_t, std::size_t>> row;
        for (std::size_t k = 0; k < a[i].size(); ++k) {
            auto it = col.find(shift + a[i].points[k]);
            if (it == col.end()) throw ResultantError("row support leaves the matrix index set");
            row.push_back({it->second, k});
        }
        ce.entries.push_back(std::move(row));
    }
    return ce;
}

inline Triple supports_of(const LaurentPoly& f1, const LaurentPoly& f2, const LaurentPoly& f3) {
    return {f1.support(), f2.support(), f3.support()};
}

inline PolyMatrix canny_emiris_matrix(const std::array<const LaurentPoly*, 3>& f, const CEStructure& ce) {
    const std::size_t n = ce.size();
    PolyMatrix m(n, std::vector<CoeffPoly>(n));
    for (std::size_t r = 0; r < n; ++r) {
        const LaurentPoly& fi = *f[ce.row_poly[r]];
        for (auto [c, k] : ce.entries[r]) m[r][c] = fi.coeff(fi.support().points[k]);
    }
    return m;
}

struct ResultantOptions {
    std::uint64_t seed = 1;
    int min_liftings = 2;
    int max_liftings = 12;
};

struct ResultantOutput {
    CoeffPoly value;
    std::string method;
    // input position (1..3) -> (observed, predicted) degree in that polynomial's generic coefficients
    std::map<int, std::pair<std::int64_t, std::int64_t>> degree_audit;
    std::vector<std::uint64_t> liftings_used;
    bool verified = true;
};

namespace detail {

// Generic stand-ins for non-symbolic inputs, with the substitution that recovers the inputs.
struct GenericFamily {
    std::array<LaurentPoly, 3> generic;
    std::array<int, 3> labels{};
    std::map<std::uint32_t, CoeffPoly> substitution;
    bool needs_substitution = false;
};

inline GenericFamily make_generic(const std::array<const LaurentPoly*, 3>& f) {
    GenericFamily g;
    std::set<int> used;
    for (int i = 0; i < 3; ++i) used.insert(f[i]->label());
    for (int i = 0; i < 3; ++i)
        for (auto v : f[i]->terms())
            for (auto key : v.second.variables()) used.insert(label_of_key(key));
    int fresh = used.empty() ? 1 : std::max(1, *used.rbegin() + 1);
    std::set<int> taken;
    for (int i = 0; i < 3; ++i) {
        bool symbolic = f[i]->is_symbolic() && !taken.count(f[i]->label());
        int label = symbolic ? f[i]->label() : fresh++;
        taken.insert(label);
        g.labels[i] = label;
        SupportConfig s(label, f[i]->support().points);
        g.generic[i] = LaurentPoly::symbolic(s);
        if (!symbolic) {
            g.needs_substitution = true;
            for (const auto& p : s.points) g.substitution[symbol_key({label, p.x, p.y})] = f[i]->coeff(p);
        }
    }
    return g;
}

}  // namespace detail

inline std::array<std::int64_t, 3> predicted_resultant_degrees(const Triple& a) {
    return {mixed_volume(a[1], a[2]), mixed_volume(a[0], a[2]), mixed_volume(a[0], a[1])};
}

inline ResultantOutput sparse_resultant(const LaurentPoly& f1, const LaurentPoly& f2, const LaurentPoly& f3,
                                        const ResultantOptions& opt = {}) {
    std::array<const LaurentPoly*, 3> f{&f1, &f2, &f3};
    Triple a = supports_of(f1, f2, f3);
    ResultantOutput out;
    std::vector<SupportConfig> fam(a.begin(), a.end());
    auto ess = essential_subfamilies(fam);
    if (ess.size() != 1) {
        out.value = CoeffPoly(1);
        out.method = "trivial";
        return out;
    }
    auto pred = predicted_resultant_degrees(a);
    std::uint32_t mask = ess[0];
    int count = std::popcount(mask);
    if (count == 1) {
        int i = std::countr_zero(mask);
        int j = (i + 1) % 3, k = (i + 2) % 3;
        CoeffPoly c = f[i]->coeff(a[i].points[0]);
        out.value = c.pow(static_cast<unsigned>(mixed_volume(a[j], a[k]))).sign_normalized();
        out.method = "monomial_rule";
        return out;
    }
    if (count == 2) {
        int k = std::countr_zero(~mask & 7u);
        int i = std::countr_zero(mask), j = 31 - std::countl_zero(mask);
        auto u = common_direction(*f[i], *f[j]);
        LatticePoint eta{-u->y, u->x};
        std::int64_t lo = dot(eta, a[k].points[0]), hi = lo;
        for (const auto& p : a[k].points) {
            lo = std::min(lo, dot(eta, p));
            hi = std::max(hi, dot(eta, p));
        }
        out.value = edge_resultant(*f[i], *f[j], u).pow(static_cast<unsigned>(hi - lo)).sign_normalized();
        out.method = "sylvester";
        return out;
    }
    auto gen = detail::make_generic(f);
    std::array<const LaurentPoly*, 3> gf{&gen.generic[0], &gen.generic[1], &gen.generic[2]};
    CoeffPoly g;
    int used = 0;
    for (std::uint64_t s = opt.seed; used < opt.max_liftings && s < opt.seed + 64ull * opt.max_liftings; ++s) {
        // rotate the row priority between liftings
        const int r = used % 3;
        Triple ar{a[r], a[(r + 1) % 3], a[(r + 2) % 3]};
        std::array<const LaurentPoly*, 3> gr{gf[r], gf[(r + 1) % 3], gf[(r + 2) % 3]};
        Lifting3 w = Lifting3::random(ar, s);
        CEStructure ce;
        try {
            ce = canny_emiris_structure(ar, w);
        } catch (const NonGenericLifting&) {
            continue;
        }
        CoeffPoly d = ff_determinant(canny_emiris_matrix(gr, ce));
        if (d.is_zero()) continue;
        ++used;
        out.liftings_used.push_back(s);
        g = g.is_zero() ? d.primitive_part().sign_normalized() : mv_gcd(g, d, s);
        if (used < opt.min_liftings) continue;
        auto md = g.group_multidegree();
        bool ok = true;
        for (int i = 0; i < 3; ++i) ok = ok && static_cast<std::int64_t>(md[gen.labels[i]]) == pred[i];
        if (ok) break;
    }
    if (g.is_zero()) throw ResultantError("resultant extraction failed");
    auto md = g.group_multidegree();
    for (int i = 0; i < 3; ++i) {
        out.degree_audit[i + 1] = {static_cast<std::int64_t>(md[gen.labels[i]]), pred[i]};
        if (out.degree_audit[i + 1].first != pred[i]) out.verified = false;
    }
    if (!out.verified) throw ResultantError("resultant extraction failed");
    out.method = "canny_emiris";
    out.value = gen.needs_substitution ? g.substitute(gen.substitution).sign_normalized() : g;
    return out;
}

// Classical Macaulay quotient for dense supports d_i * sigma at critical degree sum(d_i) - 2.
inline CoeffPoly macaulay_dense_oracle(const LaurentPoly& f1, const LaurentPoly& f2, const LaurentPoly& f3) {
    std::array<const LaurentPoly*, 3> f{&f1, &f2, &f3};
    std::array<std::int64_t, 3> d{};
    for (int i = 0; i < 3; ++i) {
        std::int64_t di = 0;
        for (const auto& p : f[i]->support().points) di = std::max(di, p.x + p.y);
        d[i] = di;
        std::size_t expected = static_cast<std::size_t>((di + 1) * (di + 2) / 2);
        bool dense = f[i]->support().size() == expected;
        for (const auto& p : f[i]->support().points) dense = dense && p.x >= 0 && p.y >= 0;
        if (!dense || di < 1) throw ResultantError("macaulay oracle needs dense dilated-simplex supports");
    }
    const std::int64_t D = d[0] + d[1] + d[2] - 2;
    // Exponents (a0, a1, a2) of x0 x1 x2 with polynomial i matched to variable i.
    std::vector<std::array<std::int64_t, 3>> mons;
    for (std::int64_t a1 = 0; a1 <= D; ++a1)
        for (std::int64_t a2 = 0; a1 + a2 <= D; ++a2) mons.push_back({D - a1 - a2, a1, a2});
    std::map<std::array<std::int64_t, 3>, std::size_t> col;
    for (std::size_t k = 0; k < mons.size(); ++k) col[mons[k]] = k;
    const std::size_t n = mons.size();
    PolyMatrix m(n, std::vector<CoeffPoly>(n));
    std::vector<std::size_t> nonreduced;
    for (std::size_t r = 0; r < n; ++r) {
        const auto& al = mons[r];
        int i = -1, hits = 0;
        for (int k = 0; k < 3; ++k)
            if (al[k] >= d[k]) {
                if (i < 0) i = k;
                ++hits;
            }
        if (hits > 1) nonreduced.push_back(r);
        auto base = al;
        base[i] -= d[i];
        for (const auto& [p, c] : f[i]->terms()) {
            std::array<std::int64_t, 3> e{base[0] + d[i] - p.x - p.y, base[1] + p.x, base[2] + p.y};
            m[r][col.at(e)] = c;
        }
    }
    CoeffPoly num = ff_determinant(m);
    PolyMatrix sub(nonreduced.size(), std::vector<CoeffPoly>(nonreduced.size()));
    for (std::size_t r = 0; r < nonreduced.size(); ++r)
        for (std::size_t c = 0; c < nonreduced.size(); ++c) sub[r][c] = m[nonreduced[r]][nonreduced[c]];
    CoeffPoly den = ff_determinant(sub);
    if (den.is_zero()) throw ResultantError("macaulay denominator vanishes");
    auto q = num.try_divide(den);
    if (!q) throw ResultantError("macaulay quotient is not exact");
    return q->sign_normalized();
}

// Evaluates eps * Res(P) modulo a prime for coefficient vectors P on fixed supports, where eps is a sign
// fixed by the construction. Uses a monomial curve t -> P * t^omega, the gcd over several Canny-Emiris
// determinants in Z_p[t], and the initial monomials of the resultant for omega and -omega.
class PointResultant {
public:
    using Point = std::array<std::vector<std::uint64_t>, 3>;

    PointResultant(const Triple& a, std::uint64_t seed, std::uint64_t prime = kPrime61) : a_(a), F_(prime), seed_(seed) {
        std::vector<SupportConfig> fam(a.begin(), a.end());
        auto ess = essential_subfamilies(fam);
        if (ess.size() != 1 || ess[0] != 7u) throw ResultantError("point evaluation needs an essential triple");
        pred_ = predicted_resultant_degrees(a);
        std::mt19937_64 rng(seed);
        for (int bits = 3; bits <= 12 && !curve_; ++bits)
            for (int attempt = 0; attempt < 200 && !curve_; ++attempt) {
                Lifting3 w = Lifting3::random(a, rng(), bits);
                try {
                    auto lo = initial_exponents(mixed_subdivision(a, w));
                    auto hi = initial_exponents(mixed_subdivision(a, w.negated()));
                    curve_ = w;
                    lo_ = lo;
                    hi_ = hi;
                } catch (const NonGenericLifting&) {
                }
            }
        if (!curve_) throw ResultantError("no generic curve lifting found");
        std::int64_t wl = 0, wh = 0;
        for (int i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < a[i].size(); ++k) {
                wl += curve_->w[i][k] * lo_[i][k];
                wh += curve_->w[i][k] * hi_[i][k];
            }
        span_ = wh - wl;
    }

    const PrimeField& field() const { return F_; }

    // Throws ResultantError when the point is degenerate for this construction.
    std::uint64_t operator()(const Point& p) const {
        std::uint64_t init = monomial_value(p, lo_), top = monomial_value(p, hi_);
        if (!init || !top) throw ResultantError("degenerate point for curve normalization");
        UPoly g;
        for (std::size_t j = 0; j < kMaxMatrices; ++j) {
            UPoly d = curve_determinant(p, matrix(j));
            if (d.empty()) continue;
            g = g.empty() ? umonic(d, F_) : ugcd(g, d, F_);
            std::size_t low = 0;
            while (low < g.size() && g[low] == 0) ++low;
            UPoly s(g.begin() + static_cast<long>(low), g.end());
            if (j + 1 < kMinMatrices) continue;
            if (udeg(s) < span_) throw ResultantError("degenerate point: curve image lost degree");
            if (udeg(s) == span_) {
                std::uint64_t scale = F_.mul(init, F_.inv(s[0]));
                for (auto& c : s) c = F_.mul(c, scale);
                if (s.back() != top && s.back() != F_.neg(top)) throw ResultantError("top initial form audit failed");
                return ueval(s, 1, F_);
            }
        }
        throw ResultantError("resultant extraction failed at point");
    }

    // Handles points with vanishing coefficients by interpolating along a random line that moves only
    // the polynomials carrying a zero.
    std::uint64_t evaluate(const Point& p, std::uint64_t salt = 0) const {
        std::array<bool, 3> zero{};
        for (int i = 0; i < 3; ++i)
            for (auto x : p[i]) zero[i] = zero[i] || x == 0;
        if (!zero[0] && !zero[1] && !zero[2]) {
            try {
                return (*this)(p);
            } catch (const ResultantError&) {
                zero = {true, true, true};
            }
        }
        std::mt19937_64 rng(seed_ ^ (salt * 0x9e3779b97f4a7c15ull) ^ 0xabcdef);
        auto rnd = [&] { return 1 + rng() % (F_.prime() - 1); };
        Point dir;
        std::int64_t deg = 0;
        for (int i = 0; i < 3; ++i) {
            for (std::size_t k = 0; k < p[i].size(); ++k) dir[i].push_back(zero[i] ? rnd() : 0);
            if (zero[i]) deg += pred_[i];
        }
        std::vector<std::uint64_t> xs, ys;
        for (int guard = 0; static_cast<std::int64_t>(xs.size()) <= deg && guard < 4 * (deg + 8); ++guard) {
            std::uint64_t lam = rnd();
            Point q = p;
            for (int i = 0; i < 3; ++i)
                for (std::size_t k = 0; k < q[i].size(); ++k) q[i][k] = F_.add(q[i][k], F_.mul(lam, dir[i][k]));
            try {
                ys.push_back((*this)(q));
                xs.push_back(lam);
            } catch (const ResultantError&) {
            }
        }
        if (static_cast<std::int64_t>(xs.size()) <= deg) throw ResultantError("interpolation along line failed");
        UPoly line = uinterpolate(xs, ys, F_);
        return line.empty() ? 0 : line[0];
    }

private:
    static constexpr std::size_t kMinMatrices = 3;
    static constexpr std::size_t kMaxMatrices = 14;

    std::array<std::vector<std::int64_t>, 3> initial_exponents(const std::vector<SubdivisionCell>& cells) const {
        std::array<std::vector<std::int64_t>, 3> e;
        for (int i = 0; i < 3; ++i) e[i].assign(a_[i].size(), 0);
        for (const auto& c : cells)
            if (c.mixed) e[c.vertex_summand][c.faces[c.vertex_summand][0]] += c.volume / 2;
        return e;
    }

    std::uint64_t monomial_value(const Point& p, const std::array<std::vector<std::int64_t>, 3>& e) const {
        std::uint64_t v = 1;
        for (int i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < e[i].size(); ++k)
                if (e[i][k]) v = F_.mul(v, F_.pow(p[i][k], static_cast<std::uint64_t>(e[i][k])));
        return v;
    }

    const CEStructure& matrix(std::size_t j) const {
        while (pool_.size() <= j) {
            std::uint64_t s = seed_ * 1000003ull + 17 + pool_seed_++;
            try {
                pool_.push_back(canny_emiris_structure(a_, Lifting3::random(a_, s)));
            } catch (const NonGenericLifting&) {
            }
        }
        return pool_[j];
    }

    UPoly curve_determinant(const Point& p, const CEStructure& ce) const {
        const std::size_t n = ce.size();
        std::int64_t bound = 0;
        for (std::size_t r = 0; r < n; ++r) {
            std::int64_t mx = 0;
            for (auto [c, k] : ce.entries[r]) mx = std::max(mx, curve_->w[ce.row_poly[r]][k]);
            bound += mx;
        }
        std::vector<std::uint64_t> xs, ys;
        std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n));
        for (std::int64_t s = 0; s <= bound; ++s) {
            std::uint64_t t = static_cast<std::uint64_t>(s + 2);
            for (auto& row : m) std::fill(row.begin(), row.end(), 0);
            for (std::size_t r = 0; r < n; ++r) {
                int i = ce.row_poly[r];
                for (auto [c, k] : ce.entries[r])
                    m[r][c] = F_.mul(p[i][k], F_.pow(t, static_cast<std::uint64_t>(curve_->w[i][k])));
            }
            xs.push_back(t);
            ys.push_back(det_mod(m, F_));
        }
        return uinterpolate(xs, ys, F_);
    }

    Triple a_;
    PrimeField F_;
    std::uint64_t seed_;
    std::array<std::int64_t, 3> pred_{};
    std::optional<Lifting3> curve_;
    std::array<std::vector<std::int64_t>, 3> lo_, hi_;
    std::int64_t span_ = 0;
    mutable std::vector<CEStructure> pool_;
    mutable std::uint64_t pool_seed_ = 0;
};

}  // namespace toricdisc
