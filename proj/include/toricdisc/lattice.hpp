#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricdisc {

struct LatticePoint {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
    LatticePoint operator+(const LatticePoint& o) const { return {x + o.x, y + o.y}; }
    LatticePoint operator-(const LatticePoint& o) const { return {x - o.x, y - o.y}; }
};

inline std::int64_t dot(const LatticePoint& a, const LatticePoint& b) { return a.x * b.x + a.y * b.y; }
inline std::int64_t cross(const LatticePoint& a, const LatticePoint& b) { return a.x * b.y - a.y * b.x; }
inline std::int64_t cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return cross(a - o, b - o);
}

inline std::int64_t igcd(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SupportConfig {
    int label = 1;
    std::vector<LatticePoint> points;

    SupportConfig() = default;
    SupportConfig(int lbl, std::vector<LatticePoint> pts) : label(lbl), points(std::move(pts)) { validate(); }

    void validate() const {
        if (points.empty()) throw GeometryError("support is empty");
        auto s = points;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw GeometryError("duplicate support point");
    }
    std::size_t size() const { return points.size(); }
    std::optional<std::size_t> index_of(const LatticePoint& p) const {
        auto it = std::find(points.begin(), points.end(), p);
        if (it == points.end()) return std::nullopt;
        return static_cast<std::size_t>(it - points.begin());
    }
    bool operator==(const SupportConfig&) const = default;
};

// Counterclockwise hull starting at the lexicographically smallest point.
inline std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
    if (pts.empty()) throw GeometryError("convex_hull of empty set");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<LatticePoint> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

inline std::int64_t hull_area2(const std::vector<LatticePoint>& h) {
    if (h.size() < 3) return 0;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < h.size(); ++i) s += cross(h[i], h[(i + 1) % h.size()]);
    return s < 0 ? -s : s;
}

inline std::int64_t normalized_volume(const std::vector<LatticePoint>& pts) { return hull_area2(convex_hull(pts)); }
inline std::int64_t normalized_volume(const SupportConfig& a) { return normalized_volume(a.points); }

inline int affine_dimension(const std::vector<LatticePoint>& pts) {
    auto h = convex_hull(pts);
    if (h.size() == 1) return 0;
    if (h.size() == 2) return 1;
    return 2;
}

inline std::vector<LatticePoint> minkowski_points(const std::vector<LatticePoint>& a, const std::vector<LatticePoint>& b) {
    std::vector<LatticePoint> out;
    out.reserve(a.size() * b.size());
    for (const auto& p : a)
        for (const auto& q : b) out.push_back(p + q);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline SupportConfig minkowski_sum(const SupportConfig& a, const SupportConfig& b, int label = 0) {
    return SupportConfig(label ? label : a.label, minkowski_points(a.points, b.points));
}

inline std::int64_t mixed_volume(const std::vector<LatticePoint>& a, const std::vector<LatticePoint>& b) {
    std::int64_t twice = normalized_volume(minkowski_points(a, b)) - normalized_volume(a) - normalized_volume(b);
    return twice / 2;
}
inline std::int64_t mixed_volume(const SupportConfig& a, const SupportConfig& b) { return mixed_volume(a.points, b.points); }

// Number of lattice points on the closed segment minus one.
inline std::int64_t lattice_length(const LatticePoint& a, const LatticePoint& b) { return igcd(b.x - a.x, b.y - a.y); }

// Lattice points on the boundary of conv(pts).
inline std::int64_t boundary_points(const std::vector<LatticePoint>& pts) {
    auto h = convex_hull(pts);
    if (h.size() == 1) return 1;
    if (h.size() == 2) return lattice_length(h[0], h[1]) + 1;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < h.size(); ++i) s += lattice_length(h[i], h[(i + 1) % h.size()]);
    return s;
}

inline bool in_hull(const std::vector<LatticePoint>& hull, const LatticePoint& p) {
    if (hull.size() == 1) return hull[0] == p;
    if (hull.size() == 2) {
        if (cross(hull[0], hull[1], p) != 0) return false;
        return dot(p - hull[0], hull[1] - hull[0]) >= 0 && dot(p - hull[1], hull[0] - hull[1]) >= 0;
    }
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (cross(hull[i], hull[(i + 1) % hull.size()], p) < 0) return false;
    return true;
}

inline std::vector<LatticePoint> lattice_points_of_hull(const std::vector<LatticePoint>& pts) {
    auto h = convex_hull(pts);
    std::int64_t x0 = h[0].x, x1 = h[0].x, y0 = h[0].y, y1 = h[0].y;
    for (const auto& p : h) {
        x0 = std::min(x0, p.x); x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y); y1 = std::max(y1, p.y);
    }
    std::vector<LatticePoint> out;
    for (std::int64_t x = x0; x <= x1; ++x)
        for (std::int64_t y = y0; y <= y1; ++y)
            if (in_hull(h, {x, y})) out.push_back({x, y});
    return out;
}

inline bool is_full(const SupportConfig& a) {
    return lattice_points_of_hull(a.points).size() == a.points.size();
}

// Smith invariants of an integer matrix given as rows.
inline std::vector<std::int64_t> smith_invariants(std::vector<std::vector<std::int64_t>> m) {
    std::vector<std::int64_t> diag;
    if (m.empty()) return diag;
    const std::size_t rows = m.size(), cols = m[0].size();
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (auto& row : m) std::swap(row[a], row[b]);
    };
    for (std::size_t t = 0; t < rows && t < cols; ++t) {
        for (;;) {
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (m[i][j] != 0 && (pr == rows || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == rows) return diag;
            std::swap(m[t], m[pr]);
            swap_cols(t, pc);
            bool done = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                std::int64_t q = m[i][t] / m[t][t];
                for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) done = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                std::int64_t q = m[t][j] / m[t][t];
                for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) done = false;
            }
            if (!done) continue;
            for (std::size_t i = t + 1; i < rows && done; ++i)
                for (std::size_t j = t + 1; j < cols && done; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
                        done = false;
                    }
            if (done) break;
        }
        diag.push_back(std::llabs(m[t][t]));
    }
    return diag;
}

inline std::vector<std::vector<std::int64_t>> difference_rows(const std::vector<LatticePoint>& pts) {
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t k = 1; k < pts.size(); ++k) rows.push_back({pts[k].x - pts[0].x, pts[k].y - pts[0].y});
    return rows;
}

inline int lattice_rank(const std::vector<const SupportConfig*>& family) {
    std::vector<std::vector<std::int64_t>> rows;
    for (auto* c : family)
        for (auto& r : difference_rows(c->points)) rows.push_back(r);
    return static_cast<int>(smith_invariants(rows).size());
}

inline std::int64_t lattice_index(const std::vector<SupportConfig>& configs) {
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& c : configs)
        for (auto& r : difference_rows(c.points)) rows.push_back(r);
    auto d = smith_invariants(rows);
    if (d.size() < 2) throw GeometryError("defective lattice span");
    return d[0] * d[1];
}

struct EdgeProfile {
    LatticePoint eta;
    std::int64_t nu1 = 0, nu2 = 0;
    std::vector<std::size_t> face1, face2;
    std::int64_t len1 = 0, len2 = 0;
    std::int64_t mu1 = 0, mu2 = 0, mu = 0;
    bool in_sigma_prime = false;

    const std::vector<std::size_t>& face(int which) const { return which == 1 ? face1 : face2; }
    std::int64_t len(int which) const { return which == 1 ? len1 : len2; }
    std::int64_t nu(int which) const { return which == 1 ? nu1 : nu2; }
};

// Sort key for directions: angle in [0, 2pi) measured from (1,0).
inline bool angle_less(const LatticePoint& a, const LatticePoint& b) {
    auto half = [](const LatticePoint& p) { return (p.y < 0 || (p.y == 0 && p.x < 0)) ? 1 : 0; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
}

struct FaceData {
    std::int64_t nu = 0;
    std::int64_t mu = 0;
    std::vector<std::size_t> face;
    std::int64_t len = 0;
};

inline FaceData face_data(const SupportConfig& a, const LatticePoint& eta) {
    FaceData fd;
    std::vector<std::int64_t> vals;
    for (const auto& p : a.points) vals.push_back(dot(eta, p));
    auto sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    fd.nu = sorted[0];
    if (sorted.size() < 2) throw GeometryError("configuration not 2-dimensional");
    fd.mu = sorted[1] - sorted[0];
    for (std::size_t k = 0; k < vals.size(); ++k)
        if (vals[k] == fd.nu) fd.face.push_back(k);
    if (fd.face.size() >= 2) {
        std::vector<LatticePoint> fp;
        for (auto k : fd.face) fp.push_back(a.points[k]);
        auto h = convex_hull(fp);
        fd.len = lattice_length(h.front(), h.back());
    }
    return fd;
}

// Primitive inner normals of the edges of conv(pts), sorted by angle.
inline std::vector<LatticePoint> inner_edge_normals(const std::vector<LatticePoint>& pts) {
    auto h = convex_hull(pts);
    if (h.size() < 3) throw GeometryError("configuration not 2-dimensional");
    std::vector<LatticePoint> out;
    for (std::size_t i = 0; i < h.size(); ++i) {
        LatticePoint e = h[(i + 1) % h.size()] - h[i];
        std::int64_t g = igcd(e.x, e.y);
        out.push_back({-e.y / g, e.x / g});
    }
    std::sort(out.begin(), out.end(), angle_less);
    return out;
}

inline std::vector<EdgeProfile> edge_profiles(const SupportConfig& a1, const SupportConfig& a2) {
    if (affine_dimension(a1.points) < 2 || affine_dimension(a2.points) < 2)
        throw GeometryError("configuration not 2-dimensional");
    std::vector<EdgeProfile> out;
    for (const auto& eta : inner_edge_normals(minkowski_points(a1.points, a2.points))) {
        EdgeProfile pr;
        pr.eta = eta;
        auto f1 = face_data(a1, eta), f2 = face_data(a2, eta);
        pr.nu1 = f1.nu;
        pr.nu2 = f2.nu;
        pr.face1 = f1.face;
        pr.face2 = f2.face;
        pr.len1 = f1.len;
        pr.len2 = f2.len;
        pr.mu1 = f1.mu;
        pr.mu2 = f2.mu;
        pr.mu = std::min(f1.mu, f2.mu);
        pr.in_sigma_prime = pr.len1 >= 1 && pr.len2 >= 1;
        out.push_back(std::move(pr));
    }
    return out;
}

inline bool is_hull_vertex(const std::vector<LatticePoint>& pts, const LatticePoint& v) {
    auto h = convex_hull(pts);
    return std::find(h.begin(), h.end(), v) != h.end();
}

// MV(Q1,Q2) - MV(conv(A_i minus v), Q_j) for a vertex v of conv(A_i).
inline std::int64_t mixed_multiplicity(const LatticePoint& v, const SupportConfig& a1, const SupportConfig& a2, int i) {
    const SupportConfig& ai = i == 1 ? a1 : a2;
    const SupportConfig& aj = i == 1 ? a2 : a1;
    if (!ai.index_of(v) || !is_hull_vertex(ai.points, v)) throw GeometryError("point is not a vertex of the support hull");
    std::vector<LatticePoint> rest;
    for (const auto& p : ai.points)
        if (p != v) rest.push_back(p);
    std::int64_t reduced = rest.empty() ? 0 : mixed_volume(rest, aj.points);
    return mixed_volume(a1, a2) - reduced;
}

inline bool is_essential(const std::vector<SupportConfig>& family) {
    const std::size_t n = family.size();
    if (n == 0 || n > 20) return false;
    std::vector<const SupportConfig*> all;
    for (auto& c : family) all.push_back(&c);
    if (lattice_rank(all) != static_cast<int>(n) - 1) return false;
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<const SupportConfig*> sub;
        for (std::size_t k = 0; k < n; ++k)
            if (mask >> k & 1) sub.push_back(&family[k]);
        if (lattice_rank(sub) < static_cast<int>(sub.size())) return false;
    }
    return true;
}

// Index sets (bitmasks over the family) of all essential subfamilies.
inline std::vector<std::uint32_t> essential_subfamilies(const std::vector<SupportConfig>& family) {
    std::vector<std::uint32_t> out;
    const std::size_t n = family.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<SupportConfig> sub;
        for (std::size_t k = 0; k < n; ++k)
            if (mask >> k & 1) sub.push_back(family[k]);
        if (is_essential(sub)) out.push_back(mask);
    }
    return out;
}

struct CayleyData {
    std::vector<std::vector<std::int64_t>> matrix;
    std::int64_t index = 0;  // 0 when the difference lattice is rank deficient
    std::vector<std::pair<int, LatticePoint>> phi_support;  // (i, alpha) for the terms y_i x^alpha
};

inline CayleyData cayley_matrix(const std::vector<SupportConfig>& configs) {
    CayleyData cd;
    const std::size_t n = configs.size();
    const std::size_t dim = n == 1 ? 1 : 2;
    std::size_t m = 0;
    for (auto& c : configs) m += c.size();
    cd.matrix.assign(n + dim, std::vector<std::int64_t>(m, 0));
    std::vector<std::vector<std::int64_t>> cols;
    std::size_t col = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& p : configs[i].points) {
            cd.matrix[i][col] = 1;
            cd.matrix[n][col] = p.x;
            if (dim == 2) cd.matrix[n + 1][col] = p.y;
            std::vector<std::int64_t> v(n + dim, 0);
            v[i] = 1;
            v[n] = p.x;
            if (dim == 2) v[n + 1] = p.y;
            cols.push_back(v);
            cd.phi_support.push_back({static_cast<int>(i) + 1, p});
            ++col;
        }
    }
    // Differences live in {sum of the first n coordinates = 0}; drop the n-th coordinate.
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t k = 1; k < cols.size(); ++k) {
        std::vector<std::int64_t> d;
        for (std::size_t r = 0; r < n + dim; ++r)
            if (r != n - 1) d.push_back(cols[k][r] - cols[0][r]);
        rows.push_back(d);
    }
    auto inv = smith_invariants(rows);
    if (inv.size() == n - 1 + dim) {
        cd.index = 1;
        for (auto d : inv) cd.index *= d;
    }
    return cd;
}

}  // namespace toricdisc
