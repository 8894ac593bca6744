#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coeff.hpp"
#include "lattice.hpp"
#include "modp.hpp"
#include "resultant.hpp"

namespace toricdisc {

class DiscriminantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Bidegree = std::pair<std::int64_t, std::int64_t>;

inline void require_planar(const SupportConfig& a) {
    if (affine_dimension(a.points) < 2) throw DiscriminantError("configuration not 2-dimensional");
}

inline LatticePoint edge_direction(const LatticePoint& eta) { return {-eta.y, eta.x}; }

// Subsum of f on the face of its support minimizing <eta, .>.
inline LaurentPoly face_polynomial(const LaurentPoly& f, const LatticePoint& eta) {
    FaceData fd = face_data(f.support(), eta);
    std::vector<LatticePoint> pts;
    for (auto k : fd.face) pts.push_back(f.support().points[k]);
    LaurentPoly r(SupportConfig(f.label(), pts));
    for (const auto& p : pts) r.set(p, f.coeff(p));
    return r;
}

struct BoundaryEntry {
    EdgeProfile profile;
    CoeffPoly value;
    std::int64_t exponent = 0;
};

struct BoundaryFactor {
    std::vector<BoundaryEntry> entries;
    CoeffPoly product = CoeffPoly(1);
};

inline BoundaryFactor boundary_factor(const LaurentPoly& f1, const LaurentPoly& f2) {
    require_planar(f1.support());
    require_planar(f2.support());
    BoundaryFactor bf;
    for (const auto& pr : edge_profiles(f1.support(), f2.support())) {
        BoundaryEntry e;
        e.profile = pr;
        e.exponent = pr.mu;
        e.value = edge_resultant(facial_restriction(f1, pr, 1), facial_restriction(f2, pr, 2), edge_direction(pr.eta));
        bf.product = bf.product * e.value.pow(static_cast<unsigned>(e.exponent));
        bf.entries.push_back(std::move(e));
    }
    return bf;
}

enum class BidegreeMode { sparse, dense_fan };

inline Bidegree predicted_bidegree(const SupportConfig& a1, const SupportConfig& a2, BidegreeMode mode = BidegreeMode::sparse) {
    require_planar(a1);
    require_planar(a2);
    if (mode == BidegreeMode::dense_fan) {
        if (!is_full(a1) || !is_full(a2)) throw DiscriminantError("dense_fan mode needs full configurations");
        if (inner_edge_normals(a1.points) != inner_edge_normals(a2.points))
            throw DiscriminantError("dense_fan mode needs equal normal fans");
        std::int64_t total = normalized_volume(minkowski_points(a1.points, a2.points));
        return {total - normalized_volume(a1.points) - boundary_points(a2.points),
                total - normalized_volume(a2.points) - boundary_points(a1.points)};
    }
    const std::int64_t mv = mixed_volume(a1, a2);
    auto profiles = edge_profiles(a1, a2);
    auto delta = [&](int i) {
        const SupportConfig& ai = i == 1 ? a1 : a2;
        const SupportConfig& aj = i == 1 ? a2 : a1;
        std::int64_t d = normalized_volume(aj.points) + 2 * mv;
        for (const auto& pr : profiles)
            if (pr.in_sigma_prime) d -= pr.len(3 - i) * pr.mu;
        for (const auto& v : convex_hull(ai.points)) d -= mixed_multiplicity(v, a1, a2, i);
        return d;
    };
    return {delta(1), delta(2)};
}

struct DiscriminantOutput {
    CoeffPoly delta;
    std::int64_t index = 0;
    BoundaryFactor boundary;
    Bidegree achieved{0, 0};
    Bidegree predicted{0, 0};
    bool defective = false;
    ResultantOutput resultant;
};

inline int fresh_label(std::initializer_list<const LaurentPoly*> fs) {
    int m = 0;
    for (auto f : fs) {
        m = std::max(m, f->label());
        for (const auto& [p, c] : f->terms())
            for (auto k : c.variables()) m = std::max(m, label_of_key(k));
    }
    return m + 1;
}

inline std::int64_t pair_index(const SupportConfig& a1, const SupportConfig& a2) { return cayley_matrix({a1, a2}).index; }

// Generic discriminant cycle of two symbolic polynomials with distinct labels.
inline DiscriminantOutput mixed_discriminant(const LaurentPoly& f1, const LaurentPoly& f2, const ResultantOptions& opt = {}) {
    require_planar(f1.support());
    require_planar(f2.support());
    if (!f1.is_symbolic() || !f2.is_symbolic() || f1.label() == f2.label())
        throw DiscriminantError("mixed_discriminant needs symbolic inputs with distinct labels");
    DiscriminantOutput out;
    LaurentPoly jac = toric_jacobian(f1, f2, fresh_label({&f1, &f2}));
    out.resultant = sparse_resultant(f1, f2, jac, opt);
    out.boundary = boundary_factor(f1, f2);
    out.index = pair_index(f1.support(), f2.support());
    out.predicted = predicted_bidegree(f1.support(), f2.support());
    auto q = out.resultant.value.try_divide(out.boundary.product);
    if (!q) throw DiscriminantError("boundary factorization violated: resultant not divisible by E");
    if (q->is_constant()) {
        out.defective = true;
        out.delta = CoeffPoly(1);
        return out;
    }
    out.delta = q->sign_normalized();
    auto md = out.delta.group_multidegree();
    out.achieved = {md[f1.label()], md[f2.label()]};
    return out;
}

struct DenseIdentityReport {
    DiscriminantOutput disc;
    std::vector<CoeffPoly> facet_resultants;
    bool holds = false;
};

inline SupportConfig dilated_simplex(int label, std::int64_t d) {
    std::vector<LatticePoint> pts;
    for (std::int64_t x = 0; x <= d; ++x)
        for (std::int64_t y = 0; x + y <= d; ++y) pts.push_back({x, y});
    return SupportConfig(label, pts);
}

// Res(f1, f2, J) = Delta * product of the three facet resultants, for dense supports d1*simplex, d2*simplex.
inline DenseIdentityReport dense_identity_check(std::int64_t d1, std::int64_t d2, const ResultantOptions& opt = {}) {
    if (d1 < 1 || d2 < 1) throw DiscriminantError("dense identity needs positive degrees");
    LaurentPoly f1 = LaurentPoly::symbolic(dilated_simplex(1, d1)), f2 = LaurentPoly::symbolic(dilated_simplex(2, d2));
    DenseIdentityReport rep;
    rep.disc = mixed_discriminant(f1, f2, opt);
    CoeffPoly prod(1);
    for (const auto& pr : edge_profiles(f1.support(), f2.support())) {
        CoeffPoly r = edge_resultant(face_polynomial(f1, pr.eta), face_polynomial(f2, pr.eta), edge_direction(pr.eta));
        rep.facet_resultants.push_back(r);
        prod = prod * r;
    }
    CoeffPoly delta = rep.disc.defective ? CoeffPoly(1) : rep.disc.delta;
    CoeffPoly rhs = delta * prod;
    rep.holds = rep.disc.resultant.value.same_up_to_sign(rhs) ||
                (rep.disc.defective && rep.disc.resultant.value.try_divide(prod).has_value());
    return rep;
}

// Substitution taking the generic symbols of a support to the coefficients of f.
inline void add_specialization(std::map<std::uint32_t, CoeffPoly>& sub, const LaurentPoly& f, int label) {
    for (const auto& p : f.support().points) sub[symbol_key({label, p.x, p.y})] = f.coeff(p);
}

// Discriminant of arbitrary (numeric or polynomial-coefficient) inputs: generic cycle, then specialization.
inline DiscriminantOutput specialized_discriminant(const LaurentPoly& f1, const LaurentPoly& f2, const ResultantOptions& opt = {}) {
    if (f1.is_symbolic() && f2.is_symbolic() && f1.label() != f2.label()) return mixed_discriminant(f1, f2, opt);
    int l1 = fresh_label({&f1, &f2}), l2 = l1 + 1;
    LaurentPoly g1 = LaurentPoly::symbolic(SupportConfig(l1, f1.support().points));
    LaurentPoly g2 = LaurentPoly::symbolic(SupportConfig(l2, f2.support().points));
    DiscriminantOutput out = mixed_discriminant(g1, g2, opt);
    std::map<std::uint32_t, CoeffPoly> sub;
    add_specialization(sub, f1, l1);
    add_specialization(sub, f2, l2);
    out.delta = out.delta.substitute(sub);
    out.resultant.value = out.resultant.value.substitute(sub);
    out.boundary.product = out.boundary.product.substitute(sub);
    for (auto& e : out.boundary.entries) e.value = e.value.substitute(sub);
    return out;
}

struct MmForm {
    CoeffPoly vertex_part = CoeffPoly(1);
    CoeffPoly sigma_prime_part = CoeffPoly(1);
    std::vector<std::pair<std::pair<int, LatticePoint>, std::int64_t>> multiplicities;  // ((i, v), mm(v))
    CoeffPoly product() const { return vertex_part * sigma_prime_part; }
};

// Boundary factor regrouped as vertex powers c_v^{mm(v)} times the resultants over common edge normals.
inline MmForm discriminant_mm_form(const LaurentPoly& f1, const LaurentPoly& f2) {
    require_planar(f1.support());
    require_planar(f2.support());
    MmForm form;
    for (int i = 1; i <= 2; ++i) {
        const LaurentPoly& fi = i == 1 ? f1 : f2;
        for (const auto& v : convex_hull(fi.support().points)) {
            std::int64_t m = mixed_multiplicity(v, f1.support(), f2.support(), i);
            form.multiplicities.push_back({{i, v}, m});
            if (m) form.vertex_part = form.vertex_part * fi.coeff(v).pow(static_cast<unsigned>(m));
        }
    }
    BoundaryFactor bf = boundary_factor(f1, f2);
    for (const auto& e : bf.entries)
        if (e.profile.in_sigma_prime) form.sigma_prime_part = form.sigma_prime_part * e.value.pow(static_cast<unsigned>(e.exponent));
    if (!form.product().same_up_to_sign(bf.product)) throw DiscriminantError("mm-form inconsistency");
    return form;
}

// Order of vanishing of Res(f1, f2, J) in the coefficient of the vertex v of A_i, measured modulo a prime
// on a random line through the remaining coefficients.
inline std::int64_t resultant_vertex_order(const SupportConfig& a1, const SupportConfig& a2, const LatticePoint& v, int i,
                                           std::uint64_t seed = 1) {
    require_planar(a1);
    require_planar(a2);
    const SupportConfig& ai = i == 1 ? a1 : a2;
    if (!ai.index_of(v) || !is_hull_vertex(ai.points, v)) throw DiscriminantError("point is not a vertex of the support hull");
    SupportConfig s1(1, a1.points), s2(2, a2.points), s3(3, minkowski_points(a1.points, a2.points));
    PointResultant pr({s1, s2, s3}, seed);
    const PrimeField& F = pr.field();
    const mpz_class p(static_cast<unsigned long>(F.prime()));
    auto reduce = [&](const CoeffPoly& c) {
        mpz_class z = c.constant_value() % p;
        if (z < 0) z += p;
        return static_cast<std::uint64_t>(z.get_ui());
    };
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<long> c1, c2;
    for (std::size_t k = 0; k < s1.size(); ++k) c1.push_back(static_cast<long>(rng() % 1000000 + 1));
    for (std::size_t k = 0; k < s2.size(); ++k) c2.push_back(static_cast<long>(rng() % 1000000 + 1));
    const std::int64_t bound = 2 * mixed_volume(a1, a2) + normalized_volume(i == 1 ? a2 : a1);
    std::vector<std::uint64_t> xs, ys;
    for (long t = 1; t <= bound + 2; ++t) {
        LaurentPoly f1(s1), f2(s2);
        for (std::size_t k = 0; k < s1.size(); ++k) f1.set(s1.points[k], CoeffPoly(i == 1 && s1.points[k] == v ? t : c1[k]));
        for (std::size_t k = 0; k < s2.size(); ++k) f2.set(s2.points[k], CoeffPoly(i == 2 && s2.points[k] == v ? t : c2[k]));
        LaurentPoly jac = toric_jacobian(f1, f2, 3);
        PointResultant::Point pt;
        for (const auto& q : s1.points) pt[0].push_back(reduce(f1.coeff(q)));
        for (const auto& q : s2.points) pt[1].push_back(reduce(f2.coeff(q)));
        for (const auto& q : s3.points) pt[2].push_back(reduce(jac.coeff(q)));
        xs.push_back(static_cast<std::uint64_t>(t));
        ys.push_back(pr.evaluate(pt));
    }
    UPoly r = uinterpolate(xs, ys, F);
    for (std::size_t k = 0; k < r.size(); ++k)
        if (r[k]) return static_cast<std::int64_t>(k);
    throw DiscriminantError("resultant vanishes on the probe line");
}

// ---- univariate ----

inline UniPoly univariate_symbolic(int label, const std::vector<std::int64_t>& exponents) {
    std::int64_t d = 0;
    for (auto e : exponents) {
        if (e < 0) throw DiscriminantError("negative exponent in univariate support");
        d = std::max(d, e);
    }
    UniPoly f(static_cast<std::size_t>(d) + 1);
    for (auto e : exponents) f[static_cast<std::size_t>(e)] = CoeffPoly::symbol(label, {e, 0});
    return f;
}

inline UniPoly uni_multiply(const UniPoly& a, const UniPoly& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!a[i].is_zero() && !b[j].is_zero()) r[i + j] += a[i] * b[j];
    return r;
}

inline std::optional<std::uint32_t> single_symbol(const CoeffPoly& c) {
    if (c.size() != 1 || c.leading().c != 1 || c.leading().m.degree() != 1) return std::nullopt;
    return c.leading().m.var(0);
}

inline std::uint32_t min_exponent(const CoeffPoly& p, std::uint32_t key) {
    std::uint32_t m = ~0u;
    for (const auto& t : p.terms()) m = std::min(m, t.m.degree_in(key));
    return m;
}

// Res(f, x f') with the extreme-coefficient powers removed; the cycle of the univariate A-discriminant.
// Generic discriminant cycle of the support. Res(f, x f') = (-1)^(d(d+1)/2) a_0 a_d Delta in the dense case.
inline CoeffPoly generic_univariate_discriminant(const std::vector<std::size_t>& sup, int label) {
    const std::size_t d = sup.back();
    UniPoly f(d + 1), g(d + 1);
    for (auto k : sup) {
        f[k] = CoeffPoly::symbol(Symbol{label, static_cast<std::int64_t>(k), 0});
        g[k] = f[k].scaled(mpz_class(static_cast<unsigned long>(k)));
    }
    CoeffPoly s = ff_determinant(sylvester_matrix(f, g));
    std::uint32_t k0 = symbol_key({label, 0, 0}), kd = symbol_key({label, static_cast<std::int64_t>(d), 0});
    auto r = s.try_divide(f[0].pow(min_exponent(s, k0)) * f[d].pow(min_exponent(s, kd)));
    if (!r) throw DiscriminantError("extreme coefficient powers do not divide Res(f, x f')");
    if (r->is_constant()) return CoeffPoly(1);
    CoeffPoly delta = r->primitive_part();
    return (d * (d + 1) / 2) % 2 ? -delta : delta;
}

inline CoeffPoly univariate_discriminant(UniPoly f) {
    trim(f);
    std::size_t lo = 0;
    while (lo < f.size() && f[lo].is_zero()) ++lo;
    f.erase(f.begin(), f.begin() + static_cast<long>(lo));
    std::vector<std::size_t> sup;
    int label = 1;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k].is_zero()) continue;
        sup.push_back(k);
        for (auto v : f[k].variables()) label = std::max(label, label_of_key(v) + 1);
    }
    if (sup.size() < 2) throw DiscriminantError("a monomial has no discriminant");
    CoeffPoly generic = generic_univariate_discriminant(sup, label);
    std::map<std::uint32_t, CoeffPoly> sub;
    for (auto k : sup) sub[symbol_key({label, static_cast<std::int64_t>(k), 0})] = f[k];
    return generic.substitute(sub);
}

inline std::int64_t support_first_inner(const std::vector<std::int64_t>& a) {
    std::int64_t d = *std::max_element(a.begin(), a.end());
    std::int64_t best = d;
    for (auto e : a)
        if (e > 0 && e < best) best = e;
    return best;
}

inline std::int64_t support_last_inner(const std::vector<std::int64_t>& a) {
    std::int64_t d = *std::max_element(a.begin(), a.end());
    std::int64_t best = 0;
    for (auto e : a)
        if (e < d && e > best) best = e;
    return best;
}

// Monomial a0^{i1-m0} b0^{j1-m0} a_{d1}^{d1-im-m1} b_{d2}^{d2-jl-m1} in the symbols of labels la, lb.
inline CoeffPoly univariate_product_factor(const std::vector<std::int64_t>& ap, const std::vector<std::int64_t>& app,
                                           int la = 1, int lb = 2) {
    for (const auto* a : {&ap, &app}) {
        if (a->size() < 2 || *std::min_element(a->begin(), a->end()) != 0)
            throw DiscriminantError("univariate support must contain 0 and at least two exponents");
    }
    std::int64_t d1 = *std::max_element(ap.begin(), ap.end()), d2 = *std::max_element(app.begin(), app.end());
    std::int64_t i1 = support_first_inner(ap), j1 = support_first_inner(app);
    std::int64_t im = support_last_inner(ap), jl = support_last_inner(app);
    std::int64_t m0 = std::min(i1, j1), m1 = std::min(d1 - im, d2 - jl);
    auto sym = [](int l, std::int64_t e) { return CoeffPoly::symbol(l, {e, 0}); };
    return sym(la, 0).pow(static_cast<unsigned>(i1 - m0)) * sym(lb, 0).pow(static_cast<unsigned>(j1 - m0)) *
           sym(la, d1).pow(static_cast<unsigned>(d1 - im - m1)) * sym(lb, d2).pow(static_cast<unsigned>(d2 - jl - m1));
}

struct UnivariateProductReport {
    CoeffPoly lhs, delta_p, delta_pp, res, extra;
    bool holds = false;
};

inline UnivariateProductReport univariate_multiplicativity(const std::vector<std::int64_t>& ap, const std::vector<std::int64_t>& app,
                                                           int la = 1, int lb = 2) {
    UnivariateProductReport r;
    UniPoly fp = univariate_symbolic(la, ap), fpp = univariate_symbolic(lb, app);
    r.extra = univariate_product_factor(ap, app, la, lb);
    r.lhs = univariate_discriminant(uni_multiply(fp, fpp));
    r.delta_p = univariate_discriminant(fp);
    r.delta_pp = univariate_discriminant(fpp);
    r.res = sylvester_resultant(fp, fpp);
    r.holds = r.lhs.same_up_to_sign(r.delta_p * r.delta_pp * r.res.pow(2) * r.extra);
    return r;
}

// ---- bivariate multiplicativity ----

struct EtaCase {
    LatticePoint eta;
    std::int64_t mu = 0, mu_p = 0, mu_pp = 0;
    std::int64_t mu1p = 0, mu1pp = 0, mu2 = 0;
    std::int64_t exp_p = 0, exp_pp = 0;
    std::string survivor;  // none | f1p | f1pp | both
    CoeffPoly res_p, res_pp;
};

struct MultiplicativityReport {
    std::vector<EtaCase> cases;
    CoeffPoly extra = CoeffPoly(1);
    CoeffPoly delta_p, delta_pp, res;
    bool full = false;
    bool degrees_consistent = false;
    bool holds = false;
    int sign = 0;
    std::vector<std::uint64_t> primes;
    std::int64_t points_checked = 0;
    std::vector<std::uint64_t> ratios;  // lhs / rhs at each point, when the identity is not asserted
};

namespace detail {

inline std::unordered_map<std::uint32_t, std::uint64_t> random_values(const std::set<std::uint32_t>& vars, std::mt19937_64& rng,
                                                                      const PrimeField& F) {
    std::unordered_map<std::uint32_t, std::uint64_t> v;
    for (auto k : vars) v[k] = 1 + rng() % (F.prime() - 1);
    return v;
}

inline std::set<std::uint32_t> symbols_of(std::initializer_list<const LaurentPoly*> fs) {
    std::set<std::uint32_t> s;
    for (auto f : fs)
        for (const auto& [p, c] : f->terms())
            for (auto k : c.variables()) s.insert(k);
    return s;
}

}  // namespace detail

// Checks Delta(f'f'', f2) = eps * Delta(f', f2) Delta(f'', f2) Res(f', f'', f2)^2 E for symbolic inputs.
// The left side is evaluated pointwise modulo two primes through R(f1, f2, J) / E(f1, f2).
inline MultiplicativityReport multiplicativity_check(const LaurentPoly& f1p, const LaurentPoly& f1pp, const LaurentPoly& f2,
                                                     const ResultantOptions& opt = {}, int points_per_prime = 3) {
    for (const auto* f : {&f1p, &f1pp, &f2}) {
        require_planar(f->support());
        if (!f->is_symbolic()) throw DiscriminantError("multiplicativity_check needs symbolic inputs");
    }
    if (f1p.label() == f1pp.label() || f1p.label() == f2.label() || f1pp.label() == f2.label())
        throw DiscriminantError("multiplicativity_check needs distinct labels");
    MultiplicativityReport rep;
    rep.full = is_full(f1p.support()) && is_full(f1pp.support()) && is_full(f2.support());
    SupportConfig a1(fresh_label({&f1p, &f1pp, &f2}), minkowski_points(f1p.support().points, f1pp.support().points));
    const SupportConfig& a2 = f2.support();

    for (const auto& pr : edge_profiles(a1, a2)) {
        EtaCase c;
        c.eta = pr.eta;
        c.mu = pr.mu;
        c.mu2 = pr.mu2;
        c.mu1p = face_data(f1p.support(), pr.eta).mu;
        c.mu1pp = face_data(f1pp.support(), pr.eta).mu;
        c.mu_p = std::min(c.mu1p, c.mu2);
        c.mu_pp = std::min(c.mu1pp, c.mu2);
        c.exp_p = c.mu_p - c.mu;
        c.exp_pp = c.mu_pp - c.mu;
        c.survivor = c.exp_p && c.exp_pp ? "both" : c.exp_p ? "f1p" : c.exp_pp ? "f1pp" : "none";
        LaurentPoly g2 = face_polynomial(f2, pr.eta);
        c.res_p = edge_resultant(face_polynomial(f1p, pr.eta), g2, edge_direction(pr.eta));
        c.res_pp = edge_resultant(face_polynomial(f1pp, pr.eta), g2, edge_direction(pr.eta));
        rep.extra = rep.extra * c.res_p.pow(static_cast<unsigned>(c.exp_p)) * c.res_pp.pow(static_cast<unsigned>(c.exp_pp));
        rep.cases.push_back(std::move(c));
    }

    DiscriminantOutput dp = mixed_discriminant(f1p, f2, opt), dpp = mixed_discriminant(f1pp, f2, opt);
    rep.delta_p = dp.delta;
    rep.delta_pp = dpp.delta;
    rep.res = sparse_resultant(f1p, f1pp, f2, opt).value;
    CoeffPoly rhs_sym = rep.delta_p * rep.delta_pp * rep.res.pow(2) * rep.extra;

    Bidegree pred = predicted_bidegree(a1, a2);
    auto md = rhs_sym.group_multidegree();
    rep.degrees_consistent = static_cast<std::int64_t>(md[f1p.label()]) == pred.first &&
                             static_cast<std::int64_t>(md[f1pp.label()]) == pred.first &&
                             static_cast<std::int64_t>(md[f2.label()]) == pred.second;

    // Generic f1 on A1 and its boundary factor, to evaluate Delta(f1, f2) = R / E at points.
    LaurentPoly g1 = LaurentPoly::symbolic(a1);
    CoeffPoly e1 = boundary_factor(g1, f2).product;
    LaurentPoly prod = f1p * f1pp;
    SupportConfig a3(a1.label + 1, minkowski_points(a1.points, a2.points));
    Triple triple{a1, a2, a3};
    std::set<std::uint32_t> vars = detail::symbols_of({&f1p, &f1pp, &f2});
    std::mt19937_64 rng(opt.seed ^ 0x6a09e667f3bcc909ull);
    rep.holds = true;
    for (std::uint64_t prime : {kPrime61, kPrime62}) {
        PrimeField F(prime);
        PointResultant pres(triple, opt.seed, prime);
        rep.primes.push_back(prime);
        for (int k = 0; k < points_per_prime; ++k) {
            auto vals = detail::random_values(vars, rng, F);
            PointResultant::Point pt;
            std::unordered_map<std::uint32_t, std::uint64_t> gvals = vals;
            for (const auto& p : a1.points) {
                std::uint64_t v = prod.coeff(p).evaluate_mod(vals, F);
                pt[0].push_back(v);
                gvals[symbol_key({a1.label, p.x, p.y})] = v;
            }
            for (const auto& p : a2.points) pt[1].push_back(f2.coeff(p).evaluate_mod(vals, F));
            std::map<LatticePoint, std::uint64_t> jv;
            for (std::size_t i = 0; i < a1.size(); ++i)
                for (std::size_t j = 0; j < a2.size(); ++j) {
                    std::int64_t det = cross(a1.points[i], a2.points[j]);
                    if (det) jv[a1.points[i] + a2.points[j]] = F.add(jv[a1.points[i] + a2.points[j]], F.mul(F.from_int(det), F.mul(pt[0][i], pt[1][j])));
                }
            for (const auto& p : a3.points) pt[2].push_back(jv.count(p) ? jv[p] : 0);
            std::uint64_t e = e1.evaluate_mod(gvals, F);
            if (!e) continue;
            std::uint64_t lhs = F.mul(pres.evaluate(pt, static_cast<std::uint64_t>(k)), F.inv(e));
            std::uint64_t rhs = rhs_sym.evaluate_mod(vals, F);
            ++rep.points_checked;
            int s = lhs == rhs && lhs ? 1 : (lhs == F.neg(rhs) && lhs ? -1 : 0);
            rep.ratios.push_back(rhs ? F.mul(lhs, F.inv(rhs)) : 0);
            if (s == 0 || (rep.sign && s != rep.sign)) rep.holds = false;
            if (!rep.sign) rep.sign = s;
        }
    }
    if (rep.points_checked == 0) rep.holds = false;
    return rep;
}

}  // namespace toricdisc
