// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "toricdisc/toricdisc.hpp"

using namespace toricdisc;

namespace {

struct Failure {
    std::string what;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

using Pts = std::vector<LatticePoint>;
const Pts kSigma{{0, 0}, {1, 0}, {0, 1}};
const Pts kSquare{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
const Pts kTwoSigma{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {0, 2}};

CoeffPoly P(const std::string& s) { return parse_coeff_poly(s); }

LaurentPoly numeric(int label, const std::vector<std::pair<LatticePoint, long>>& terms, const Pts& support) {
    LaurentPoly f(SupportConfig(label, support));
    for (auto& [p, c] : terms) f.set(p, CoeffPoly(c));
    return f;
}

std::map<Symbol, mpq_class> values_of(const std::vector<const LaurentPoly*>& fs) {
    std::map<Symbol, mpq_class> v;
    for (auto* f : fs)
        for (const auto& p : f->support().points) {
            CoeffPoly c = f->coeff(p);
            v[{f->label(), p.x, p.y}] = c.constant_value();
        }
    return v;
}

UniPoly times_x_derivative(const UniPoly& f) {
    UniPoly g(f.size());
    for (std::size_t k = 1; k < f.size(); ++k) g[k] = f[k].scaled(mpz_class(static_cast<unsigned long>(k)));
    return g;
}

UniPoly derivative(const UniPoly& f) {
    UniPoly g(f.size() - 1);
    for (std::size_t k = 1; k < f.size(); ++k) g[k - 1] = f[k].scaled(mpz_class(static_cast<unsigned long>(k)));
    return g;
}

mpz_class coefficient_of(const CoeffPoly& p, const CoeffPoly& monomial) {
    const Monomial& m = monomial.terms().front().m;
    for (const auto& t : p.terms())
        if (t.m == m) return t.c;
    return 0;
}

// Quintic letters: f = a x^5 + b x^4 + c x^3 + d x^2 + e x + g.
std::string quintic(std::string s) {
    const char* names[] = {"c_1_0_0", "c_1_1_0", "c_1_2_0", "c_1_3_0", "c_1_4_0", "c_1_5_0"};
    const std::string letters = "gedcba";
    std::string out;
    for (char ch : s) {
        auto k = letters.find(ch);
        out += k == std::string::npos ? std::string(1, ch) : std::string(names[k]);
    }
    return out;
}

std::vector<SupportConfig> random_configs(std::mt19937_64& rng, int count, int label) {
    std::vector<SupportConfig> out;
    std::uniform_int_distribution<int> coord(-3, 3), size(3, 8);
    while (static_cast<int>(out.size()) < count) {
        std::set<LatticePoint> pts;
        int n = size(rng);
        while (static_cast<int>(pts.size()) < n) pts.insert({coord(rng), coord(rng)});
        Pts v(pts.begin(), pts.end());
        if (affine_dimension(v) == 2) out.emplace_back(label, v);
    }
    return out;
}

// ---- criteria ----

std::string quadratic_golden() {
    CoeffPoly d = univariate_discriminant(univariate_symbolic(1, {0, 1, 2}));
    expect(d == P("c_1_1_0^2 - 4*c_1_0_0*c_1_2_0"), "got " + d.to_string());
    return "Delta_2 = " + d.to_string();
}

std::string quintic_golden() {
    UniPoly f = univariate_symbolic(1, {0, 1, 2, 3, 4, 5});
    CoeffPoly delta = univariate_discriminant(f);
    CoeffPoly a = P(quintic("a")), g = P(quintic("g"));
    CoeffPoly s10 = ff_determinant(sylvester_matrix(f, times_x_derivative(f)));
    CoeffPoly s9 = ff_determinant(sylvester_matrix(f, derivative(f)));
    expect(s9 == a * delta, "9x9 determinant is not a*Delta_5");
    // Leading-coefficient-first Sylvester layout gives Res(f, x f') = (-1)^(d(d+1)/2) a g Delta; the
    // constant-term-first layout flips the column order and gives +a g Delta.
    expect(s10 == -(a * g * delta), "10x10 determinant is not (-1)^15 a*g*Delta_5");
    PolyMatrix rev = sylvester_matrix(f, times_x_derivative(f));
    for (auto& row : rev) std::reverse(row.begin(), row.end());
    expect(ff_determinant(rev) == a * g * delta, "column-reversed 10x10 determinant is not a*g*Delta_5");
    const std::vector<std::pair<std::string, long>> spots{{"a^4*g^4", 3125}, {"a^3*e^5", 256}, {"b^5*g^3", 256},
                                                           {"b^4*e^4", -27},  {"a^2*e^4*c^2", -128}, {"a*c^5*g^2", 108}};
    for (auto& [m, c] : spots)
        expect(coefficient_of(delta, P(quintic(m))) == c, "coefficient of " + m + " is " + coefficient_of(delta, P(quintic(m))).get_str());
    expect(delta.size() == 59, "term count " + std::to_string(delta.size()));
    // Independent value: disc(x^5 + t) = 5^5 t^4.
    std::map<Symbol, mpq_class> v{{{1, 5, 0}, 1}, {{1, 4, 0}, 0}, {{1, 3, 0}, 0}, {{1, 2, 0}, 0}, {{1, 1, 0}, 0}, {{1, 0, 0}, -2}};
    expect(delta.evaluate(v) == 3125 * 16, "disc(x^5 - 2) != 5^5 * 2^4");
    return "59 terms, spot coefficients match, 9x9 = a*Delta_5, 10x10 = a*g*Delta_5 (constant-term-first layout)";
}

std::string bilinear_main_identity() {
    LaurentPoly f1 = LaurentPoly::symbolic({1, kSquare}), f2 = LaurentPoly::symbolic({2, kSquare});
    DiscriminantOutput out = mixed_discriminant(f1, f2);
    expect(out.boundary.entries.size() == 4, "expected four edge factors");
    for (const auto& e : out.boundary.entries) {
        expect(e.exponent == 1, "mu != 1");
        auto md = e.value.group_multidegree();
        expect(md[1] == 1 && md[2] == 1 && e.value.size() == 2, "edge factor is not a 2x2 Sylvester determinant");
    }
    auto q = out.resultant.value.try_divide(out.boundary.product);
    expect(q.has_value(), "R not divisible by E");
    expect(q->same_up_to_sign(out.delta), "quotient differs from reported Delta");
    expect(out.achieved == Bidegree(2, 2) && out.predicted == Bidegree(2, 2), "bidegree mismatch");
    LaurentPoly t1 = numeric(1, {{{1, 1}, 1}, {{0, 0}, -1}}, kSquare);
    LaurentPoly t2 = numeric(2, {{{0, 0}, 2}, {{1, 0}, -1}, {{0, 1}, -1}}, kSquare);
    expect(t1.value_at(1, 1) == 0 && t2.value_at(1, 1) == 0, "witness does not pass through (1,1)");
    expect(out.delta.evaluate(values_of({&t1, &t2})) == 0, "Delta nonzero on tangency witness");
    LaurentPoly u2 = numeric(2, {{{0, 0}, -3}, {{1, 0}, 1}, {{0, 1}, 1}}, kSquare);
    mpq_class transverse = out.delta.evaluate(values_of({&t1, &u2}));
    expect(transverse != 0, "Delta vanishes on transverse witness");
    return "Delta has " + std::to_string(out.delta.size()) + " terms, bidegree (2,2), transverse value " + transverse.get_str();
}

std::string conic_line_oracle() {
    LaurentPoly f1 = LaurentPoly::symbolic({1, kTwoSigma}), f2 = LaurentPoly::symbolic({2, kSigma});
    DiscriminantOutput out = mixed_discriminant(f1, f2);
    LaurentPoly jac = toric_jacobian(f1, f2, 3);
    CoeffPoly mac = macaulay_dense_oracle(f1, f2, jac);
    expect(mac.same_up_to_sign(out.resultant.value), "sparse resultant disagrees with the Macaulay oracle");
    SupportConfig a1(1, kTwoSigma), a2(2, kSigma);
    expect(predicted_bidegree(a1, a2, BidegreeMode::sparse) == Bidegree(2, 2), "sparse bidegree formula");
    expect(predicted_bidegree(a1, a2, BidegreeMode::dense_fan) == Bidegree(9 - 4 - 3, 9 - 1 - 6), "dense bidegree formula");
    expect(out.achieved == Bidegree(2, 2), "achieved bidegree");
    LaurentPoly w1 = numeric(1, {{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -2}}, kTwoSigma);
    LaurentPoly w2 = numeric(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{0, 0}, -2}}, kSigma);
    expect(out.delta.evaluate(values_of({&w1, &w2})) == 0, "Delta nonzero on the conic witness");
    return "Macaulay agrees up to sign, bidegree (2,2) from both formulas";
}

std::string resultant_properties() {
    // multiplicativity in the first argument
    LaurentPoly fp = LaurentPoly::symbolic({1, kSigma}), fpp = LaurentPoly::symbolic({4, kSigma});
    LaurentPoly f2 = LaurentPoly::symbolic({2, kSigma}), f3 = LaurentPoly::symbolic({3, kSigma});
    CoeffPoly lhs = sparse_resultant(fp * fpp, f2, f3).value;
    CoeffPoly rhs = sparse_resultant(fp, f2, f3).value * sparse_resultant(fpp, f2, f3).value;
    expect(lhs.same_up_to_sign(rhs), "Res(f'f'', f2, f3) != Res(f', f2, f3) Res(f'', f2, f3)");
    LaurentPoly gp = LaurentPoly::symbolic({1, kSquare}), gpp = LaurentPoly::symbolic({4, kSigma});
    CoeffPoly lhs2 = sparse_resultant(gp * gpp, f2, f3).value;
    CoeffPoly rhs2 = sparse_resultant(gp, f2, f3).value * sparse_resultant(gpp, f2, f3).value;
    expect(lhs2.same_up_to_sign(rhs2), "multiplicativity with a square factor");

    // monomial rule: MV(sigma, square) = (7 - 1 - 2) / 2 = 2
    LaurentPoly mono = LaurentPoly::symbolic({1, {{1, 1}}});
    LaurentPoly sq3 = LaurentPoly::symbolic({3, kSquare});
    ResultantOutput mr = sparse_resultant(mono, f2, sq3);
    expect(mr.value == P("c_1_1_1^2"), "monomial rule gave " + mr.value.to_string());

    // power rule on edge resultants and on univariate Sylvester resultants
    for (std::int64_t d : {2, 3}) {
        LaurentPoly e1 = LaurentPoly::symbolic({1, {{0, 0}, {d, 0}}}), e2 = LaurentPoly::symbolic({2, {{0, 0}, {d, 0}}});
        CoeffPoly r = edge_resultant(e1, e2, LatticePoint{1, 0});
        CoeffPoly base = CoeffPoly::symbol(1, {0, 0}) * CoeffPoly::symbol(2, {d, 0}) -
                         CoeffPoly::symbol(1, {d, 0}) * CoeffPoly::symbol(2, {0, 0});
        expect(r.same_up_to_sign(base.pow(static_cast<unsigned>(d))), "edge power rule fails for d=" + std::to_string(d));
        UniPoly f = univariate_symbolic(1, {0, 1, 2}), g = univariate_symbolic(2, {0, 1});
        UniPoly fd(2 * d + 1), gd(d + 1);
        for (std::size_t k = 0; k < f.size(); ++k) fd[k * d] = f[k];
        for (std::size_t k = 0; k < g.size(); ++k) gd[k * d] = g[k];
        expect(sylvester_resultant(fd, gd).same_up_to_sign(sylvester_resultant(f, g).pow(static_cast<unsigned>(d))),
               "univariate power rule fails for d=" + std::to_string(d));
    }

    // degree audits: (f1, f2, J) on squares has degree 2MV + Vol = 4 + 2 in each of f1, f2
    LaurentPoly s1 = LaurentPoly::symbolic({1, kSquare}), s2 = LaurentPoly::symbolic({2, kSquare});
    LaurentPoly jac = toric_jacobian(s1, s2, 3);
    ResultantOutput rj = sparse_resultant(s1, s2, jac);
    expect(rj.verified, "degree audit not verified");
    for (auto& [label, pr] : rj.degree_audit) expect(pr.first == pr.second, "audit mismatch for label " + std::to_string(label));
    auto md = rj.value.group_multidegree();
    expect(md[1] == 6 && md[2] == 6, "R(f1, f2, J) is not of bidegree (6,6)");
    ResultantOutput r3 = sparse_resultant(LaurentPoly::symbolic({1, kSquare}), LaurentPoly::symbolic({2, kSquare}),
                                          LaurentPoly::symbolic({3, kTwoSigma}));
    auto md3 = r3.value.group_multidegree();
    // MV(square, 2 sigma) = (Vol(square + 2 sigma) - 2 - 4) / 2 = (14 - 6) / 2 = 4; MV(square, square) = 2
    expect(md3[1] == 4 && md3[2] == 4 && md3[3] == 2, "generic audit (4,4,2) failed");

    // seed invariance
    for (std::uint64_t seed : {5ull, 17ull, 101ull}) {
        ResultantOptions o;
        o.seed = seed;
        expect(sparse_resultant(s1, s2, jac, o).value == rj.value, "seed " + std::to_string(seed) + " changes the output");
    }
    return "multiplicativity, monomial, power, audits (6,6) and (4,4,2), 4 seeds agree";
}

std::string product_formulas() {
    LaurentPoly fp = LaurentPoly::symbolic({1, kSquare}), fpp = LaurentPoly::symbolic({3, kSquare});
    LaurentPoly f2 = LaurentPoly::symbolic({2, kSquare});
    MultiplicativityReport rep = multiplicativity_check(fp, fpp, f2);
    expect(rep.full, "squares not recognised as full");
    expect(rep.extra == CoeffPoly(1), "E != 1 for three bilinear forms");
    expect(rep.degrees_consistent, "degree bookkeeping inconsistent");
    expect(rep.holds, "Delta(f'f'', f2) != Delta(f', f2) Delta(f'', f2) Res^2");

    UnivariateProductReport u = univariate_multiplicativity({0, 2, 3}, {0, 1, 4});
    expect(u.extra == P("c_1_0_0*c_2_4_0^2"), "extra factor " + u.extra.to_string());
    auto q = u.lhs.try_divide(u.delta_p * u.delta_pp * u.res.pow(2));
    expect(q && q->same_up_to_sign(P("c_1_0_0*c_2_4_0^2")), "quotient by expansion is not a0*b4^2");
    expect(u.holds, "univariate identity fails");

    UnivariateProductReport full = univariate_multiplicativity({0, 1, 2}, {0, 1, 2, 3});
    expect(full.extra == CoeffPoly(1) && full.holds, "full univariate supports do not give E = 1");
    return "E = 1 bivariate (" + std::to_string(rep.points_checked) + " points), a0*b4^2 univariate, E = 1 dense";
}

std::string geometry_suite() {
    std::mt19937_64 rng(2024);
    auto as = random_configs(rng, 60, 1), bs = random_configs(rng, 60, 2);
    for (std::size_t k = 0; k < as.size(); ++k) {
        const auto &a = as[k], &b = bs[k];
        std::int64_t mv = mixed_volume(a, b);
        std::int64_t sum = normalized_volume(minkowski_points(a.points, b.points));
        expect(2 * mv == sum - normalized_volume(a) - normalized_volume(b), "2MV identity");
        expect(mv == mixed_volume(b, a), "MV symmetry");
        expect(mixed_volume(a.points, minkowski_points(b.points, b.points)) == 2 * mv, "MV(A, B+B) != 2 MV(A, B)");
        auto profiles = edge_profiles(a, b);
        for (const auto& pr : profiles) {
            expect(pr.mu == std::min(pr.mu1, pr.mu2) && pr.mu >= 1, "mu definition");
            if (is_full(a) || is_full(b)) expect(pr.mu == 1, "mu != 1 under fullness");
        }
        for (int i : {1, 2}) {
            const auto& ai = i == 1 ? a : b;
            for (const auto& v : convex_hull(ai.points)) {
                std::int64_t mm = mixed_multiplicity(v, a, b, i);
                expect(mm >= 0, "negative mixed multiplicity");
            }
        }
    }
    // mm(v) as a sum over the normals eta' outside Sigma' whose A_i-face is {v}: l(e_j) * mu'(eta'), where
    // mu' is the gap of A_i along eta'. The literal form with mu = min(mu_1, mu_2) is counted separately.
    int literal_misses = 0, vertices = 0;
    auto check_edge_sum = [&](const SupportConfig& a1, const SupportConfig& a2, bool literal) {
        auto profiles = edge_profiles(a1, a2);
        for (int i : {1, 2}) {
            const auto& ai = i == 1 ? a1 : a2;
            for (const auto& v : convex_hull(ai.points)) {
                std::int64_t with_gap = 0, with_min = 0;
                for (const auto& pr : profiles) {
                    if (pr.in_sigma_prime || pr.len(i) != 0 || ai.points[pr.face(i)[0]] != v) continue;
                    with_gap += pr.len(3 - i) * (i == 1 ? pr.mu1 : pr.mu2);
                    with_min += pr.len(3 - i) * pr.mu;
                }
                std::int64_t mm = mixed_multiplicity(v, a1, a2, i);
                expect(mm == with_gap, "mm(v) != sum of l(e_j) mu'(eta') over E(v)");
                if (literal) expect(mm == with_min, "mm(v) != sum of l(e_j) mu(eta') on a full pair");
                ++vertices;
                literal_misses += mm != with_min;
            }
        }
    };
    for (std::size_t k = 0; k < as.size(); ++k) check_edge_sum(as[k], bs[k], is_full(as[k]) && is_full(bs[k]));
    check_edge_sum({1, kSquare}, {2, kSigma}, true);
    check_edge_sum({1, kTwoSigma}, {2, kSigma}, true);
    check_edge_sum({1, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1}, {2, 1}, {0, 2}, {1, 2}, {0, 3}}}, {2, kSquare}, true);
    check_edge_sum({1, kSigma}, {2, {{0, 0}, {2, 1}, {1, 2}}}, false);
    const SupportConfig pointed(1, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 2}});
    check_edge_sum(pointed, {2, kSigma}, false);
    // On this pair the literal form undercounts; the resultant itself vanishes to order mm(v) = 2.
    expect(mixed_multiplicity({2, 2}, pointed, {2, kSigma}, 1) == 2, "mm of the far vertex");
    expect(resultant_vertex_order(pointed, {2, kSigma}, {2, 2}, 1) == 2, "order of Res(f1, f2, J) in c_(2,2)");
    expect(lattice_index({{1, kSigma}, {2, kSigma}}) == 1, "index of sigma");
    expect(lattice_index({{1, {{0, 0}, {2, 0}, {0, 2}}}, {2, {{0, 0}, {2, 0}, {0, 2}}}}) == 4, "index of 2Z^2");
    expect(lattice_index({{1, {{0, 0}, {2, 0}}}, {2, {{0, 0}, {0, 3}}}}) == 6, "index diag(2,3)");
    expect(is_essential({{1, kSigma}, {2, kSigma}, {3, kSigma}}), "three lines essential");
    expect(!is_essential({{1, {{0, 0}}}, {2, kSigma}, {3, kSigma}}), "singleton family essential");
    expect(!is_essential({{1, {{0, 0}, {1, 0}}}, {2, {{0, 0}, {2, 0}}}, {3, kSigma}}), "collinear pair family essential");
    return "60 random pairs; mm edge-sum identity on " + std::to_string(vertices) + " vertices (literal mu = min form misses " +
           std::to_string(literal_misses) + ", none on full pairs); indices 1/4/6; essential classifier";
}

std::string defective_pair() {
    DiscriminantOutput out = mixed_discriminant(LaurentPoly::symbolic({1, kSigma}), LaurentPoly::symbolic({2, kSigma}));
    expect(out.defective, "(sigma, sigma) not flagged defective");
    expect(out.delta == CoeffPoly(1), "defective Delta != 1");
    auto q = out.resultant.value.try_divide(out.boundary.product);
    expect(q && q->is_constant(), "quotient is not constant");
    return "quotient " + q->to_string() + ", Delta = 1";
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<std::string()> run;
        double limit_s;
    };
    const std::vector<Criterion> criteria{
        {1, "quadratic discriminant", quadratic_golden, 1},
        {2, "quintic discriminant", quintic_golden, 10},
        {3, "bilinear squares main identity", bilinear_main_identity, 300},
        {4, "conic and line against Macaulay", conic_line_oracle, 600},
        {5, "resultant properties", resultant_properties, 300},
        {6, "product formulas", product_formulas, 300},
        {7, "geometry suite", geometry_suite, 60},
        {8, "defective pair", defective_pair, 60},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = c.run();
        } catch (const Failure& f) {
            ok = false;
            detail = f.what;
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && secs > c.limit_s) {
            ok = false;
            detail += " (over the " + std::to_string(static_cast<int>(c.limit_s)) + " s budget)";
        }
        failures += !ok;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (ok ? "PASS" : "FAIL") << " criterion " << c.id << " [" << c.name << "] " << secs << " s: " << detail;
        std::cout << line.str() << std::endl;
    }
    std::cout << (failures ? "FAILED " : "ALL PASSED ") << (criteria.size() - failures) << "/" << criteria.size() << std::endl;
    return failures ? 1 : 0;
}
