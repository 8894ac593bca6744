#pragma once

#include <chrono>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "discriminant.hpp"
#include "io.hpp"

namespace toricdisc {

struct RunFlags {
    std::uint64_t seed = 1;
    int liftings = 2;
    std::string method = "auto";
    bool audit = false;
    bool text = false;
    bool timing = false;
};

struct RunReport {
    nlohmann::json body;
    int exit_code = 0;
};

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"support-info",         "resultant",
                                                "discriminant",         "bidegree",
                                                "verify-main-theorem",  "verify-multiplicativity",
                                                "univariate-disc"};
    return names;
}

namespace detail {

inline nlohmann::json point_json(const LatticePoint& p) { return nlohmann::json::array({p.x, p.y}); }

inline nlohmann::json points_json(const std::vector<LatticePoint>& ps) {
    auto j = nlohmann::json::array();
    for (const auto& p : ps) j.push_back(point_json(p));
    return j;
}

inline void require_count(const SystemSpec& spec, std::size_t n, const std::string& cmd) {
    if (spec.polynomials.size() != n)
        throw InputError(cmd + ": expected " + std::to_string(n) + " polynomials, got " + std::to_string(spec.polynomials.size()));
}

inline void require_distinct_labels(const SystemSpec& spec) {
    std::set<int> seen;
    for (const auto& p : spec.polynomials)
        if (!seen.insert(p.label).second) throw InputError("polynomials: duplicate label " + std::to_string(p.label));
}

inline std::vector<std::int64_t> univariate_exponents(const PolySpec& ps) {
    std::vector<std::int64_t> e;
    for (const auto& p : ps.support) {
        if (p.y != 0) throw InputError("univariate polynomial has a nonzero second exponent");
        e.push_back(p.x);
    }
    return e;
}

inline UniPoly univariate_generic(const PolySpec& ps) {
    auto e = univariate_exponents(ps);
    std::int64_t lo = *std::min_element(e.begin(), e.end());
    if (lo < 0) throw InputError("univariate exponents must be nonnegative");
    return univariate_symbolic(ps.label, e);
}

inline nlohmann::json audit_json(const ResultantOutput& r, const std::array<int, 3>& labels) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [pos, od] : r.degree_audit)
        j[std::to_string(labels[pos - 1])] = {{"observed", od.first}, {"predicted", od.second}};
    return j;
}

inline ResultantOptions options_of(const RunFlags& f) {
    ResultantOptions o;
    o.seed = f.seed;
    o.min_liftings = std::max(1, f.liftings);
    o.max_liftings = std::max(o.min_liftings, 12);
    return o;
}

inline nlohmann::json support_info(const SystemSpec& spec) {
    nlohmann::json out;
    out["polynomials"] = nlohmann::json::array();
    std::vector<SupportConfig> configs;
    for (const auto& ps : spec.polynomials) {
        SupportConfig a(ps.label, ps.support);
        configs.push_back(a);
        nlohmann::json j;
        j["label"] = ps.label;
        j["dimension"] = affine_dimension(a.points);
        j["hull"] = points_json(convex_hull(a.points));
        j["volume"] = normalized_volume(a.points);
        j["full"] = is_full(a);
        j["lattice_points"] = lattice_points_of_hull(a.points).size();
        j["boundary_points"] = boundary_points(a.points);
        out["polynomials"].push_back(j);
    }
    nlohmann::json mv = nlohmann::json::object();
    for (std::size_t i = 0; i < configs.size(); ++i)
        for (std::size_t k = i + 1; k < configs.size(); ++k)
            mv[std::to_string(configs[i].label) + "," + std::to_string(configs[k].label)] = mixed_volume(configs[i], configs[k]);
    out["mixed_volumes"] = mv;
    auto ess = nlohmann::json::array();
    if (configs.size() <= 8)
        for (auto mask : essential_subfamilies(configs)) {
            auto s = nlohmann::json::array();
            for (std::size_t k = 0; k < configs.size(); ++k)
                if (mask >> k & 1) s.push_back(configs[k].label);
            ess.push_back(s);
        }
    out["essential_subfamilies"] = ess;
    CayleyData cd = cayley_matrix(configs);
    out["cayley"] = {{"rows", cd.matrix.size()}, {"columns", cd.matrix.empty() ? 0 : cd.matrix[0].size()}, {"index", cd.index}};
    try {
        out["lattice_index"] = lattice_index(configs);
    } catch (const GeometryError&) {
        out["lattice_index"] = nullptr;
    }
    if (configs.size() == 2 && affine_dimension(configs[0].points) == 2 && affine_dimension(configs[1].points) == 2) {
        auto edges = nlohmann::json::array();
        for (const auto& pr : edge_profiles(configs[0], configs[1])) {
            nlohmann::json e;
            e["eta"] = point_json(pr.eta);
            e["nu"] = {pr.nu1, pr.nu2};
            std::vector<LatticePoint> f1, f2;
            for (auto k : pr.face1) f1.push_back(configs[0].points[k]);
            for (auto k : pr.face2) f2.push_back(configs[1].points[k]);
            e["faces"] = {points_json(f1), points_json(f2)};
            e["len"] = {pr.len1, pr.len2};
            e["mu_i"] = {pr.mu1, pr.mu2};
            e["mu"] = pr.mu;
            e["sigma_prime"] = pr.in_sigma_prime;
            edges.push_back(e);
        }
        out["edges"] = edges;
        auto mm = nlohmann::json::array();
        for (int i = 1; i <= 2; ++i)
            for (const auto& v : convex_hull(configs[i - 1].points))
                mm.push_back({{"label", configs[i - 1].label}, {"vertex", point_json(v)}, {"mm", mixed_multiplicity(v, configs[0], configs[1], i)}});
        out["mixed_multiplicities"] = mm;
    }
    return out;
}

inline RunReport resultant_cmd(const SystemSpec& spec, const RunFlags& flags) {
    RunReport rep;
    auto vals = explicit_values(spec);
    if (spec.univariate) {
        require_count(spec, 2, "resultant");
        CoeffPoly r = sylvester_resultant(univariate_generic(spec.polynomials[0]), univariate_generic(spec.polynomials[1]));
        rep.body["resultant"] = specialized_string(r, vals);
        rep.body["method"] = "sylvester";
        return rep;
    }
    require_count(spec, 3, "resultant");
    std::array<LaurentPoly, 3> f{generic_polynomial(spec.polynomials[0]), generic_polynomial(spec.polynomials[1]),
                                 generic_polynomial(spec.polynomials[2])};
    std::array<int, 3> labels{spec.polynomials[0].label, spec.polynomials[1].label, spec.polynomials[2].label};
    if (flags.method == "macaulay") {
        CoeffPoly r = macaulay_dense_oracle(f[0], f[1], f[2]);
        rep.body["resultant"] = specialized_string(r, vals);
        rep.body["method"] = "macaulay";
        return rep;
    }
    ResultantOutput r = sparse_resultant(f[0], f[1], f[2], options_of(flags));
    if (flags.method == "ce" && r.method != "canny_emiris")
        throw InputError("resultant: --method ce needs an essential triple, the family reduces to " + r.method);
    rep.body["resultant"] = specialized_string(r.value, vals);
    rep.body["method"] = r.method;
    rep.body["liftings"] = r.liftings_used;
    if (flags.audit) rep.body["degree_audit"] = audit_json(r, labels);
    return rep;
}

inline nlohmann::json boundary_json(const BoundaryFactor& bf, const std::map<Symbol, mpq_class>& vals) {
    auto j = nlohmann::json::array();
    for (const auto& e : bf.entries)
        j.push_back({{"eta", point_json(e.profile.eta)}, {"mu", e.exponent}, {"factor", specialized_string(e.value, vals)}});
    return j;
}

inline RunReport discriminant_cmd(const SystemSpec& spec, const RunFlags& flags) {
    RunReport rep;
    auto vals = explicit_values(spec);
    if (spec.univariate) {
        require_count(spec, 1, "discriminant");
        rep.body["delta"] = specialized_string(univariate_discriminant(univariate_generic(spec.polynomials[0])), vals);
        return rep;
    }
    require_count(spec, 2, "discriminant");
    LaurentPoly f1 = generic_polynomial(spec.polynomials[0]), f2 = generic_polynomial(spec.polynomials[1]);
    DiscriminantOutput d = mixed_discriminant(f1, f2, options_of(flags));
    rep.body["delta"] = specialized_string(d.delta, vals);
    rep.body["E"] = boundary_json(d.boundary, vals);
    rep.body["bidegree"] = {{"predicted", {d.predicted.first, d.predicted.second}}, {"achieved", {d.achieved.first, d.achieved.second}}};
    rep.body["index"] = d.index;
    rep.body["defective"] = d.defective;
    if (flags.audit) {
        std::array<int, 3> labels{f1.label(), f2.label(), fresh_label({&f1, &f2})};
        rep.body["degree_audit"] = audit_json(d.resultant, labels);
        rep.body["liftings"] = d.resultant.liftings_used;
    }
    return rep;
}

inline RunReport bidegree_cmd(const SystemSpec& spec) {
    RunReport rep;
    require_count(spec, 2, "bidegree");
    SupportConfig a1(spec.polynomials[0].label, spec.polynomials[0].support), a2(spec.polynomials[1].label, spec.polynomials[1].support);
    Bidegree s = predicted_bidegree(a1, a2, BidegreeMode::sparse);
    rep.body["bidegree"] = {{"predicted", {s.first, s.second}}};
    try {
        Bidegree d = predicted_bidegree(a1, a2, BidegreeMode::dense_fan);
        rep.body["dense_fan"] = {d.first, d.second};
    } catch (const DiscriminantError& e) {
        rep.body["dense_fan"] = nullptr;
        rep.body["dense_fan_reason"] = e.what();
    }
    return rep;
}

inline RunReport verify_main_cmd(const SystemSpec& spec, const RunFlags& flags) {
    RunReport rep;
    require_count(spec, 2, "verify-main-theorem");
    LaurentPoly f1 = generic_polynomial(spec.polynomials[0]), f2 = generic_polynomial(spec.polynomials[1]);
    nlohmann::json checks;
    bool holds = true;
    DiscriminantOutput d;
    try {
        d = mixed_discriminant(f1, f2, options_of(flags));
        checks["exact_division"] = true;
    } catch (const DiscriminantError& e) {
        if (std::string(e.what()).find("factorization violated") == std::string::npos) throw;
        rep.body["checks"] = {{"exact_division", false}};
        rep.body["holds"] = false;
        rep.exit_code = 2;
        return rep;
    }
    bool bideg = d.defective || d.achieved == d.predicted;
    checks["bidegree"] = bideg;
    holds = holds && bideg;
    bool mm = true;
    try {
        discriminant_mm_form(f1, f2);
    } catch (const DiscriminantError&) {
        mm = false;
    }
    checks["mm_form"] = mm;
    holds = holds && mm;
    if (flags.method == "macaulay") {
        LaurentPoly jac = toric_jacobian(f1, f2, fresh_label({&f1, &f2}));
        bool agree = macaulay_dense_oracle(f1, f2, jac).same_up_to_sign(d.resultant.value);
        checks["macaulay_agreement"] = agree;
        holds = holds && agree;
    }
    rep.body["checks"] = checks;
    rep.body["bidegree"] = {{"predicted", {d.predicted.first, d.predicted.second}}, {"achieved", {d.achieved.first, d.achieved.second}}};
    rep.body["defective"] = d.defective;
    rep.body["index"] = d.index;
    rep.body["holds"] = holds;
    rep.exit_code = holds ? 0 : 2;
    return rep;
}

inline RunReport verify_mult_cmd(const SystemSpec& spec, const RunFlags& flags) {
    RunReport rep;
    if (spec.univariate) {
        require_count(spec, 2, "verify-multiplicativity");
        auto ap = univariate_exponents(spec.polynomials[0]), app = univariate_exponents(spec.polynomials[1]);
        auto r = univariate_multiplicativity(ap, app, spec.polynomials[0].label, spec.polynomials[1].label);
        rep.body["E"] = r.extra.to_string();
        rep.body["holds"] = r.holds;
        rep.body["asserted"] = true;
        rep.exit_code = r.holds ? 0 : 2;
        return rep;
    }
    require_count(spec, 3, "verify-multiplicativity");
    LaurentPoly a = generic_polynomial(spec.polynomials[0]), b = generic_polynomial(spec.polynomials[1]),
                c = generic_polynomial(spec.polynomials[2]);
    MultiplicativityReport r = multiplicativity_check(a, b, c, options_of(flags));
    auto cases = nlohmann::json::array();
    for (const auto& e : r.cases)
        cases.push_back({{"eta", point_json(e.eta)},
                         {"mu", e.mu},
                         {"mu_prime", e.mu_p},
                         {"mu_second", e.mu_pp},
                         {"exponents", {e.exp_p, e.exp_pp}},
                         {"survivor", e.survivor}});
    rep.body["eta_cases"] = cases;
    rep.body["E"] = r.extra.to_string();
    rep.body["full"] = r.full;
    rep.body["asserted"] = r.full;
    rep.body["degrees_consistent"] = r.degrees_consistent;
    rep.body["points_checked"] = r.points_checked;
    rep.body["primes"] = r.primes;
    rep.body["sign"] = r.sign;
    rep.body["holds"] = r.holds;
    rep.exit_code = (r.full && !(r.holds && r.degrees_consistent)) ? 2 : 0;
    return rep;
}

inline RunReport univariate_cmd(const SystemSpec& spec) {
    RunReport rep;
    require_count(spec, 1, "univariate-disc");
    for (const auto& p : spec.polynomials[0].support)
        if (p.y != 0) throw InputError("univariate-disc: support must lie on the first axis");
    CoeffPoly d = univariate_discriminant(univariate_generic(spec.polynomials[0]));
    auto vals = explicit_values(spec);
    rep.body["delta"] = specialized_string(d, vals);
    rep.body["terms"] = d.size();
    return rep;
}

}  // namespace detail

// Exit codes: 0 success, 1 input or infeasibility error, 2 identity violated (verify commands).
inline RunReport run_command(const std::string& cmd, const SystemSpec& spec, const RunFlags& flags) {
    auto start = std::chrono::steady_clock::now();
    RunReport rep;
    try {
        if (std::find(command_names().begin(), command_names().end(), cmd) == command_names().end())
            throw InputError("unknown command \"" + cmd + "\"");
        if (flags.method != "auto" && flags.method != "ce" && flags.method != "macaulay")
            throw InputError("--method must be auto, ce or macaulay");
        detail::require_distinct_labels(spec);
        if (cmd == "support-info") rep.body = detail::support_info(spec);
        else if (cmd == "resultant") rep = detail::resultant_cmd(spec, flags);
        else if (cmd == "discriminant") rep = detail::discriminant_cmd(spec, flags);
        else if (cmd == "bidegree") rep = detail::bidegree_cmd(spec);
        else if (cmd == "verify-main-theorem") rep = detail::verify_main_cmd(spec, flags);
        else if (cmd == "verify-multiplicativity") rep = detail::verify_mult_cmd(spec, flags);
        else rep = detail::univariate_cmd(spec);
    } catch (const std::exception& e) {
        rep.body = nlohmann::json::object();
        rep.body["error"] = e.what();
        rep.exit_code = 1;
    }
    rep.body["command"] = cmd;
    rep.body["seed"] = flags.seed;
    if (flags.timing)
        rep.body["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

inline std::string render(const RunReport& rep, const RunFlags& flags) {
    if (!flags.text) return serialize_output(rep.body);
    std::string out;
    nlohmann::json body = rep.body;
    body["version"] = kFormatVersion;
    for (auto it = body.begin(); it != body.end(); ++it)
        out += it.key() + ": " + (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) + "\n";
    return out;
}

}  // namespace toricdisc
