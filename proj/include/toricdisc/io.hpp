#pragma once

#include <gmpxx.h>

#include <json.hpp>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "coeff.hpp"
#include "lattice.hpp"

namespace toricdisc {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kFormatVersion = "toric-disc/1";

struct PolySpec {
    int label = 1;
    std::vector<LatticePoint> support;
    bool symbolic = true;
    std::map<LatticePoint, mpq_class> coefficients;  // explicit mode only; absent keys are zero

    bool operator==(const PolySpec& o) const {
        return label == o.label && support == o.support && symbolic == o.symbolic && coefficients == o.coefficients;
    }
};

struct SystemSpec {
    std::vector<PolySpec> polynomials;
    bool univariate = false;

    bool operator==(const SystemSpec&) const = default;
};

inline mpq_class parse_rational(const std::string& text, const std::string& where) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    auto ok = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto slash = t.find('/');
    std::string num = t.substr(0, slash), den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!ok(num) || !ok(den) || (!den.empty() && den[0] == '-')) throw InputError(where + ": not an integer or rational: \"" + text + "\"");
    if (num[0] == '+') num = num.substr(1);
    mpz_class n{num}, d{den};
    if (d == 0) throw InputError(where + ": zero denominator");
    mpq_class q{n, d};
    q.canonicalize();
    return q;
}

inline std::string rational_string(const mpq_class& q) { return q.get_str(); }

inline LatticePoint parse_exponent(const nlohmann::json& j, const std::string& where, bool univariate) {
    if (!j.is_array() || j.empty() || j.size() > 2) throw InputError(where + ": exponent must be [e1,e2]");
    for (const auto& e : j)
        if (!e.is_number_integer()) throw InputError(where + ": exponent entries must be integers");
    if (j.size() == 1 && !univariate) throw InputError(where + ": exponent must be [e1,e2]");
    LatticePoint p{j[0].get<std::int64_t>(), j.size() == 2 ? j[1].get<std::int64_t>() : 0};
    if (univariate && p.y != 0) throw InputError(where + ": univariate exponents must have second entry 0");
    return p;
}

inline SystemSpec parse_system(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("top level: expected an object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "polynomials" && it.key() != "univariate") throw InputError("top level: unknown field \"" + it.key() + "\"");
    SystemSpec spec;
    if (doc.contains("univariate")) {
        if (!doc["univariate"].is_boolean()) throw InputError("univariate: expected a boolean");
        spec.univariate = doc["univariate"].get<bool>();
    }
    if (!doc.contains("polynomials") || !doc["polynomials"].is_array()) throw InputError("polynomials: expected an array");
    std::size_t idx = 0;
    for (const auto& pj : doc["polynomials"]) {
        std::string where = "polynomials[" + std::to_string(idx++) + "]";
        if (!pj.is_object()) throw InputError(where + ": expected an object");
        for (auto it = pj.begin(); it != pj.end(); ++it)
            if (it.key() != "label" && it.key() != "support" && it.key() != "coefficients")
                throw InputError(where + ": unknown field \"" + it.key() + "\"");
        PolySpec ps;
        if (!pj.contains("label") || !pj["label"].is_number_integer()) throw InputError(where + ".label: expected an integer");
        ps.label = pj["label"].get<int>();
        if (ps.label < -127 || ps.label > 120) throw InputError(where + ".label: out of range");
        if (!pj.contains("support") || !pj["support"].is_array() || pj["support"].empty())
            throw InputError(where + ".support: expected a nonempty array");
        std::size_t k = 0;
        for (const auto& ej : pj["support"]) {
            LatticePoint p = parse_exponent(ej, where + ".support[" + std::to_string(k++) + "]", spec.univariate);
            if (std::find(ps.support.begin(), ps.support.end(), p) != ps.support.end())
                throw InputError(where + ".support: duplicate support point [" + std::to_string(p.x) + "," + std::to_string(p.y) + "]");
            if (std::abs(p.x) > 2000 || std::abs(p.y) > 2000) throw InputError(where + ".support: exponent out of range");
            ps.support.push_back(p);
        }
        if (!pj.contains("coefficients")) throw InputError(where + ".coefficients: missing");
        const auto& cj = pj["coefficients"];
        if (cj.is_string()) {
            if (cj.get<std::string>() != "symbolic") throw InputError(where + ".coefficients: expected \"symbolic\" or an object");
        } else if (cj.is_object()) {
            ps.symbolic = false;
            for (auto it = cj.begin(); it != cj.end(); ++it) {
                std::string kw = where + ".coefficients[\"" + it.key() + "\"]";
                nlohmann::json key;
                try {
                    key = nlohmann::json::parse(it.key());
                } catch (const nlohmann::json::parse_error&) {
                    throw InputError(kw + ": key must look like \"[e1,e2]\"");
                }
                LatticePoint p = parse_exponent(key, kw, spec.univariate);
                if (std::find(ps.support.begin(), ps.support.end(), p) == ps.support.end())
                    throw InputError(kw + ": exponent outside declared support");
                if (!it.value().is_string()) throw InputError(kw + ": coefficient must be a decimal string");
                mpq_class q = parse_rational(it.value().get<std::string>(), kw);
                if (q != 0) ps.coefficients[p] = q;
            }
        } else {
            throw InputError(where + ".coefficients: expected \"symbolic\" or an object");
        }
        spec.polynomials.push_back(std::move(ps));
    }
    if (spec.polynomials.empty()) throw InputError("polynomials: at least one polynomial is required");
    return spec;
}

inline nlohmann::json to_json(const SystemSpec& spec) {
    nlohmann::json doc;
    doc["polynomials"] = nlohmann::json::array();
    for (const auto& ps : spec.polynomials) {
        nlohmann::json pj;
        pj["label"] = ps.label;
        pj["support"] = nlohmann::json::array();
        for (const auto& p : ps.support) pj["support"].push_back({p.x, p.y});
        if (ps.symbolic) {
            pj["coefficients"] = "symbolic";
        } else {
            pj["coefficients"] = nlohmann::json::object();
            for (const auto& [p, q] : ps.coefficients)
                pj["coefficients"]["[" + std::to_string(p.x) + "," + std::to_string(p.y) + "]"] = rational_string(q);
        }
        doc["polynomials"].push_back(pj);
    }
    if (spec.univariate) doc["univariate"] = true;
    return doc;
}

inline std::string serialize_system(const SystemSpec& spec) { return to_json(spec).dump(); }

// Generic polynomial on the declared support.
inline LaurentPoly generic_polynomial(const PolySpec& ps) { return LaurentPoly::symbolic(SupportConfig(ps.label, ps.support)); }

// Values of the generic symbols of explicit polynomials.
inline std::map<Symbol, mpq_class> explicit_values(const SystemSpec& spec) {
    std::map<Symbol, mpq_class> vals;
    for (const auto& ps : spec.polynomials) {
        if (ps.symbolic) continue;
        for (const auto& p : ps.support) {
            auto it = ps.coefficients.find(p);
            vals[{ps.label, p.x, p.y}] = it == ps.coefficients.end() ? mpq_class(0) : it->second;
        }
    }
    return vals;
}

// Canonical text of a polynomial after substituting explicit values.
inline std::string specialized_string(const CoeffPoly& p, const std::map<Symbol, mpq_class>& vals) {
    if (vals.empty()) return p.to_string();
    auto [num, den] = p.partial_evaluate(vals);
    if (den == 1) return num.to_string();
    if (num.is_constant()) {
        mpq_class q(num.constant_value(), den);
        q.canonicalize();
        return q.get_str();
    }
    return "(" + num.to_string() + ")/" + den.get_str();
}

inline std::string serialize_output(nlohmann::json report) {
    report["version"] = kFormatVersion;
    return report.dump(2) + "\n";
}

}  // namespace toricdisc
