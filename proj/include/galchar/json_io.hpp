#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "galchar/hopf.hpp"
#include "galchar/oracle.hpp"

namespace galchar {

using Json = nlohmann::ordered_json;

// ---- string forms -------------------------------------------------------

inline std::string rational_to_string(const Rational& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

// human-readable value: rational string, or a polynomial in z = zeta_E
inline std::string cyc_to_string(const CycNumber& v) {
    if (v.is_rational()) return rational_to_string(v.rational_value());
    std::string out;
    for (std::size_t i = 0; i < v.coeffs().size(); ++i) {
        if (v.coeffs()[i] == 0) continue;
        if (!out.empty()) out += " + ";
        out += "(" + rational_to_string(v.coeffs()[i]) + ")*z" + std::to_string(v.order()) + "^" +
               std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

inline std::string param_to_string(const PartitionFn& f) {
    std::string out = f.side == Side::Phi ? "phi{" : "theta{";
    bool first = true;
    for (const auto& [coset, lam] : f.support) {
        if (!first) out += ";";
        first = false;
        out += std::to_string(coset.level) + "." + std::to_string(coset.rep) + ":(";
        for (std::size_t i = 0; i < lam.parts.size(); ++i)
            out += (i ? "," : "") + std::to_string(lam.parts[i]);
        out += ")";
    }
    return out + "}";
}

// ---- JSON encodings ------------------------------------------------------

inline Json to_json(const Rational& r) { return rational_to_string(r); }

inline Json to_json(const CycNumber& v) {
    // canonicalize rational values to order 1 so equal numbers serialize equally
    if (v.is_rational())
        return Json{{"order", 1}, {"coeffs", Json::array({rational_to_string(v.rational_value())})}};
    Json coeffs = Json::array();
    for (const auto& c : v.coeffs()) coeffs.push_back(rational_to_string(c));
    return Json{{"order", v.order()}, {"coeffs", coeffs}};
}

inline CycNumber cyc_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
        throw invalid_input_error("cyc_from_json: expected {order, coeffs}");
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(rational_from_string(c.get<std::string>()));
    if (coeffs.empty()) coeffs.push_back(Rational(0));
    return CycNumber(j.at("order").get<std::int64_t>(), std::move(coeffs));
}

inline Json to_json(const CyclotomicCoset& c) {
    return Json{{"side", c.side == Side::Phi ? "phi" : "theta"},
                {"level", c.level},
                {"rep", c.rep}};
}

inline CyclotomicCoset coset_from_json(const Json& j, std::int64_t q) {
    std::string side = j.at("side").get<std::string>();
    if (side != "phi" && side != "theta")
        throw invalid_input_error("coset_from_json: side must be phi or theta");
    return frobenius_coset(q, j.at("level").get<int>(), j.at("rep").get<std::int64_t>(),
                           side == "phi" ? Side::Phi : Side::Theta);
}

inline Json to_json(const Partition& p) {
    Json out = Json::array();
    for (int part : p.parts) out.push_back(part);
    return out;
}

inline Partition partition_from_json(const Json& j) {
    std::vector<int> parts;
    for (const auto& part : j) parts.push_back(part.get<int>());
    return Partition(std::move(parts));
}

inline Json to_json(const PartitionFn& f) {
    Json out = Json::array();
    for (const auto& [coset, lam] : f.support)
        out.push_back(Json{{"coset", to_json(coset)}, {"partition", to_json(lam)}});
    return out;
}

inline PartitionFn param_from_json(const Json& j, Side side, std::int64_t q) {
    PartitionFn f;
    f.side = side;
    for (const auto& entry : j) {
        CyclotomicCoset c = coset_from_json(entry.at("coset"), q);
        if (c.side != side) throw invalid_input_error("param_from_json: coset on the wrong side");
        f.support.emplace(c, partition_from_json(entry.at("partition")));
    }
    return f;
}

inline Json to_json(const GaloisOrbit& o) {
    Json out = Json::array();
    for (const auto& m : o.members) out.push_back(to_json(m));
    return out;
}

inline Json to_json(const PowerLabel& l) {
    Json factors = Json::array();
    for (const auto& [i, coset] : l.factors)
        factors.push_back(Json{{"i", i}, {"coset", to_json(coset)}});
    return Json{{"type", "power"}, {"factors", factors}};
}

inline Json to_json(const BasisLabel& l) {
    if (std::holds_alternative<PowerLabel>(l)) return to_json(std::get<PowerLabel>(l));
    return Json{{"type", "param"}, {"param", to_json(std::get<PartitionFn>(l))}};
}

inline Json to_json(const SymElement& e) {
    Json out = Json::array(); // map iteration order is deterministic
    for (const auto& [label, c] : e.coeffs)
        out.push_back(Json{{"label", to_json(label)}, {"coeff", to_json(c)}});
    return out;
}

// ---- oracle table --------------------------------------------------------

inline constexpr int kOracleFormatVersion = 1;

inline Json to_json(const OracleTable& t) {
    Json class_sizes = Json::array();
    for (auto s : t.class_sizes) class_sizes.push_back(s);
    Json power_class = Json::array();
    for (const auto& row : t.power_class) {
        Json r = Json::array();
        for (auto c : row) r.push_back(c);
        power_class.push_back(std::move(r));
    }
    Json values = Json::array();
    for (const auto& row : t.char_values) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(to_json(v));
        values.push_back(std::move(r));
    }
    Json class_params = Json::array();
    for (const auto& p : t.class_params) class_params.push_back(to_json(p));
    Json char_params = Json::array();
    for (const auto& p : t.char_params) char_params.push_back(to_json(p));
    return Json{{"format_version", kOracleFormatVersion},
                {"n", t.n},
                {"q", t.q},
                {"group_order", t.group_order.str()},
                {"exponent", t.exponent},
                {"class_sizes", class_sizes},
                {"power_class", power_class},
                {"char_values", values},
                {"class_params", class_params},
                {"char_params", char_params}};
}

inline OracleTable oracle_table_from_json(const Json& j) {
    if (!j.contains("format_version") ||
        j.at("format_version").get<int>() != kOracleFormatVersion)
        throw invalid_input_error("oracle_table_from_json: unsupported format version");
    OracleTable t;
    t.n = j.at("n").get<int>();
    t.q = j.at("q").get<std::int64_t>();
    t.group_order = Int(j.at("group_order").get<std::string>());
    t.exponent = j.at("exponent").get<std::int64_t>();
    for (const auto& s : j.at("class_sizes")) t.class_sizes.push_back(s.get<std::int64_t>());
    for (const auto& row : j.at("power_class")) {
        std::vector<std::size_t> r;
        for (const auto& c : row) r.push_back(c.get<std::size_t>());
        t.power_class.push_back(std::move(r));
    }
    for (const auto& row : j.at("char_values")) {
        std::vector<CycNumber> r;
        for (const auto& v : row) r.push_back(cyc_from_json(v));
        t.char_values.push_back(std::move(r));
    }
    for (const auto& p : j.at("class_params"))
        t.class_params.push_back(param_from_json(p, Side::Phi, t.q));
    for (const auto& p : j.at("char_params"))
        t.char_params.push_back(param_from_json(p, Side::Theta, t.q));
    return t;
}

} // namespace galchar
