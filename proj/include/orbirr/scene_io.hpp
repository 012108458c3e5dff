// Scene file parsing and serialization. Rationals travel as "p/q" strings
// (or JSON integers); floats are rejected so exactness survives the trip.
// Unknown keys are rejected against the schema in docs/scene_schema.json.
#pragma once

#include "orbirr/analysis.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace orbirr::io {

using nlohmann::json;

namespace detail {

inline void expect_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": expected an object");
}

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                                const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw SchemaError(where + ": unknown key '" + key + "'");
    }
}

inline const json& require(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(where + ": missing key '" + std::string(key) + "'");
    return *it;
}

inline Rational parse_rational_value(const json& j, const std::string& where) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float())
        throw SchemaError(where + ": floating-point values are rejected; write rationals as \"p/q\"");
    throw SchemaError(where + ": expected a rational (\"p/q\" string or integer)");
}

inline long long parse_integer(const json& j, const std::string& where) {
    if (j.is_number_integer()) return j.get<long long>();
    throw SchemaError(where + ": expected an integer");
}

inline unsigned parse_positive(const json& j, const std::string& where) {
    const long long v = parse_integer(j, where);
    if (v < 1) throw SchemaError(where + ": expected a positive integer");
    return static_cast<unsigned>(v);
}

inline Cyclotomic parse_character(const json& j, const std::string& where) {
    expect_object(j, where);
    reject_unknown_keys(j, {"order", "power", "coeffs"}, where);
    const unsigned order = parse_positive(require(j, "order", where), where + ".order");
    if (j.contains("power")) {
        if (j.contains("coeffs")) throw SchemaError(where + ": give either 'power' or 'coeffs', not both");
        return Cyclotomic::root_of_unity(order, parse_integer(j["power"], where + ".power"));
    }
    const json& coeffs = require(j, "coeffs", where);
    if (!coeffs.is_array()) throw SchemaError(where + ".coeffs: expected an array");
    std::vector<Rational> c;
    for (const auto& x : coeffs) c.push_back(parse_rational_value(x, where + ".coeffs[]"));
    return Cyclotomic::from_coefficients(order, std::move(c));
}

inline json character_to_json(const Cyclotomic& c) {
    json j;
    j["order"] = c.order();
    json coeffs = json::array();
    for (const auto& x : c.coefficients()) coeffs.push_back(to_string(x));
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline std::vector<Rational> parse_rational_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": expected an array");
    std::vector<Rational> v;
    for (const auto& x : j) v.push_back(parse_rational_value(x, where + "[]"));
    return v;
}

inline Sector parse_sector(const json& j, const std::string& where) {
    expect_object(j, where);
    reject_unknown_keys(j,
                        {"label", "dim", "fundamental_degree", "prefactor", "group_order", "tangent_plus",
                         "tangent_minus", "normals", "bundle", "twist_m_coeff", "twist_q_coeff"},
                        where);
    Sector s;
    if (j.contains("label")) s.label = j["label"].get<std::string>();
    s.dim = static_cast<int>(parse_integer(require(j, "dim", where), where + ".dim"));
    s.fundamental_degree = parse_rational_value(require(j, "fundamental_degree", where), where + ".fundamental_degree");
    s.prefactor = parse_rational_value(require(j, "prefactor", where), where + ".prefactor");
    if (j.contains("group_order")) s.group_order = parse_positive(j["group_order"], where + ".group_order");
    if (j.contains("tangent_plus")) s.tangent_plus = parse_rational_array(j["tangent_plus"], where + ".tangent_plus");
    if (j.contains("tangent_minus"))
        s.tangent_minus = parse_rational_array(j["tangent_minus"], where + ".tangent_minus");
    if (j.contains("normals")) {
        if (!j["normals"].is_array()) throw SchemaError(where + ".normals: expected an array");
        for (const auto& n : j["normals"]) {
            expect_object(n, where + ".normals[]");
            reject_unknown_keys(n, {"c1_coeff", "theta"}, where + ".normals[]");
            s.normals.push_back({parse_rational_value(require(n, "c1_coeff", where), where + ".normals[].c1_coeff"),
                                 parse_rational_value(require(n, "theta", where), where + ".normals[].theta")});
        }
    }
    if (j.contains("bundle")) {
        if (!j["bundle"].is_array()) throw SchemaError(where + ".bundle: expected an array");
        for (const auto& b : j["bundle"]) {
            expect_object(b, where + ".bundle[]");
            reject_unknown_keys(b, {"c1_coeff", "character", "m_weight"}, where + ".bundle[]");
            FiberPiece piece;
            piece.c1_coeff = parse_rational_value(require(b, "c1_coeff", where), where + ".bundle[].c1_coeff");
            if (b.contains("character")) piece.character = parse_character(b["character"], where + ".bundle[].character");
            if (b.contains("m_weight"))
                piece.character_m_weight = static_cast<int>(parse_integer(b["m_weight"], where + ".bundle[].m_weight"));
            s.bundle.push_back(std::move(piece));
        }
    }
    if (j.contains("twist_m_coeff"))
        s.twist_m_coeff = parse_rational_value(j["twist_m_coeff"], where + ".twist_m_coeff");
    if (j.contains("twist_q_coeff"))
        s.twist_q_coeff = parse_rational_value(j["twist_q_coeff"], where + ".twist_q_coeff");
    return s;
}

inline json sector_to_json(const Sector& s) {
    json j;
    j["label"] = s.label;
    j["dim"] = s.dim;
    j["fundamental_degree"] = to_string(s.fundamental_degree);
    j["prefactor"] = to_string(s.prefactor);
    j["group_order"] = s.group_order;
    json tp = json::array(), tm = json::array();
    for (const auto& r : s.tangent_plus) tp.push_back(to_string(r));
    for (const auto& r : s.tangent_minus) tm.push_back(to_string(r));
    j["tangent_plus"] = std::move(tp);
    j["tangent_minus"] = std::move(tm);
    json normals = json::array();
    for (const auto& n : s.normals)
        normals.push_back({{"c1_coeff", to_string(n.c1_coeff)}, {"theta", to_string(n.theta)}});
    j["normals"] = std::move(normals);
    json bundle = json::array();
    for (const auto& p : s.bundle)
        bundle.push_back({{"c1_coeff", to_string(p.c1_coeff)},
                          {"character", character_to_json(p.character)},
                          {"m_weight", p.character_m_weight}});
    j["bundle"] = std::move(bundle);
    j["twist_m_coeff"] = to_string(s.twist_m_coeff);
    j["twist_q_coeff"] = to_string(s.twist_q_coeff);
    return j;
}

inline QuasiPoly parse_multiplicity(const json& j, const std::string& where) {
    expect_object(j, where);
    reject_unknown_keys(j, {"period", "branches"}, where);
    const unsigned period = parse_positive(require(j, "period", where), where + ".period");
    const json& branches = require(j, "branches", where);
    if (!branches.is_array() || branches.size() != period)
        throw SchemaError(where + ".branches: expected one branch per residue");
    std::vector<TwistPoly> bs;
    for (const auto& branch : branches) {
        if (!branch.is_array()) throw SchemaError(where + ".branches[]: expected an array of terms");
        TwistPoly poly;
        for (const auto& term : branch) {
            expect_object(term, where + ".branches[][]");
            reject_unknown_keys(term, {"m", "q", "coeff"}, where + ".branches[][]");
            const int dm = static_cast<int>(parse_integer(require(term, "m", where), where + ".m"));
            const int dq = static_cast<int>(parse_integer(require(term, "q", where), where + ".q"));
            poly.add_term({dm, dq}, Cyclotomic(parse_rational_value(require(term, "coeff", where), where + ".coeff")));
        }
        bs.push_back(std::move(poly));
    }
    return QuasiPoly(period, std::move(bs));
}

inline std::vector<ConePoint> parse_cones(const json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": expected an array");
    std::vector<ConePoint> cones;
    for (const auto& c : j) {
        expect_object(c, where + "[]");
        reject_unknown_keys(c, {"order", "label"}, where + "[]");
        ConePoint cp;
        cp.order = parse_positive(require(c, "order", where), where + "[].order");
        if (c.contains("label")) cp.label = c["label"].get<std::string>();
        cones.push_back(std::move(cp));
    }
    return cones;
}

}  // namespace detail

/// Serializes a chi value; coefficients must be rational (the engine
/// guarantees this for self-conjugate presentations).
inline json chi_to_json(const QuasiPoly& chi) {
    json j;
    j["period"] = chi.period();
    json branches = json::array();
    for (unsigned r = 0; r < chi.period(); ++r) {
        json terms = json::array();
        for (const auto& [e, c] : chi.branches()[r].terms())
            terms.push_back({{"m", e.m}, {"q", e.q}, {"coeff", to_string(c.rational_part())}});
        branches.push_back({{"residue", r}, {"terms", std::move(terms)}});
    }
    j["branches"] = std::move(branches);
    return j;
}

/// Raw (possibly cyclotomic) rendering for --sector-raw diagnostics.
inline json chi_to_json_raw(const QuasiPoly& chi) {
    json j;
    j["period"] = chi.period();
    json branches = json::array();
    for (unsigned r = 0; r < chi.period(); ++r) {
        json terms = json::array();
        for (const auto& [e, c] : chi.branches()[r].terms()) {
            json coeffs = json::array();
            for (const auto& x : c.coefficients()) coeffs.push_back(to_string(x));
            terms.push_back({{"m", e.m}, {"q", e.q}, {"order", c.order()}, {"coeffs", std::move(coeffs)}});
        }
        branches.push_back({{"residue", r}, {"terms", std::move(terms)}});
    }
    j["branches"] = std::move(branches);
    return j;
}

/// Exact dump of a scene as a kind="custom" document; parsing it back
/// reproduces the presentation bit for bit.
inline json scene_to_json(const Scene& scene) {
    json j;
    j["name"] = scene.name;
    j["kind"] = "custom";
    j["ambient_dim"] = scene.presentation.ambient_dim;
    j["generic_stab"] = scene.presentation.generic_stab;
    j["self_conjugate"] = scene.presentation.self_conjugate;
    json sectors = json::array();
    for (const auto& s : scene.presentation.sectors) sectors.push_back(detail::sector_to_json(s));
    j["sectors"] = std::move(sectors);
    if (!(scene.multiplicity == QuasiPoly::constant(Rational(1)))) {
        json mult;
        mult["period"] = scene.multiplicity.period();
        json branches = json::array();
        for (const auto& b : scene.multiplicity.branches()) {
            json terms = json::array();
            for (const auto& [e, c] : b.terms())
                terms.push_back({{"m", e.m}, {"q", e.q}, {"coeff", to_string(c.rational_part())}});
            branches.push_back(std::move(terms));
        }
        mult["branches"] = std::move(branches);
        j["multiplicity"] = std::move(mult);
    }
    if (scene.curve) {
        json curve;
        curve["genus"] = scene.curve->genus;
        json cones = json::array();
        for (const auto& c : scene.curve->cones) cones.push_back({{"order", c.order}, {"label", c.label}});
        curve["cones"] = std::move(cones);
        curve["ample_degree"] = to_string(scene.curve->ample_degree);
        curve["jet_order"] = scene.curve->jet_order;
        j["curve"] = std::move(curve);
    }
    return j;
}

/// Parses a scene document of any kind; schema-validated, unknown keys
/// rejected.
inline Scene parse_scene(const json& j) {
    detail::expect_object(j, "scene");
    detail::reject_unknown_keys(j,
                                {"name", "kind", "parameters", "bundle", "sectors", "ambient_dim", "generic_stab",
                                 "self_conjugate", "multiplicity", "curve"},
                                "scene");
    const std::string kind = detail::require(j, "kind", "scene").get<std::string>();
    const std::string name = j.contains("name") ? j["name"].get<std::string>() : std::string("scene");

    auto params = [&]() -> const json& { return detail::require(j, "parameters", "scene"); };

    Scene scene;
    if (kind == "projective_space") {
        detail::reject_unknown_keys(params(), {"n", "k"}, "parameters");
        scene = projective_space(static_cast<int>(detail::parse_integer(detail::require(params(), "n", "parameters"), "parameters.n")),
                                 detail::parse_integer(detail::require(params(), "k", "parameters"), "parameters.k"));
    } else if (kind == "hypersurface") {
        detail::reject_unknown_keys(params(), {"n", "d", "m"}, "parameters");
        scene = hypersurface(static_cast<int>(detail::parse_integer(detail::require(params(), "n", "parameters"), "parameters.n")),
                             detail::parse_integer(detail::require(params(), "d", "parameters"), "parameters.d"),
                             detail::parse_integer(detail::require(params(), "m", "parameters"), "parameters.m"));
    } else if (kind == "cyclic_quotient_p1") {
        detail::reject_unknown_keys(params(), {"order", "weights", "linearization", "k", "stride"}, "parameters");
        const json& w = detail::require(params(), "weights", "parameters");
        if (!w.is_array() || w.size() != 2) throw SchemaError("parameters.weights: expected [w0, w1]");
        unsigned stride = 1;
        if (params().contains("stride")) stride = detail::parse_positive(params()["stride"], "parameters.stride");
        scene = cyclic_quotient_p1(detail::parse_positive(detail::require(params(), "order", "parameters"), "parameters.order"),
                                   detail::parse_integer(w[0], "parameters.weights[0]"),
                                   detail::parse_integer(w[1], "parameters.weights[1]"),
                                   detail::parse_integer(detail::require(params(), "linearization", "parameters"), "parameters.linearization"),
                                   detail::parse_integer(detail::require(params(), "k", "parameters"), "parameters.k"),
                                   stride);
    } else if (kind == "orbifold_curve") {
        detail::reject_unknown_keys(params(), {"genus", "cones", "ample_degree"}, "parameters");
        const int genus = static_cast<int>(detail::parse_integer(detail::require(params(), "genus", "parameters"), "parameters.genus"));
        const std::vector<ConePoint> cones = detail::parse_cones(detail::require(params(), "cones", "parameters"), "parameters.cones");
        Rational ample = 1;
        if (params().contains("ample_degree"))
            ample = detail::parse_rational_value(params()["ample_degree"], "parameters.ample_degree");

        const json& bundle = detail::require(j, "bundle", "scene");
        detail::expect_object(bundle, "bundle");
        const std::string bkind = detail::require(bundle, "kind", "bundle").get<std::string>();
        if (bkind == "line") {
            detail::reject_unknown_keys(bundle, {"kind", "coeff", "isotropy_weights"}, "bundle");
            const Rational coeff = detail::parse_rational_value(detail::require(bundle, "coeff", "bundle"), "bundle.coeff");
            std::vector<int> weights;
            if (bundle.contains("isotropy_weights"))
                for (const auto& x : bundle["isotropy_weights"])
                    weights.push_back(static_cast<int>(detail::parse_integer(x, "bundle.isotropy_weights[]")));
            scene = orbifold_curve(genus, cones, coeff, weights, ample);
        } else if (bkind == "gg_jet") {
            detail::reject_unknown_keys(bundle, {"kind", "k"}, "bundle");
            scene = gg_jet_scene(detail::parse_positive(detail::require(bundle, "k", "bundle"), "bundle.k"), genus,
                                 cones, ample);
        } else {
            throw SchemaError("bundle.kind: expected 'line' or 'gg_jet'");
        }
    } else if (kind == "custom") {
        scene.presentation.ambient_dim =
            static_cast<int>(detail::parse_integer(detail::require(j, "ambient_dim", "scene"), "scene.ambient_dim"));
        if (j.contains("generic_stab"))
            scene.presentation.generic_stab = detail::parse_positive(j["generic_stab"], "scene.generic_stab");
        if (j.contains("self_conjugate")) {
            if (!j["self_conjugate"].is_boolean()) throw SchemaError("scene.self_conjugate: expected a boolean");
            scene.presentation.self_conjugate = j["self_conjugate"].get<bool>();
        }
        const json& sectors = detail::require(j, "sectors", "scene");
        if (!sectors.is_array()) throw SchemaError("scene.sectors: expected an array");
        for (const auto& s : sectors) scene.presentation.sectors.push_back(detail::parse_sector(s, "sectors[]"));
        if (j.contains("multiplicity"))
            scene.multiplicity = detail::parse_multiplicity(j["multiplicity"], "scene.multiplicity");
        if (j.contains("curve")) {
            const json& curve = j["curve"];
            detail::expect_object(curve, "scene.curve");
            detail::reject_unknown_keys(curve, {"genus", "cones", "ample_degree", "jet_order"}, "scene.curve");
            CurveData cd;
            cd.genus = static_cast<int>(detail::parse_integer(detail::require(curve, "genus", "curve"), "curve.genus"));
            cd.cones = detail::parse_cones(detail::require(curve, "cones", "curve"), "curve.cones");
            cd.ample_degree = detail::parse_rational_value(detail::require(curve, "ample_degree", "curve"), "curve.ample_degree");
            if (curve.contains("jet_order"))
                cd.jet_order = static_cast<unsigned>(detail::parse_integer(curve["jet_order"], "curve.jet_order"));
            scene.curve = std::move(cd);
        }
    } else {
        throw SchemaError("scene.kind: unknown kind '" + kind + "'");
    }

    scene.name = name;
    scene.presentation.name = name;
    validate(scene.presentation);
    return scene;
}

inline Scene load_scene_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open scene file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SchemaError("invalid JSON in " + path + ": " + e.what());
    }
    return parse_scene(j);
}

}  // namespace orbirr::io
