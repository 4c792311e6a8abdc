#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "subex/common.hpp"
#include "subex/expectation.hpp"
#include "subex/polygon.hpp"
#include "subex/shapes.hpp"
#include "subex/support_field.hpp"

namespace subex {

using Json = nlohmann::ordered_json;

// ---- shapes ----

inline ConvexShape shape_from_json(const Json& j) {
    require(j.is_object() && j.contains("type"), "shape JSON needs a type field");
    std::string type = j.at("type").get<std::string>();
    if (type == "polygon") {
        std::vector<Vec2> verts;
        for (const auto& v : j.at("vertices"))
            verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        return ConvexShape::polygon(std::move(verts));
    }
    if (type == "ball")
        return ConvexShape::ball(j.at("center").get<std::vector<double>>(),
                                 j.at("radius").get<double>());
    if (type == "box")
        return ConvexShape::box(j.at("center").get<std::vector<double>>(),
                                j.at("half_widths").get<std::vector<double>>());
    if (type == "l1ball")
        return ConvexShape::l1ball(j.at("center").get<std::vector<double>>(),
                                   j.at("radius").get<double>());
    if (type == "ellipse") {
        const auto& c = j.at("center");
        const auto& m = j.at("matrix");
        return ConvexShape::ellipse({c.at(0).get<double>(), c.at(1).get<double>()},
                                    m.at(0).at(0).get<double>(), m.at(0).at(1).get<double>(),
                                    m.at(1).at(1).get<double>());
    }
    throw std::invalid_argument("unknown shape type: " + type);
}

inline Json shape_to_json(const ConvexShape& K) {
    Json j;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, shape::Polygon>) {
                j["type"] = "polygon";
                Json verts = Json::array();
                for (Vec2 v : s.vertices) verts.push_back({v.x, v.y});
                j["vertices"] = std::move(verts);
            } else if constexpr (std::is_same_v<T, shape::Box>) {
                j["type"] = "box";
                j["center"] = s.center;
                j["half_widths"] = s.half_widths;
            } else if constexpr (std::is_same_v<T, shape::Ball>) {
                j["type"] = "ball";
                j["center"] = s.center;
                j["radius"] = s.radius;
            } else if constexpr (std::is_same_v<T, shape::Ellipse>) {
                j["type"] = "ellipse";
                j["center"] = {s.center.x, s.center.y};
                j["matrix"] = {{s.mxx, s.mxy}, {s.mxy, s.myy}};
            } else {
                j["type"] = "l1ball";
                j["center"] = s.center;
                j["radius"] = s.radius;
            }
        },
        K.raw());
    return j;
}

// ---- samples ----

inline WeightedSample sample_from_json(const Json& j) {
    require(j.is_object() && j.contains("points"), "sample JSON needs a points field");
    std::vector<std::vector<double>> pts;
    for (const auto& p : j.at("points")) pts.push_back(p.get<std::vector<double>>());
    if (j.contains("weights"))
        return WeightedSample(std::move(pts), j.at("weights").get<std::vector<double>>());
    return WeightedSample(std::move(pts));
}

inline Json sample_to_json(const WeightedSample& mu) {
    Json j;
    Json pts = Json::array();
    for (const auto& p : mu.points) pts.push_back(p);
    j["points"] = std::move(pts);
    j["weights"] = mu.weights;
    return j;
}

// ---- expectation specs ----

inline SpectralMeasure spectral_measure_from_json(const Json& j) {
    SpectralMeasure nu;
    if (j.contains("atoms"))
        for (const auto& a : j.at("atoms"))
            nu.atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
    if (j.contains("density"))
        for (const auto& p : j.at("density")) {
            SpectralMeasure::DensityPiece piece;
            piece.lo = p.at(0).get<double>();
            piece.hi = p.at(1).get<double>();
            for (size_t i = 2; i < p.size(); ++i) piece.coeffs.push_back(p.at(i).get<double>());
            nu.pieces.push_back(std::move(piece));
        }
    nu.validate();
    return nu;
}

inline Json spectral_measure_to_json(const SpectralMeasure& nu) {
    Json j;
    Json atoms = Json::array();
    for (const auto& a : nu.atoms) atoms.push_back({a.alpha, a.mass});
    j["atoms"] = std::move(atoms);
    Json pieces = Json::array();
    for (const auto& p : nu.pieces) {
        Json row = Json::array();
        row.push_back(p.lo);
        row.push_back(p.hi);
        for (double c : p.coeffs) row.push_back(c);
        pieces.push_back(std::move(row));
    }
    j["density"] = std::move(pieces);
    return j;
}

inline ExpectationSpec spec_from_json(const Json& j) {
    require(j.is_object() && j.contains("type"), "spec JSON needs a type field");
    std::string type = j.at("type").get<std::string>();
    if (type == "mean") return ExpectationSpec::mean();
    if (type == "ess_sup") return ExpectationSpec::ess_sup();
    if (type == "avg_quantile") return ExpectationSpec::avg_quantile(j.at("alpha").get<double>());
    if (type == "spectral") return ExpectationSpec::spectral(spectral_measure_from_json(j));
    if (type == "one_sided")
        return ExpectationSpec::one_sided(j.at("p").get<double>(), j.at("a").get<double>());
    if (type == "expectile") return ExpectationSpec::expectile(j.at("tau").get<double>());
    if (type == "max_ext")
        return ExpectationSpec::max_ext(spec_from_json(j.at("base")), j.at("m").get<long>());
    throw std::invalid_argument("unknown expectation type: " + type);
}

inline Json spec_to_json(const ExpectationSpec& spec) {
    Json j;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, espec::Mean>) j["type"] = "mean";
            else if constexpr (std::is_same_v<T, espec::AvgQuantile>) {
                j["type"] = "avg_quantile";
                j["alpha"] = s.alpha;
            } else if constexpr (std::is_same_v<T, espec::Spectral>) {
                j = spectral_measure_to_json(s.nu);
                Json out;
                out["type"] = "spectral";
                for (auto& [k, v] : j.items()) out[k] = v;
                j = std::move(out);
            } else if constexpr (std::is_same_v<T, espec::OneSidedMoment>) {
                j["type"] = "one_sided";
                j["p"] = s.p;
                j["a"] = s.a;
            } else if constexpr (std::is_same_v<T, espec::Expectile>) {
                j["type"] = "expectile";
                j["tau"] = s.tau;
            } else if constexpr (std::is_same_v<T, espec::MaxExt>) {
                j["type"] = "max_ext";
                j["base"] = spec_to_json(*s.base);
                j["m"] = s.m;
            } else {
                j["type"] = "ess_sup";
            }
        },
        spec.v);
    return j;
}

// ---- bodies ----

inline Json body_to_json(const BodyEstimate& body, const SupportField* field = nullptr) {
    Json j;
    if (body.unbounded) {
        j["unbounded"] = true;
        return j;
    }
    if (body.outer.is_empty()) {
        j["empty"] = true;
        return j;
    }
    Json verts = Json::array();
    for (Vec2 v : body.outer.vertices()) verts.push_back({v.x, v.y});
    j["vertices"] = std::move(verts);
    if (field != nullptr) {
        Json sup;
        sup["angles"] = field->grid.angles;
        sup["values"] = field->values;
        j["support"] = std::move(sup);
    }
    j["gap"] = body.gap;
    return j;
}

inline Json polygon_to_json(const Polygon2& poly) {
    Json j;
    if (poly.is_empty()) {
        j["empty"] = true;
        return j;
    }
    Json verts = Json::array();
    for (Vec2 v : poly.vertices()) verts.push_back({v.x, v.y});
    j["vertices"] = std::move(verts);
    return j;
}

// ---- verification reports ----

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double tolerance = 0.0;
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    Json params = Json::object();
    std::vector<Check> checks;

    void add(const std::string& name, double value, double tolerance) {
        checks.push_back({name, value <= tolerance, value, tolerance});
    }
    void add_bool(const std::string& name, bool pass) {
        checks.push_back({name, pass, pass ? 0.0 : 1.0, 0.5});
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline Json report_to_json(const Report& r) {
    Json j;
    j["suite"] = r.suite;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["value"] = c.value;
        cj["tolerance"] = c.tolerance;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    j["seed"] = r.seed;
    j["params"] = r.params;
    return j;
}

}  // namespace subex
