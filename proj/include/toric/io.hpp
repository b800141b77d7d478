#pragma once

// JSON formats.
//
//   fan:       { "rank": n, "rays": [[int,...],...], "max_cones": [[i,...],...], "name": "..." }
//   vertices:  { "vertices": [["p/q",...],...], "negated": false }
//   H-polytope:{ "inequalities": [{ "normal": [int,...], "offset": "p/q" },...] }
//
// Exact values are always "p/q" strings (or "p"); floats appear only for
// quantities that are inherently inexact.

#include "catalog.hpp"
#include "futaki.hpp"
#include "monte_carlo.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace toric {

using json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json to_json(const Rat& r) { return r.str(); }

inline json to_json(const QVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline Rat rat_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    throw ParseError(where + ": expected a rational string \"p/q\" or an integer");
}

inline std::int64_t int_from_json(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
    return j.get<std::int64_t>();
}

inline const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

// Parses JSON text, reporting syntax errors with a line number.
inline json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1 + static_cast<std::size_t>(
                                   std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n'));
        throw ParseError(source + ":" + std::to_string(line) + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json to_json(const Fan& f) {
    json j;
    if (!f.name.empty()) j["name"] = f.name;
    j["rank"] = f.rank;
    j["rays"] = f.rays;
    json cones = json::array();
    for (const auto& c : f.max_cones) cones.push_back(c.rays);
    j["max_cones"] = cones;
    return j;
}

// Non-primitive rays are rejected, naming the offending index; nothing is normalized.
inline Fan fan_from_json(const json& j) {
    Fan f;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ParseError("name: expected a string");
        f.name = j["name"].get<std::string>();
    }
    const json& rank = field(j, "rank", "fan");
    if (!rank.is_number_unsigned() || rank.get<std::size_t>() == 0 || rank.get<std::size_t>() > kMaxRank)
        throw ParseError("rank: expected an integer between 1 and " + std::to_string(kMaxRank));
    f.rank = rank.get<std::size_t>();
    const json& rays = field(j, "rays", "fan");
    if (!rays.is_array()) throw ParseError("rays: expected an array");
    for (std::size_t i = 0; i < rays.size(); ++i) {
        const std::string where = "rays[" + std::to_string(i) + "]";
        if (!rays[i].is_array() || rays[i].size() != f.rank)
            throw ParseError(where + ": expected " + std::to_string(f.rank) + " integers");
        IVec v;
        for (std::size_t k = 0; k < f.rank; ++k) v.push_back(int_from_json(rays[i][k], where + "[" + std::to_string(k) + "]"));
        if (std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }) || !is_primitive(v))
            throw ParseError(where + ": ray " + std::to_string(i) + " is not primitive");
        f.rays.push_back(std::move(v));
    }
    const json& cones = field(j, "max_cones", "fan");
    if (!cones.is_array()) throw ParseError("max_cones: expected an array");
    for (std::size_t c = 0; c < cones.size(); ++c) {
        const std::string where = "max_cones[" + std::to_string(c) + "]";
        if (!cones[c].is_array() || cones[c].empty()) throw ParseError(where + ": expected a nonempty array");
        Cone cone;
        for (std::size_t k = 0; k < cones[c].size(); ++k) {
            const std::string w = where + "[" + std::to_string(k) + "]";
            if (!cones[c][k].is_number_unsigned()) throw ParseError(w + ": expected a ray index");
            auto idx = cones[c][k].get<std::size_t>();
            if (idx >= f.rays.size()) throw ParseError(w + ": ray index " + std::to_string(idx) + " out of range");
            cone.rays.push_back(idx);
        }
        f.max_cones.push_back(std::move(cone));
    }
    return f;
}

inline json vertices_to_json(const std::vector<QVec>& vs, bool negated = false) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(to_json(v));
    json j;
    j["vertices"] = a;
    if (negated) j["negated"] = true;
    return j;
}

struct VertexInput {
    std::vector<QVec> vertices;
    bool negated = false;  // true: the list is -P_{-K}
};

inline VertexInput vertices_from_json(const json& j) {
    VertexInput in;
    const json& vs = field(j, "vertices", "polytope");
    if (!vs.is_array() || vs.empty()) throw ParseError("vertices: expected a nonempty array");
    std::size_t dim = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string where = "vertices[" + std::to_string(i) + "]";
        if (!vs[i].is_array() || vs[i].empty()) throw ParseError(where + ": expected an array of rationals");
        if (i == 0) dim = vs[i].size();
        if (vs[i].size() != dim) throw ParseError(where + ": expected " + std::to_string(dim) + " coordinates");
        QVec v;
        for (std::size_t k = 0; k < dim; ++k) v.push_back(rat_from_json(vs[i][k], where + "[" + std::to_string(k) + "]"));
        in.vertices.push_back(std::move(v));
    }
    if (j.contains("negated")) {
        if (!j["negated"].is_boolean()) throw ParseError("negated: expected a boolean");
        in.negated = j["negated"].get<bool>();
    }
    return in;
}

inline json to_json(const Halfspace& h) {
    json j;
    j["normal"] = h.normal;
    j["offset"] = h.offset.str();
    return j;
}

inline json to_json(const HPolytope& p) {
    json a = json::array();
    for (const auto& h : p.inequalities) a.push_back(to_json(h));
    json j;
    j["inequalities"] = a;
    return j;
}

inline HPolytope hpolytope_from_json(const json& j) {
    HPolytope p;
    const json& ineqs = field(j, "inequalities", "polytope");
    if (!ineqs.is_array() || ineqs.empty()) throw ParseError("inequalities: expected a nonempty array");
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
        const std::string where = "inequalities[" + std::to_string(i) + "]";
        const json& n = field(ineqs[i], "normal", where);
        if (!n.is_array() || n.empty()) throw ParseError(where + ".normal: expected an integer array");
        if (i == 0) p.dim = n.size();
        if (n.size() != p.dim) throw ParseError(where + ".normal: expected " + std::to_string(p.dim) + " entries");
        Halfspace h;
        for (std::size_t k = 0; k < n.size(); ++k) h.normal.push_back(int_from_json(n[k], where + ".normal"));
        h.offset = rat_from_json(field(ineqs[i], "offset", where), where + ".offset");
        p.inequalities.push_back(std::move(h));
    }
    return p;
}

// Vertices plus facet inequalities of a hull.
inline json to_json(const VPolytope& p) {
    json j = vertices_to_json(p.vertices);
    j["inequalities"] = to_json(to_hpolytope(p))["inequalities"];
    return j;
}

inline json to_json(const ValidationReport& r) {
    json j;
    j["axioms_ok"] = r.axioms_ok;
    j["complete"] = r.complete;
    j["simplicial"] = r.simplicial;
    j["smooth"] = r.smooth;
    json v = json::array();
    for (const auto& f : r.violations) {
        json fj;
        fj["kind"] = to_string(f.kind);
        fj["cones"] = f.cones;
        fj["rays"] = f.rays;
        if (f.kind == FindingKind::SingularCone) fj["index"] = f.index.str();
        fj["detail"] = f.detail;
        v.push_back(fj);
    }
    j["violations"] = v;
    return j;
}

inline json to_json(const MomentData& m) {
    json j;
    j["volume"] = m.volume.str();
    j["first_moments"] = to_json(m.first_moments);
    j["barycentre"] = to_json(m.barycentre);
    return j;
}

inline json to_json(const FutakiReport& r) {
    json j;
    j["barycentre_a"] = to_json(r.barycentre_a);
    j["volume"] = r.volume.str();
    j["degree"] = r.degree.str();
    j["first_moments"] = to_json(r.first_moments);
    j["re_futaki_basis"] = r.re_futaki_basis;
    json fields = json::array();
    for (std::size_t i = 0; i < r.fields.size(); ++i) {
        json f;
        f["eta_re"] = to_json(r.fields[i].re);
        f["eta_im"] = to_json(r.fields[i].im);
        f["moment_factor"] = r.values[i].moment_factor.str();
        f["re_value"] = r.values[i].re_value;
        f["im_value"] = r.values[i].im_value;
        f["sign"] = r.values[i].sign;
        fields.push_back(f);
    }
    j["fields"] = fields;
    json conv;
    conv["polytope"] = "P_{-K} = conv{-k_sigma} = {u : <u, v_i> >= -1}; published vertex lists are -P_{-K}";
    conv["formula"] = "Re F(eta) = -(2 pi)^n * sum_s Re(eta^s) * integral_{P_{-K}} y_s dy";
    conv["scaling"] = "(2 pi c1)^n a_s read as (2 pi)^n * volume * a_s = (2 pi)^n * integral y_s dy";
    conv["imaginary_part"] = "0 on Lie(T): F(d/dtheta_s) = 0 for a compact-torus-invariant metric";
    conv["sign_law"] = "sign Re F(t_s d/dt_s) = -sign a_s";
    j["convention"] = conv;
    return j;
}

inline json to_json(const McEstimate& e) {
    json j;
    j["samples"] = e.samples;
    j["accepted"] = e.accepted;
    j["volume"] = e.volume;
    j["volume_stderr"] = e.volume_stderr;
    j["barycentre"] = e.barycentre;
    j["barycentre_stderr"] = e.barycentre_stderr;
    return j;
}

inline json to_json(const EmbeddingData& e) {
    json j;
    j["k"] = e.k.str();
    j["N"] = e.N;
    j["exponents"] = e.exponents;
    return j;
}

} // namespace toric
