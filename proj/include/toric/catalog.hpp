#pragma once

// Built-in fans and polytopes: standard smooth controls and the three toric
// degenerations X1, X2, X3 of V38 (the blow-up of P3 along a twisted cubic).
//
// Published data is stored verbatim, typos included. Where the published cone
// list is inconsistent with the published vertex list, the usable fan is
// rebuilt by reconcile_fan() and tagged Provenance::Derived.

#include "fano.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toric {

enum class Provenance { Standard, Printed, Derived };

inline const char* to_string(Provenance p) {
    switch (p) {
    case Provenance::Standard: return "standard";
    case Provenance::Printed: return "printed";
    case Provenance::Derived: return "derived";
    }
    return "unknown";
}

struct CatalogEntry {
    std::string name;
    std::string description;
    std::optional<Fan> printed_fan;
    std::optional<Fan> fan;  // fan used for computations
    Provenance fan_provenance = Provenance::Standard;
    std::optional<std::vector<QVec>> printed_vertices;  // published list, = -P_{-K} = conv{k_sigma}
    std::optional<QVec> printed_barycentre;             // published value for conv(printed_vertices)
    std::vector<std::string> notes;

    // P_{-K} from the published vertex list (negated into internal orientation).
    VPolytope polytope_from_vertices() const {
        std::vector<QVec> pts;
        for (const auto& v : printed_vertices.value()) pts.push_back(-v);
        return convex_hull(pts);
    }
};

namespace detail {

inline QVec qv(std::initializer_list<long long> xs) {
    QVec v;
    for (auto x : xs) v.emplace_back(x);
    return v;
}

inline Fan make_fan(std::string name, std::size_t rank, std::vector<IVec> rays,
                    std::vector<std::vector<std::size_t>> cones) {
    Fan f{std::move(name), rank, std::move(rays), {}};
    for (auto& c : cones) f.max_cones.push_back({std::move(c)});
    return f;
}

// e0 = -(e1 + e2 + e3) throughout.
inline std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> cat;

    cat.push_back({"p1", "projective line", std::nullopt,
                   make_fan("p1", 1, {{1}, {-1}}, {{0}, {1}}), Provenance::Standard, std::nullopt, std::nullopt,
                   {"centrally symmetric; barycentre 0"}});
    cat.push_back({"p2", "projective plane", std::nullopt,
                   make_fan("p2", 2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}), Provenance::Standard,
                   std::nullopt, std::nullopt, {"smooth toric Fano surface; barycentre 0"}});
    cat.push_back({"p3", "projective 3-space", std::nullopt,
                   make_fan("p3", 3, {{-1, -1, -1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                            {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}),
                   Provenance::Printed, std::nullopt, std::nullopt,
                   {"rays e0, e1, e2, e3 with e0 + e1 + e2 + e3 = 0"}});
    cat.push_back({"p1xp1", "product of two projective lines", std::nullopt,
                   make_fan("p1xp1", 2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}),
                   Provenance::Standard, std::nullopt, std::nullopt, {"centrally symmetric; barycentre 0"}});
    cat.push_back({"bl1p2", "projective plane blown up at a torus-fixed point", std::nullopt,
                   make_fan("bl1p2", 2, {{1, 0}, {1, 1}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}),
                   Provenance::Derived, std::nullopt, std::nullopt,
                   {"derived control: smooth, barycentre nonzero (no Kahler-Einstein metric)"}});

    // X1: blow-up along a connected chain of three lines.
    Fan d1 = make_fan("delta1-printed", 3,
                      {{-1, -1, -1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}, {-1, -1, 0}, {0, -1, -1}},
                      // rays: e0 e1 e2 e3 e2+e3 e0+e3 e0+e1
                      {{1, 2, 4}, {1, 3, 4}, {3, 5, 4}, {0, 2, 6}, {0, 2, 6}, {0, 5, 6}, {0, 2, 5, 4}, {1, 3, 6, 5}});
    std::vector<QVec> v1{qv({1, 1, 0}), qv({1, 0, 1}), qv({-1, 0, 1}), qv({0, 1, -2}),
                         qv({1, 1, -2}), qv({0, -1, 0}), qv({-2, 0, 1}), qv({1, -2, 1})};
    // X2: blow-up along three concurrent lines.
    Fan d2 = make_fan("delta2-printed", 3,
                      {{-1, -1, -1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}},
                      // rays: e0 e1 e2 e3 e1+e2 e2+e3 e1+e3 e1+e2+e3
                      {{0, 1, 4}, {0, 2, 4}, {0, 2, 5}, {0, 3, 5}, {0, 3, 6}, {0, 1, 6}, {1, 4, 6, 7}, {2, 4, 5, 7}});
    std::vector<QVec> v2{qv({1, 0, 0}),  qv({0, 1, 0}),  qv({0, 0, 1}),  qv({1, 0, -2}), qv({0, 1, -2}),
                         qv({1, -2, 0}), qv({-2, 1, 0}), qv({-2, 0, 1}), qv({0, -2, 1})};
    // X3: blow-up along a double line plus a line.
    Fan d3 = make_fan("delta3-printed", 3,
                      {{-1, -1, -1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}, {2, 1, 0}, {1, 1, 1}},
                      // rays: e0 e1 e2 e3 e2+e3 2e1+e2 -e0
                      {{0, 1, 3}, {0, 2, 4}, {0, 3, 4}, {0, 1, 5}, {0, 2, 5}, {6, 3, 4}, {6, 1, 3, 5}, {6, 2, 4, 5}});
    std::vector<QVec> v3{qv({1, -3, 1}), qv({-2, 1, 0}), qv({-2, 0, 1}), qv({1, -1, -1}),
                         qv({0, 1, -2}), qv({0, 0, 1}),  qv({1, -1, 1}), qv({0, 1, 0})};

    const Rat r57(BigInt(1), BigInt(57)), r19(BigInt(1), BigInt(19));
    auto reconciled = [](const Fan& printed, const std::vector<QVec>& verts, const std::string& name) {
        Fan f = reconcile_fan(printed, verts).fan;
        f.name = name;
        return f;
    };

    cat.push_back({"x1", "degeneration X1 of V38 (two terminal singular points)", d1, reconciled(d1, v1, "delta1"),
                   Provenance::Derived, v1, QVec{r57, r57, -r57},
                   {"8 vertices; printed fan repeats cone <e0,e2,e0+e1> (7 distinct cones)",
                    "printed vertex (-2,0,1) violates <e0+e3, k> <= 1; the cone <e0,e2,e0+e3,e2+e3> gives (-2,1,0)",
                    "reconciled fan replaces the repeat by <e1,e2,e0+e1> (k_sigma = (1,1,-2))"}});
    cat.push_back({"x2", "degeneration X2 of V38 (three terminal singular points)", d2, reconciled(d2, v2, "delta2"),
                   Provenance::Derived, v2, QVec{-r57, -r57, -r57},
                   {"9 vertices; printed fan lists 8 cones",
                    "reconciled fan adds <e3,e1+e3,e2+e3,e1+e2+e3> (k_sigma = (0,0,1))"}});
    cat.push_back({"x3", "degeneration X3 of V38 (terminal, quotient and canonical singular points)", d3,
                   reconciled(d3, v3, "delta3"), Provenance::Derived, v3, QVec{-r57, -r19, r57},
                   {"8 vertices; printed fan and vertex list are in bijection"}});

    cat.push_back({"delta1-printed", "fan of X1 exactly as published", std::nullopt, d1, Provenance::Printed,
                   std::nullopt, std::nullopt, {"repeats a cone; incomplete"}});
    cat.push_back({"delta2-printed", "fan of X2 exactly as published", std::nullopt, d2, Provenance::Printed,
                   std::nullopt, std::nullopt, {"8 of 9 cones; incomplete"}});
    cat.push_back({"delta3-printed", "fan of X3 exactly as published", std::nullopt, d3, Provenance::Printed,
                   std::nullopt, std::nullopt, {}});
    return cat;
}

} // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> cat = detail::build_catalog();
    return cat;
}

inline const CatalogEntry* find_entry(std::string_view name) {
    for (const auto& e : catalog())
        if (e.name == name) return &e;
    return nullptr;
}

// first_moments / (n! volume): the barycentre divided by n!. This is the
// normalization the published barycentres of X1, X2, X3 use.
inline QVec degree_normalized_moment(const MomentData& m) {
    BigInt fact = 1;
    for (std::size_t k = 2; k <= m.first_moments.size(); ++k) fact *= k;
    return (Rat(1) / (Rat(fact) * m.volume)) * m.first_moments;
}

enum class BarycentreMatch { Exact, DegreeNormalized, Mismatch };

inline const char* to_string(BarycentreMatch m) {
    switch (m) {
    case BarycentreMatch::Exact: return "exact";
    case BarycentreMatch::DegreeNormalized: return "degree-normalized";
    case BarycentreMatch::Mismatch: return "mismatch";
    }
    return "unknown";
}

// Compares moments of conv(published vertices) with the published barycentre.
inline BarycentreMatch compare_printed_barycentre(const QVec& printed, const MomentData& printed_orientation) {
    if (printed_orientation.barycentre == printed) return BarycentreMatch::Exact;
    if (degree_normalized_moment(printed_orientation) == printed) return BarycentreMatch::DegreeNormalized;
    return BarycentreMatch::Mismatch;
}

} // namespace toric
