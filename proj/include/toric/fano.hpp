#pragma once

/*
 * Q-Gorenstein data, the almost-Fano test, divisor polytopes and lattice
 * points.
 *
 * Sign convention: for a maximal cone sigma, k_sigma is the covector with
 * <n_i, k_sigma> = 1 on every generator. The anticanonical polytope is
 * P_{-K} = conv{ -k_sigma } = { u : <u, v_i> >= -1 }. Published vertex lists
 * of the form conv{ k_sigma } are the negation -P_{-K}.
 */

#include "fan.hpp"
#include "polytope.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace toric {

struct TCartierDivisor {
    std::vector<std::int64_t> coeffs;  // a_i, one per ray: D = sum a_i D_i

    static TCartierDivisor uniform(std::size_t rays, std::int64_t a) { return {std::vector<std::int64_t>(rays, a)}; }
};

struct GorensteinData {
    std::vector<QVec> k_sigma;  // indexed like Fan::max_cones
    BigInt index = 1;           // least k with every k * k_sigma integral

    bool gorenstein() const { return index == 1; }
};

class NotQGorenstein : public std::runtime_error {
public:
    NotQGorenstein(std::size_t cone, const std::string& why)
        : std::runtime_error("cone " + std::to_string(cone) + ": " + why), cone_(cone) {}
    std::size_t cone() const { return cone_; }

private:
    std::size_t cone_;
};

// Overdetermined systems (non-simplicial cones) are solved exactly; the
// elimination picks an independent subset and checks the rest for
// consistency.
inline GorensteinData gorenstein_data(const Fan& f) {
    GorensteinData g;
    for (std::size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        const Cone& c = f.max_cones[ci];
        auto res = solve(f.generators(c), QVec(c.rays.size(), Rat(1)));
        if (res.status == SolveStatus::NoSolution)
            throw NotQGorenstein(ci, "no covector pairs to 1 with every generator");
        if (res.status == SolveStatus::Underdetermined)
            throw NotQGorenstein(ci, "cone is not full-dimensional, k_sigma is not unique");
        for (auto r : c.rays)
            if (dot(std::span<const std::int64_t>(f.rays[r]), std::span<const Rat>(res.x)) != Rat(1))
                throw std::logic_error("gorenstein_data: solve returned a non-solution");
        for (const auto& x : res.x) g.index = lcm(g.index, x.den());
        g.k_sigma.push_back(std::move(res.x));
    }
    return g;
}

// Inequalities <u, normal> + offset >= 0.
struct HPolytope {
    std::size_t dim = 0;
    std::vector<Halfspace> inequalities;

    bool contains(const QVec& x) const {
        return std::all_of(inequalities.begin(), inequalities.end(),
                           [&](const Halfspace& h) { return h.eval(x).sign() >= 0; });
    }
};

inline HPolytope to_hpolytope(const VPolytope& p) { return {p.dim, p.facets}; }

// P_D = { u : <u, v_i> >= -a_i }, one inequality per ray, no redundancy removal.
inline HPolytope divisor_polytope(const Fan& f, const TCartierDivisor& d) {
    if (d.coeffs.size() != f.rays.size())
        throw std::invalid_argument("divisor_polytope: need one coefficient per ray");
    HPolytope h{f.rank, {}};
    for (std::size_t i = 0; i < f.rays.size(); ++i)
        h.inequalities.push_back({f.rays[i], Rat(static_cast<long long>(d.coeffs[i]))});
    return h;
}

inline bool is_bounded(const HPolytope& p) {
    std::vector<IVec> normals;
    for (const auto& h : p.inequalities) normals.push_back(h.normal);
    if (normals.empty() || rank(normals, p.dim) < p.dim) return false;
    return detail::extreme_rays(normals, {}, p.dim).empty();
}

// Vertices of a bounded H-polytope, lexicographically sorted. Empty when the
// polytope is empty.
inline std::vector<QVec> hrep_to_vrep(const HPolytope& p) {
    if (!is_bounded(p)) throw std::invalid_argument("hrep_to_vrep: polytope is unbounded");
    const std::size_t n = p.dim;
    std::set<QVec> verts;
    for_each_subset(p.inequalities.size(), n, [&](const std::vector<std::size_t>& sub) {
        QMat a(n, n);
        QVec b(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& h = p.inequalities[sub[i]];
            for (std::size_t j = 0; j < n; ++j) a(i, j) = Rat(static_cast<long long>(h.normal[j]));
            b[i] = -h.offset;
        }
        auto res = solve(a, b);
        if (res && p.contains(res.x)) verts.insert(std::move(res.x));
    });
    return {verts.begin(), verts.end()};
}

// Every integer point of a bounded polytope, lexicographically sorted. The
// scan box is the floor/ceil hull of the exact vertex coordinates.
inline std::vector<IVec> lattice_points(const HPolytope& p) {
    auto verts = hrep_to_vrep(p);
    if (verts.empty()) return {};
    const std::size_t n = p.dim;
    IVec lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rat mn = verts[0][j], mx = mn;
        for (const auto& v : verts) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        lo[j] = to_int64(mn.ceil());
        hi[j] = to_int64(mx.floor());
    }
    std::vector<IVec> out;
    IVec x = lo;
    for (std::size_t j = 0; j < n; ++j)
        if (lo[j] > hi[j]) return out;
    while (true) {
        QVec q = to_qvec(x);
        if (p.contains(q)) out.push_back(x);
        std::size_t j = n;
        while (j > 0) {
            --j;
            if (x[j] < hi[j]) {
                ++x[j];
                break;
            }
            x[j] = lo[j];
            if (j == 0) return out;
        }
    }
}

inline std::vector<IVec> lattice_points(const VPolytope& p) { return lattice_points(to_hpolytope(p)); }

inline VPolytope anticanonical_polytope(const Fan& f, const GorensteinData& g) {
    std::vector<QVec> pts;
    for (const auto& k : g.k_sigma) pts.push_back(-k);
    return convex_hull(pts);
}

struct AlmostFanoReport {
    bool almost_fano = false;
    bool full_dimensional = false;
    std::vector<std::size_t> non_extremal;                          // cones whose -k_sigma is not a vertex
    std::vector<std::pair<std::size_t, std::size_t>> coincident;     // cones sharing one k_sigma
    std::vector<std::pair<std::size_t, std::size_t>> non_convex;     // (cone, ray) with <v, k_sigma> >= 1, v not in cone
};

// Almost Fano iff conv{-k_sigma} is full-dimensional with each -k_sigma a
// distinct vertex, and the anticanonical support function is strictly convex
// (<v, k_sigma> < 1 for every ray v outside sigma).
inline AlmostFanoReport is_almost_fano(const Fan& f, const GorensteinData& g) {
    AlmostFanoReport r;
    std::vector<QVec> pts;
    for (const auto& k : g.k_sigma) pts.push_back(-k);
    std::optional<VPolytope> hull;
    try {
        hull = convex_hull(pts);
        r.full_dimensional = true;
    } catch (const DegeneratePolytope&) {
        r.full_dimensional = false;
    }
    std::map<QVec, std::size_t> first;
    for (std::size_t ci = 0; ci < pts.size(); ++ci) {
        if (hull && !hull->is_vertex(pts[ci])) r.non_extremal.push_back(ci);
        auto [it, fresh] = first.emplace(g.k_sigma[ci], ci);
        if (!fresh) r.coincident.emplace_back(it->second, ci);
        const auto& rays = f.max_cones[ci].rays;
        for (std::size_t v = 0; v < f.rays.size(); ++v) {
            if (std::find(rays.begin(), rays.end(), v) != rays.end()) continue;
            if (dot(std::span<const std::int64_t>(f.rays[v]), std::span<const Rat>(g.k_sigma[ci])) >= Rat(1))
                r.non_convex.emplace_back(ci, v);
        }
    }
    r.almost_fano = r.full_dimensional && r.non_extremal.empty() && r.coincident.empty() && r.non_convex.empty();
    return r;
}

// Comparison of the computed multiset {k_sigma} against a published list of
// vertices of -P_{-K}.
struct BijectionReport {
    std::vector<std::pair<std::size_t, std::size_t>> duplicate_cones;  // (first, repeat)
    std::vector<std::pair<std::size_t, QVec>> unmatched_computed;      // cone index, k_sigma
    std::vector<QVec> unmatched_printed;

    bool ok() const { return duplicate_cones.empty() && unmatched_computed.empty() && unmatched_printed.empty(); }
};

inline BijectionReport check_bijection(const Fan& f, const GorensteinData& g, const std::vector<QVec>& printed) {
    BijectionReport r;
    std::map<std::vector<std::size_t>, std::size_t> seen;
    for (std::size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        auto key = detail::sorted_rays(f.max_cones[ci]);
        auto [it, fresh] = seen.emplace(key, ci);
        if (!fresh) r.duplicate_cones.emplace_back(it->second, ci);
    }
    std::multiset<QVec> pool(printed.begin(), printed.end());
    for (std::size_t ci = 0; ci < g.k_sigma.size(); ++ci) {
        auto it = pool.find(g.k_sigma[ci]);
        if (it == pool.end()) r.unmatched_computed.emplace_back(ci, g.k_sigma[ci]);
        else pool.erase(it);
    }
    r.unmatched_printed.assign(pool.begin(), pool.end());
    return r;
}

struct Reconciliation {
    Fan fan;
    std::vector<std::size_t> dropped;      // printed cone indices removed (repeats)
    std::vector<Cone> added;               // cones recovered from unmatched printed vertices
    std::vector<QVec> infeasible_printed;  // printed vertices violating some <v, k> <= 1
};

// Rebuilds a fan from its published cone list and published k_sigma list.
// Repeated cones are dropped. A printed vertex k that no cone produces, but
// with <v, k> <= 1 for every ray, is a vertex of -P_{-K}; its cone is spanned
// by the rays with <v, k> = 1. Printed vertices failing <v, k> <= 1 cannot be
// vertices of -P_{-K} and are reported.
inline Reconciliation reconcile_fan(const Fan& printed, const std::vector<QVec>& printed_k) {
    Reconciliation r;
    r.fan = printed;
    r.fan.max_cones.clear();
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t ci = 0; ci < printed.max_cones.size(); ++ci) {
        if (seen.insert(detail::sorted_rays(printed.max_cones[ci])).second)
            r.fan.max_cones.push_back(printed.max_cones[ci]);
        else
            r.dropped.push_back(ci);
    }
    auto g = gorenstein_data(r.fan);
    std::set<QVec> produced(g.k_sigma.begin(), g.k_sigma.end());
    for (const auto& k : printed_k) {
        if (produced.count(k)) continue;
        Cone c;
        bool feasible = true;
        for (std::size_t v = 0; v < printed.rays.size(); ++v) {
            Rat p = dot(std::span<const std::int64_t>(printed.rays[v]), std::span<const Rat>(k));
            if (p > Rat(1)) feasible = false;
            if (p == Rat(1)) c.rays.push_back(v);
        }
        if (!feasible || cone_dim(printed, c) != printed.rank) {
            r.infeasible_printed.push_back(k);
            continue;
        }
        if (seen.insert(detail::sorted_rays(c)).second) {
            r.fan.max_cones.push_back(c);
            r.added.push_back(c);
            produced.insert(k);
        }
    }
    return r;
}

} // namespace toric
