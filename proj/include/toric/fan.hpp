#pragma once

/*
 * Cones and fans in N = Z^n, with exact checks of the fan axioms,
 * completeness, simpliciality and smoothness.
 *
 * Facet normals live in M = Hom(N, Z), identified with Z^n through the
 * standard pairing. Every check is brute force over generator subsets; the
 * rank is capped at kMaxRank so the subset counts stay small.
 */

#include "linalg.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace toric {

inline constexpr std::size_t kMaxRank = 6;

struct Cone {
    std::vector<std::size_t> rays;  // indices into Fan::rays

    friend bool operator==(const Cone&, const Cone&) = default;
};

struct Fan {
    std::string name;
    std::size_t rank = 0;
    std::vector<IVec> rays;
    std::vector<Cone> max_cones;

    QMat generators(const Cone& c) const {
        std::vector<IVec> rows;
        for (auto i : c.rays) rows.push_back(rays.at(i));
        return QMat::from_rows(rows, rank);
    }
    std::vector<IVec> generator_list(const Cone& c) const {
        std::vector<IVec> out;
        for (auto i : c.rays) out.push_back(rays.at(i));
        return out;
    }
};

class NonPrimitiveRay : public std::invalid_argument {
public:
    explicit NonPrimitiveRay(std::size_t index)
        : std::invalid_argument("ray " + std::to_string(index) + " is not a primitive nonzero integer vector"),
          index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class NotStronglyConvex : public std::invalid_argument {
public:
    NotStronglyConvex() : std::invalid_argument("cone contains a line through the origin") {}
};

// { x : <f, x> >= 0 for f in facets, <e, x> = 0 for e in equations }.
// equations is empty exactly when the cone is full-dimensional.
struct ConeHRep {
    std::size_t dim = 0;
    std::vector<IVec> facets;
    std::vector<IVec> equations;

    template <class Vec>
    bool contains(const Vec& x) const {
        for (const auto& f : facets)
            if (dot(std::span<const std::int64_t>(f), std::span(x)) < 0) return false;
        for (const auto& e : equations)
            if (dot(std::span<const std::int64_t>(e), std::span(x)) != 0) return false;
        return true;
    }
};

namespace detail {

inline std::vector<IVec> integer_basis(const std::vector<QVec>& vs) {
    std::vector<IVec> out;
    for (const auto& v : vs) out.push_back(primitive(std::span<const Rat>(v)));
    return out;
}

// Extreme rays of the pointed cone { x : <a, x> >= 0 (a in ineqs), <e, x> = 0 (e in eqs) },
// as primitive integer vectors. Brute force over constraint subsets.
inline std::vector<IVec> extreme_rays(const std::vector<IVec>& ineqs, const std::vector<IVec>& eqs,
                                      std::size_t n) {
    const std::size_t eq_rank = eqs.empty() ? 0 : rank(eqs, n);
    if (eq_rank >= n) return {};
    const std::size_t need = n - 1 - eq_rank;
    std::set<IVec> found;
    for_each_subset(ineqs.size(), need, [&](const std::vector<std::size_t>& sub) {
        std::vector<IVec> rows = eqs;
        for (auto i : sub) rows.push_back(ineqs[i]);
        QMat m = QMat::from_rows(rows, n);
        auto ns = nullspace(m);
        if (ns.size() != 1) return;
        IVec r = primitive(std::span<const Rat>(ns[0]));
        for (int s = 0; s < 2; ++s) {
            bool ok = true;
            for (const auto& a : ineqs)
                if (dot(std::span<const std::int64_t>(a), std::span<const std::int64_t>(r)) < 0) {
                    ok = false;
                    break;
                }
            if (ok) found.insert(r);
            for (auto& x : r) x = -x;
        }
    });
    return {found.begin(), found.end()};
}

} // namespace detail

inline std::size_t cone_dim(const Fan& f, const Cone& c) {
    if (c.rays.empty()) return 0;
    return rank(f.generators(c));
}

// Minimal inequality description of a cone. Facet normals are primitive
// integer vectors, one per facet; lower-dimensional cones also get a basis of
// the orthogonal complement of their span as equations.
inline ConeHRep cone_hrep(const std::vector<IVec>& gens, std::size_t n) {
    ConeHRep h;
    if (gens.empty()) return h;
    QMat g = QMat::from_rows(gens, n);
    h.dim = rank(g);
    if (h.dim == 0) return h;
    h.equations = detail::integer_basis(nullspace(g));

    std::set<IVec> normals;
    for_each_subset(gens.size(), h.dim - 1, [&](const std::vector<std::size_t>& sub) {
        std::vector<IVec> rows = h.equations;
        for (auto i : sub) rows.push_back(gens[i]);
        auto ns = nullspace(QMat::from_rows(rows, n));
        if (ns.size() != 1) return;
        IVec u = primitive(std::span<const Rat>(ns[0]));
        int pos = 0, neg = 0;
        for (const auto& v : gens) {
            BigInt p = dot(std::span<const std::int64_t>(u), std::span<const std::int64_t>(v));
            if (p > 0) ++pos;
            else if (p < 0) ++neg;
        }
        if (pos && neg) return;
        if (!pos && !neg) return;
        if (neg)
            for (auto& x : u) x = -x;
        normals.insert(u);
    });
    h.facets.assign(normals.begin(), normals.end());

    // Pointed iff the facet normals and equations span M.
    std::vector<IVec> all = h.facets;
    all.insert(all.end(), h.equations.begin(), h.equations.end());
    if (all.empty() || rank(all, n) < n) throw NotStronglyConvex();
    return h;
}

inline ConeHRep cone_hrep(const Fan& f, const Cone& c) { return cone_hrep(f.generator_list(c), f.rank); }

// Indices (into c.rays) of generators lying on the given facet normal.
inline std::vector<std::size_t> rays_on(const Fan& f, const Cone& c, const IVec& normal) {
    std::vector<std::size_t> out;
    for (auto i : c.rays)
        if (dot(std::span<const std::int64_t>(normal), std::span<const std::int64_t>(f.rays[i])) == 0)
            out.push_back(i);
    std::sort(out.begin(), out.end());
    return out;
}

// Index of a simplicial cone: |det| for full-dimensional cones, the gcd of the
// maximal minors otherwise. nullopt for non-simplicial cones.
inline std::optional<BigInt> simplicial_index(const Fan& f, const Cone& c) {
    const std::size_t d = cone_dim(f, c);
    if (c.rays.size() != d) return std::nullopt;
    if (d == 0) return BigInt(1);
    QMat g = f.generators(c);
    BigInt acc = 0;
    for_each_subset(f.rank, d, [&](const std::vector<std::size_t>& cols) {
        QMat minor(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) minor(i, j) = g(i, cols[j]);
        BigInt m = det(minor).num();
        acc = gcd(acc, m < 0 ? BigInt(-m) : m);
    });
    return acc;
}

// True iff the generators extend to a basis of N.
inline bool is_smooth_cone(const Fan& f, const Cone& c) {
    auto idx = simplicial_index(f, c);
    return idx && *idx == 1;
}

enum class FindingKind {
    DuplicateRay,
    UnusedRay,
    DuplicateGenerator,
    NotStronglyConvex,
    NonExtremalGenerator,
    DuplicateCone,
    BadIntersection,
    NotFullDimensional,
    UnpairedFacet,
    SingularCone,
};

inline const char* to_string(FindingKind k) {
    switch (k) {
    case FindingKind::DuplicateRay: return "duplicate-ray";
    case FindingKind::UnusedRay: return "unused-ray";
    case FindingKind::DuplicateGenerator: return "duplicate-generator";
    case FindingKind::NotStronglyConvex: return "not-strongly-convex";
    case FindingKind::NonExtremalGenerator: return "non-extremal-generator";
    case FindingKind::DuplicateCone: return "duplicate-cone";
    case FindingKind::BadIntersection: return "bad-intersection";
    case FindingKind::NotFullDimensional: return "not-full-dimensional";
    case FindingKind::UnpairedFacet: return "unpaired-facet";
    case FindingKind::SingularCone: return "singular-cone";
    }
    return "unknown";
}

struct Finding {
    FindingKind kind;
    std::vector<std::size_t> cones;
    std::vector<std::size_t> rays;
    BigInt index = 0;  // lattice index for SingularCone, sharing count for UnpairedFacet
    std::string detail;
};

struct ValidationReport {
    bool axioms_ok = true;
    bool complete = false;
    bool simplicial = true;
    bool smooth = true;
    std::vector<Finding> violations;

    std::vector<Finding> of_kind(FindingKind k) const {
        std::vector<Finding> out;
        for (const auto& v : violations)
            if (v.kind == k) out.push_back(v);
        return out;
    }
};

namespace detail {

inline std::string join(const std::vector<std::size_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

inline std::vector<std::size_t> sorted_rays(const Cone& c) {
    auto r = c.rays;
    std::sort(r.begin(), r.end());
    return r;
}

// Indices of maximal cones that are not a repeat of an earlier cone.
inline std::vector<std::size_t> distinct_cones(const Fan& f) {
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.max_cones.size(); ++i)
        if (seen.insert(sorted_rays(f.max_cones[i])).second) out.push_back(i);
    return out;
}

// Is the cone spanned by `common` (a subset of c's rays) a face of c?
inline bool is_face(const Fan& f, const Cone& c, const ConeHRep& h, const std::vector<std::size_t>& common) {
    if (common.empty()) return true;
    std::vector<std::size_t> face(c.rays.begin(), c.rays.end());
    for (const auto& u : h.facets) {
        bool all_zero = true;
        for (auto i : common)
            if (dot(std::span<const std::int64_t>(u), std::span<const std::int64_t>(f.rays[i])) != 0) {
                all_zero = false;
                break;
            }
        if (!all_zero) continue;
        std::vector<std::size_t> keep;
        for (auto i : face)
            if (dot(std::span<const std::int64_t>(u), std::span<const std::int64_t>(f.rays[i])) == 0)
                keep.push_back(i);
        face = std::move(keep);
    }
    std::sort(face.begin(), face.end());
    return face == common;
}

// Facet-pairing census over distinct full-dimensional cones: facet ray set ->
// list of cones having it as a facet.
inline std::map<std::vector<std::size_t>, std::vector<std::size_t>>
facet_census(const Fan& f, const std::vector<std::size_t>& cones, const std::vector<std::optional<ConeHRep>>& hreps) {
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> census;
    for (auto ci : cones) {
        if (!hreps[ci] || hreps[ci]->dim != f.rank) continue;
        for (const auto& u : hreps[ci]->facets) census[rays_on(f, f.max_cones[ci], u)].push_back(ci);
    }
    return census;
}

inline void check_structure(const Fan& f) {
    if (f.rank == 0 || f.rank > kMaxRank)
        throw std::invalid_argument("fan rank must be between 1 and " + std::to_string(kMaxRank));
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        if (f.rays[i].size() != f.rank)
            throw std::invalid_argument("ray " + std::to_string(i) + " has wrong length");
        bool nonzero = std::any_of(f.rays[i].begin(), f.rays[i].end(), [](auto x) { return x != 0; });
        if (!nonzero || !is_primitive(f.rays[i])) throw NonPrimitiveRay(i);
    }
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        if (f.max_cones[c].rays.empty())
            throw std::invalid_argument("maximal cone " + std::to_string(c) + " is empty");
        for (auto r : f.max_cones[c].rays)
            if (r >= f.rays.size())
                throw std::out_of_range("maximal cone " + std::to_string(c) + " references ray " +
                                        std::to_string(r) + " which does not exist");
    }
}

} // namespace detail

// Facet-pairing completeness test. Exact for fans that satisfy the axioms:
// the support is all of N_R iff every maximal cone is full-dimensional and
// every facet of every maximal cone is shared by exactly two maximal cones.
inline bool is_complete(const Fan& f) {
    detail::check_structure(f);
    auto cones = detail::distinct_cones(f);
    if (cones.empty()) return false;
    std::vector<std::optional<ConeHRep>> hreps(f.max_cones.size());
    for (auto ci : cones) {
        hreps[ci] = cone_hrep(f, f.max_cones[ci]);
        if (hreps[ci]->dim != f.rank) return false;
    }
    for (const auto& [rays, owners] : detail::facet_census(f, cones, hreps))
        if (owners.size() != 2) return false;
    return true;
}

inline ValidationReport validate_fan(const Fan& f) {
    detail::check_structure(f);
    ValidationReport rep;
    auto add = [&](Finding fd, bool breaks_axioms) {
        if (breaks_axioms) rep.axioms_ok = false;
        rep.violations.push_back(std::move(fd));
    };

    std::map<IVec, std::size_t> ray_seen;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        auto [it, fresh] = ray_seen.emplace(f.rays[i], i);
        if (!fresh)
            add({FindingKind::DuplicateRay, {}, {it->second, i}, 0,
                 "rays " + std::to_string(it->second) + " and " + std::to_string(i) + " coincide"},
                true);
    }
    std::vector<bool> used(f.rays.size(), false);
    for (const auto& c : f.max_cones)
        for (auto r : c.rays) used[r] = true;
    for (std::size_t i = 0; i < f.rays.size(); ++i)
        if (!used[i]) add({FindingKind::UnusedRay, {}, {i}, 0, "ray " + std::to_string(i) + " lies in no maximal cone"}, false);

    auto cones = detail::distinct_cones(f);
    {
        std::map<std::vector<std::size_t>, std::size_t> first;
        for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
            auto key = detail::sorted_rays(f.max_cones[i]);
            auto [it, fresh] = first.emplace(key, i);
            if (!fresh)
                add({FindingKind::DuplicateCone, {it->second, i}, key, 0,
                     "maximal cone " + std::to_string(i) + " repeats cone " + std::to_string(it->second)},
                    false);
        }
    }

    std::vector<std::optional<ConeHRep>> hreps(f.max_cones.size());
    for (auto ci : cones) {
        const Cone& c = f.max_cones[ci];
        auto key = detail::sorted_rays(c);
        if (std::adjacent_find(key.begin(), key.end()) != key.end()) {
            add({FindingKind::DuplicateGenerator, {ci}, key, 0, "cone lists a generator twice"}, true);
            continue;
        }
        try {
            hreps[ci] = cone_hrep(f, c);
        } catch (const NotStronglyConvex&) {
            add({FindingKind::NotStronglyConvex, {ci}, key, 0, "cone " + std::to_string(ci) + " contains a line"}, true);
            continue;
        }
        const auto& h = *hreps[ci];
        for (auto r : c.rays) {
            std::vector<IVec> tight = h.equations;
            for (const auto& u : h.facets)
                if (dot(std::span<const std::int64_t>(u), std::span<const std::int64_t>(f.rays[r])) == 0)
                    tight.push_back(u);
            if ((tight.empty() ? 0 : rank(tight, f.rank)) != f.rank - 1)
                add({FindingKind::NonExtremalGenerator, {ci}, {r}, 0,
                     "ray " + std::to_string(r) + " is not an extremal generator of cone " + std::to_string(ci)},
                    true);
        }
        if (h.dim != f.rank)
            add({FindingKind::NotFullDimensional, {ci}, key, 0,
                 "cone " + std::to_string(ci) + " has dimension " + std::to_string(h.dim)},
                false);
        if (c.rays.size() != h.dim) rep.simplicial = false;
        if (auto idx = simplicial_index(f, c); !idx || *idx != 1) {
            rep.smooth = false;
            add({FindingKind::SingularCone, {ci}, key, idx.value_or(0),
                 idx ? "lattice index " + idx->str() : std::string("non-simplicial")},
                false);
        }
    }

    // Pairwise: the intersection must be the cone on the common rays, and
    // that cone must be a face of both.
    for (std::size_t a = 0; a < cones.size(); ++a) {
        for (std::size_t b = a + 1; b < cones.size(); ++b) {
            const auto ia = cones[a], ib = cones[b];
            if (!hreps[ia] || !hreps[ib]) continue;
            const Cone &ca = f.max_cones[ia], &cb = f.max_cones[ib];
            std::vector<std::size_t> ra = detail::sorted_rays(ca), rb = detail::sorted_rays(cb), common;
            std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(common));

            std::vector<IVec> ineqs = hreps[ia]->facets, eqs = hreps[ia]->equations;
            ineqs.insert(ineqs.end(), hreps[ib]->facets.begin(), hreps[ib]->facets.end());
            eqs.insert(eqs.end(), hreps[ib]->equations.begin(), hreps[ib]->equations.end());
            bool ok = true;
            std::string why;
            for (const auto& r : detail::extreme_rays(ineqs, eqs, f.rank)) {
                bool is_common = std::any_of(common.begin(), common.end(), [&](auto i) { return f.rays[i] == r; });
                if (!is_common) {
                    ok = false;
                    std::ostringstream os;
                    os << "intersection has extreme ray (";
                    for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << r[k];
                    os << ") that is not a common generator";
                    why = os.str();
                    break;
                }
            }
            if (ok && !(detail::is_face(f, ca, *hreps[ia], common) && detail::is_face(f, cb, *hreps[ib], common))) {
                ok = false;
                why = "common rays {" + detail::join(common) + "} do not span a common face";
            }
            if (!ok)
                add({FindingKind::BadIntersection, {ia, ib}, common, 0,
                     "cones " + std::to_string(ia) + " and " + std::to_string(ib) + ": " + why},
                    true);
        }
    }

    bool all_full = !cones.empty();
    for (auto ci : cones)
        if (!hreps[ci] || hreps[ci]->dim != f.rank) all_full = false;
    bool paired = true;
    for (const auto& [rays, owners] : detail::facet_census(f, cones, hreps)) {
        if (owners.size() == 2) continue;
        paired = false;
        add({FindingKind::UnpairedFacet, owners, rays, BigInt(owners.size()),
             "facet {" + detail::join(rays) + "} of cone(s) {" + detail::join(owners) + "} is shared by " +
                 std::to_string(owners.size()) + " maximal cone(s)"},
            false);
    }
    rep.complete = rep.axioms_ok && all_full && paired;
    return rep;
}

} // namespace toric
