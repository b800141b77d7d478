#pragma once

/*
 * Exact convex hulls, triangulations and moment integrals of rational
 * V-polytopes.
 *
 * The hull enumerates facets by brute force over n-subsets of the input
 * points, which is the right tool for the ~10-point, rank-3 polytopes this
 * library targets. Triangulation is the pulling (placing-from-a-vertex)
 * triangulation: cone from the lexicographically least vertex over every
 * facet not containing it, recursing into the facets.
 */

#include "linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <vector>

namespace toric {

class DegeneratePolytope : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The closed half-space <normal, x> + offset >= 0.
struct Halfspace {
    IVec normal;
    Rat offset;

    Rat eval(const QVec& x) const { return dot(std::span<const std::int64_t>(normal), std::span(x)) + offset; }
    double eval(std::span<const double> x) const {
        double s = offset.to_double();
        for (std::size_t i = 0; i < normal.size(); ++i) s += static_cast<double>(normal[i]) * x[i];
        return s;
    }
    friend bool operator==(const Halfspace&, const Halfspace&) = default;
    friend auto operator<=>(const Halfspace& a, const Halfspace& b) {
        if (auto c = a.normal <=> b.normal; c != 0) return c;
        return a.offset <=> b.offset;
    }
};

struct VPolytope {
    std::size_t dim = 0;
    std::vector<QVec> points;                           // input, duplicates merged
    std::vector<QVec> vertices;                         // extremal points, lexicographic order
    std::vector<Halfspace> facets;                      // every point satisfies every facet
    std::vector<std::vector<std::size_t>> facet_vertices;  // indices into vertices

    bool contains(const QVec& x) const {
        return std::all_of(facets.begin(), facets.end(), [&](const Halfspace& h) { return h.eval(x).sign() >= 0; });
    }
    bool strictly_contains(const QVec& x) const {
        return std::all_of(facets.begin(), facets.end(), [&](const Halfspace& h) { return h.eval(x).sign() > 0; });
    }
    bool is_vertex(const QVec& x) const { return std::binary_search(vertices.begin(), vertices.end(), x); }
};

struct Simplex {
    std::vector<QVec> vertices;  // n + 1 points in rank n

    Rat volume() const {
        const std::size_t n = vertices.size() - 1;
        QMat edges(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) edges(i, j) = vertices[i + 1][j] - vertices[0][j];
        Rat d = det(edges).abs();
        BigInt fact = 1;
        for (std::size_t k = 2; k <= n; ++k) fact *= k;
        return d / Rat(fact);
    }
};

struct MomentData {
    Rat volume;
    QVec first_moments;  // integral of y_s over the polytope
    QVec barycentre;     // first_moments / volume
};

inline std::size_t affine_rank(const std::vector<QVec>& pts) {
    if (pts.size() <= 1) return 0;
    std::vector<QVec> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
    return rank(QMat::from_rows(diffs, pts[0].size()));
}

inline VPolytope convex_hull(std::vector<QVec> pts) {
    if (pts.empty()) throw DegeneratePolytope("convex_hull: no points");
    VPolytope p;
    p.dim = pts[0].size();
    const std::size_t n = p.dim;
    if (n == 0) throw DegeneratePolytope("convex_hull: rank-0 points");
    for (const auto& x : pts)
        if (x.size() != n) throw std::invalid_argument("convex_hull: points of mixed dimension");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < n + 1 || affine_rank(pts) != n)
        throw DegeneratePolytope("convex_hull: points are not full-dimensional");
    p.points = pts;

    std::set<Halfspace> facets;
    for_each_subset(pts.size(), n, [&](const std::vector<std::size_t>& sub) {
        std::vector<QVec> diffs;
        for (std::size_t i = 1; i < sub.size(); ++i) diffs.push_back(pts[sub[i]] - pts[sub[0]]);
        auto ns = nullspace(QMat::from_rows(diffs, n));
        if (ns.size() != 1) return;
        Halfspace h{primitive(std::span<const Rat>(ns[0])), Rat()};
        h.offset = -dot(std::span<const std::int64_t>(h.normal), std::span<const Rat>(pts[sub[0]]));
        int pos = 0, neg = 0;
        for (const auto& x : pts) {
            int s = h.eval(x).sign();
            pos += s > 0;
            neg += s < 0;
        }
        if (pos && neg) return;
        if (neg) {
            for (auto& c : h.normal) c = -c;
            h.offset = -h.offset;
        }
        facets.insert(h);
    });
    p.facets.assign(facets.begin(), facets.end());

    // A point is a vertex iff the normals of its incident facets span M.
    for (const auto& x : pts) {
        std::vector<IVec> tight;
        for (const auto& h : p.facets)
            if (h.eval(x).is_zero()) tight.push_back(h.normal);
        if (!tight.empty() && rank(tight, n) == n) p.vertices.push_back(x);
    }
    for (const auto& h : p.facets) {
        std::vector<std::size_t> on;
        for (std::size_t i = 0; i < p.vertices.size(); ++i)
            if (h.eval(p.vertices[i]).is_zero()) on.push_back(i);
        p.facet_vertices.push_back(std::move(on));
    }
    return p;
}

namespace detail {

inline std::vector<QVec> pick(const VPolytope& p, const std::vector<std::size_t>& ids) {
    std::vector<QVec> out;
    for (auto i : ids) out.push_back(p.vertices[i]);
    return out;
}

// Pulling triangulation of the face with vertex ids `face` (sorted) and
// dimension `d`. Each cell is a list of d + 1 vertex ids.
inline void triangulate_face(const VPolytope& p, const std::vector<std::size_t>& face, std::size_t d,
                             std::vector<std::vector<std::size_t>>& out) {
    if (d == 0) {
        out.push_back({face.front()});
        return;
    }
    const std::size_t apex = face.front();  // vertices are stored in lexicographic order
    std::set<std::vector<std::size_t>> subfaces;
    for (const auto& fv : p.facet_vertices) {
        std::vector<std::size_t> t;
        std::set_intersection(face.begin(), face.end(), fv.begin(), fv.end(), std::back_inserter(t));
        if (t.size() == face.size() || t.size() < d) continue;
        if (std::binary_search(t.begin(), t.end(), apex)) continue;
        if (affine_rank(pick(p, t)) == d - 1) subfaces.insert(std::move(t));
    }
    for (const auto& sf : subfaces) {
        std::vector<std::vector<std::size_t>> cells;
        triangulate_face(p, sf, d - 1, cells);
        for (auto& c : cells) {
            c.insert(c.begin(), apex);
            out.push_back(std::move(c));
        }
    }
}

} // namespace detail

inline std::vector<Simplex> triangulate(const VPolytope& p) {
    if (p.vertices.size() < p.dim + 1) throw DegeneratePolytope("triangulate: polytope is not full-dimensional");
    std::vector<std::size_t> all(p.vertices.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::vector<std::size_t>> cells;
    detail::triangulate_face(p, all, p.dim, cells);
    std::vector<Simplex> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back({detail::pick(p, c)});
    return out;
}

// Exact volume and first moments: on a simplex the integral of a linear
// function is its volume times the mean of the vertex values.
inline MomentData moments(const VPolytope& p) {
    MomentData m;
    m.first_moments.assign(p.dim, Rat());
    const Rat verts(static_cast<long long>(p.dim + 1));
    for (const auto& s : triangulate(p)) {
        Rat v = s.volume();
        m.volume += v;
        for (std::size_t k = 0; k < p.dim; ++k) {
            Rat sum;
            for (const auto& w : s.vertices) sum += w[k];
            m.first_moments[k] += v * sum / verts;
        }
    }
    m.barycentre = (Rat(1) / m.volume) * m.first_moments;
    return m;
}

inline MomentData moments(const std::vector<QVec>& pts) { return moments(convex_hull(pts)); }

// Applies x -> T x + t to every point and rebuilds the hull.
inline VPolytope affine_image(const VPolytope& p, const QMat& t, const QVec& shift) {
    std::vector<QVec> pts;
    for (const auto& v : p.vertices) pts.push_back(t * v + shift);
    return convex_hull(pts);
}

inline VPolytope negated(const VPolytope& p) {
    std::vector<QVec> pts;
    for (const auto& v : p.vertices) pts.push_back(-v);
    return convex_hull(pts);
}

inline VPolytope scaled(const VPolytope& p, const Rat& k) {
    std::vector<QVec> pts;
    for (const auto& v : p.vertices) pts.push_back(k * v);
    return convex_hull(pts);
}

// Object File Format export of a 3-dimensional hull; facet vertex loops are
// ordered counter-clockwise seen from outside.
inline void write_off(const VPolytope& p, std::ostream& os) {
    if (p.dim != 3) throw std::invalid_argument("OFF export needs a 3-dimensional polytope");
    os << "OFF\n" << p.vertices.size() << ' ' << p.facets.size() << " 0\n";
    os << std::setprecision(17);
    std::vector<std::array<double, 3>> xyz;
    for (const auto& v : p.vertices) {
        xyz.push_back({v[0].to_double(), v[1].to_double(), v[2].to_double()});
        os << xyz.back()[0] << ' ' << xyz.back()[1] << ' ' << xyz.back()[2] << '\n';
    }
    for (std::size_t f = 0; f < p.facets.size(); ++f) {
        const auto& ids = p.facet_vertices[f];
        // Inward normal -> outward axis w; build an in-plane basis (a, b) with a x b = w.
        std::array<double, 3> w{-double(p.facets[f].normal[0]), -double(p.facets[f].normal[1]),
                                -double(p.facets[f].normal[2])};
        std::array<double, 3> c{0, 0, 0};
        for (auto i : ids)
            for (int k = 0; k < 3; ++k) c[k] += xyz[i][k] / double(ids.size());
        std::array<double, 3> a{xyz[ids[0]][0] - c[0], xyz[ids[0]][1] - c[1], xyz[ids[0]][2] - c[2]};
        std::array<double, 3> b{w[1] * a[2] - w[2] * a[1], w[2] * a[0] - w[0] * a[2], w[0] * a[1] - w[1] * a[0]};
        std::vector<std::pair<double, std::size_t>> order;
        for (auto i : ids) {
            std::array<double, 3> d{xyz[i][0] - c[0], xyz[i][1] - c[1], xyz[i][2] - c[2]};
            double x = a[0] * d[0] + a[1] * d[1] + a[2] * d[2];
            double y = b[0] * d[0] + b[1] * d[1] + b[2] * d[2];
            order.emplace_back(std::atan2(y, x), i);
        }
        std::sort(order.begin(), order.end());
        os << ids.size();
        for (const auto& [ang, i] : order) os << ' ' << i;
        os << '\n';
    }
}

} // namespace toric
