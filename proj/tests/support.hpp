#pragma once

// Random generators and property checks shared by the unit tests and the
// acceptance runner.

#include <toric/catalog.hpp>
#include <toric/futaki.hpp>

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace toric::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
    }
    Rat rat(std::int64_t bound, std::int64_t max_den) {
        return Rat(BigInt(uniform(-bound, bound)), BigInt(uniform(1, max_den)));
    }
    QVec rat_vec(std::size_t n, std::int64_t bound, std::int64_t max_den) {
        QVec v;
        for (std::size_t i = 0; i < n; ++i) v.push_back(rat(bound, max_den));
        return v;
    }
    template <class T>
    void shuffle(std::vector<T>& v) { std::shuffle(v.begin(), v.end(), eng_); }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

// count points in rank n with affine rank n.
inline std::vector<QVec> full_dim_points(Rng& rng, std::size_t n, std::size_t count, std::int64_t bound = 4,
                                         std::int64_t max_den = 3) {
    while (true) {
        std::vector<QVec> pts;
        for (std::size_t i = 0; i < count; ++i) pts.push_back(rng.rat_vec(n, bound, max_den));
        if (affine_rank(pts) == n) return pts;
    }
}

inline VPolytope random_polytope(Rng& rng) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 4));
    const auto count = n + 1 + static_cast<std::size_t>(rng.uniform(0, n == 4 ? 3 : 5));
    return convex_hull(full_dim_points(rng, n, count));
}

// Product of random elementary row operations, swaps and sign flips: det = +-1.
inline QMat random_unimodular(Rng& rng, std::size_t n) {
    QMat m = QMat::identity(n);
    for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
        auto i = static_cast<std::size_t>(rng.uniform(0, n - 1));
        auto j = static_cast<std::size_t>(rng.uniform(0, n - 1));
        switch (rng.uniform(0, 2)) {
        case 0:
            if (i != j) {
                Rat c(rng.uniform(-2, 2));
                for (std::size_t k = 0; k < n; ++k) m(i, k) += c * m(j, k);
            }
            break;
        case 1:
            for (std::size_t k = 0; k < n; ++k) std::swap(m(i, k), m(j, k));
            break;
        default:
            for (std::size_t k = 0; k < n; ++k) m(i, k) = -m(i, k);
        }
    }
    return m;
}

// Complete fan over the faces of an integral polytope with the origin in its
// interior. Rays are the primitive vertex directions.
inline Fan face_fan(const VPolytope& p, std::string name = "face-fan") {
    Fan f;
    f.name = std::move(name);
    f.rank = p.dim;
    for (const auto& v : p.vertices) f.rays.push_back(primitive(std::span<const Rat>(v)));
    for (const auto& ids : p.facet_vertices) f.max_cones.push_back({ids});
    return f;
}

inline Fan random_complete_fan(Rng& rng, std::size_t n) {
    std::vector<QVec> pts;
    QVec neg(n, Rat(-1));
    for (std::size_t i = 0; i < n; ++i) {
        QVec e(n);
        e[i] = 1;
        pts.push_back(e);
    }
    pts.push_back(neg);
    for (int k = 0; k < static_cast<int>(rng.uniform(1, 5)); ++k) {
        QVec v;
        for (std::size_t i = 0; i < n; ++i) v.emplace_back(rng.uniform(-3, 3));
        pts.push_back(v);
    }
    return face_fan(convex_hull(pts));
}

// Independent coverage oracle: does every probe direction lie in some maximal cone?
inline std::optional<IVec> uncovered_direction(const Fan& f, const std::vector<IVec>& probes) {
    std::vector<ConeHRep> hreps;
    for (const auto& c : f.max_cones) hreps.push_back(cone_hrep(f, c));
    for (const auto& d : probes)
        if (std::none_of(hreps.begin(), hreps.end(), [&](const ConeHRep& h) { return h.contains(to_qvec(d)); }))
            return d;
    return std::nullopt;
}

inline std::vector<IVec> random_directions(Rng& rng, std::size_t n, int count) {
    std::vector<IVec> out;
    while (static_cast<int>(out.size()) < count) {
        IVec d;
        for (std::size_t i = 0; i < n; ++i) d.push_back(rng.uniform(-1000, 1000));
        if (std::any_of(d.begin(), d.end(), [](auto x) { return x != 0; })) out.push_back(d);
    }
    return out;
}

// Both pieces of p cut by x_s = c, as hulls of the vertices on each side
// plus every segment crossing.
inline std::pair<VPolytope, VPolytope> cut(const VPolytope& p, std::size_t s, const Rat& c) {
    std::vector<QVec> lo, hi;
    for (const auto& v : p.vertices) {
        if (v[s] <= c) lo.push_back(v);
        if (v[s] >= c) hi.push_back(v);
    }
    for (const auto& a : p.vertices)
        for (const auto& b : p.vertices)
            if (a[s] < c && b[s] > c) {
                Rat t = (c - a[s]) / (b[s] - a[s]);
                QVec x = a + t * (b - a);
                lo.push_back(x);
                hi.push_back(x);
            }
    return {convex_hull(lo), convex_hull(hi)};
}

inline MomentData sum(const MomentData& a, const MomentData& b) {
    MomentData m{a.volume + b.volume, a.first_moments + b.first_moments, {}};
    m.barycentre = (Rat(1) / m.volume) * m.first_moments;
    return m;
}

inline bool same(const MomentData& a, const MomentData& b) {
    return a.volume == b.volume && a.first_moments == b.first_moments && a.barycentre == b.barycentre;
}

// Each check returns an empty string on success, a description otherwise.

inline std::string check_triangulation_additivity(Rng& rng) {
    VPolytope p = random_polytope(rng);
    MomentData whole = moments(p);
    MomentData cells{Rat(), QVec(p.dim), {}};
    for (const auto& s : triangulate(p)) {
        cells.volume += s.volume();
        if (s.volume().sign() <= 0) return "degenerate cell in triangulation";
        QVec mean(p.dim);
        for (const auto& w : s.vertices) mean = mean + w;
        cells.first_moments = cells.first_moments + (s.volume() / Rat(static_cast<long long>(p.dim + 1))) * mean;
    }
    if (cells.volume != whole.volume || cells.first_moments != whole.first_moments)
        return "cell sums differ from moments()";
    const auto s = static_cast<std::size_t>(rng.uniform(0, p.dim - 1));
    Rat lo = p.vertices.front()[s], hi = lo;
    for (const auto& v : p.vertices) {
        lo = std::min(lo, v[s]);
        hi = std::max(hi, v[s]);
    }
    Rat t = Rat(BigInt(rng.uniform(1, 9)), BigInt(10));
    auto [a, b] = cut(p, s, lo + t * (hi - lo));
    if (!same(sum(moments(a), moments(b)), whole)) return "cut pieces do not add up to the whole";
    return {};
}

inline std::string check_permutation_invariance(Rng& rng) {
    VPolytope p = random_polytope(rng);
    std::vector<QVec> pts = p.points;
    pts.push_back(pts.front());
    QVec inner(p.dim);
    for (const auto& v : p.vertices) inner = inner + v;
    pts.push_back((Rat(1) / Rat(static_cast<long long>(p.vertices.size()))) * inner);
    rng.shuffle(pts);
    VPolytope q = convex_hull(pts);
    if (q.vertices != p.vertices) return "vertex set changed";
    auto fp = p.facets, fq = q.facets;
    std::sort(fp.begin(), fp.end());
    std::sort(fq.begin(), fq.end());
    if (fp != fq) return "facet set changed";
    if (!same(moments(p), moments(q))) return "moments changed";
    return {};
}

inline std::string check_affine_equivariance(Rng& rng) {
    VPolytope p = random_polytope(rng);
    QMat t = random_unimodular(rng, p.dim);
    if (det(t).abs() != Rat(1)) return "generator produced a non-unimodular matrix";
    QVec shift = rng.rat_vec(p.dim, 5, 4);
    MomentData m = moments(p), mt = moments(affine_image(p, t, shift));
    if (mt.volume != m.volume) return "volume not preserved";
    if (mt.barycentre != t * m.barycentre + shift) return "barycentre not transported";
    return {};
}

inline std::string check_negation_antisymmetry(Rng& rng) {
    VPolytope p = random_polytope(rng);
    MomentData m = moments(p), mn = moments(negated(p));
    if (mn.volume != m.volume) return "volume changed under negation";
    if (mn.first_moments != -m.first_moments) return "first moments not negated";
    return {};
}

inline std::string check_futaki_linearity(Rng& rng) {
    MomentData m = moments(random_polytope(rng));
    const std::size_t n = m.first_moments.size();
    TorusField a{rng.rat_vec(n, 6, 5), rng.rat_vec(n, 6, 5)};
    TorusField b{rng.rat_vec(n, 6, 5), rng.rat_vec(n, 6, 5)};
    Rat alpha = rng.rat(7, 6), beta = rng.rat(7, 6);
    Rat lhs = futaki_real(m, alpha * a + beta * b).moment_factor;
    Rat rhs = alpha * futaki_real(m, a).moment_factor + beta * futaki_real(m, b).moment_factor;
    if (lhs != rhs) return "rational factor is not linear";
    double direct = futaki_real(m, a).re_value, composed = 0;
    auto rep = futaki_report(m);
    for (std::size_t s = 0; s < n; ++s) composed += a.re[s].to_double() * rep.re_futaki_basis[s];
    if (std::abs(direct - composed) > 1e-9 * (1 + std::abs(direct))) return "basis decomposition disagrees";
    return {};
}

struct PropertySuite {
    const char* name;
    std::string (*check)(Rng&);
};

inline const std::vector<PropertySuite>& property_suites() {
    static const std::vector<PropertySuite> suites{
        {"triangulation additivity", check_triangulation_additivity},
        {"input permutation invariance", check_permutation_invariance},
        {"unimodular affine equivariance", check_affine_equivariance},
        {"negation antisymmetry", check_negation_antisymmetry},
        {"futaki linearity", check_futaki_linearity},
    };
    return suites;
}

} // namespace toric::testing
