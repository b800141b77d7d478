#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace toric;
using namespace toric::testing;

namespace {

const Fan& fan_of(const char* name) { return find_entry(name)->fan.value(); }

EmbeddingData single_point(std::size_t n) {
    EmbeddingData e;
    e.exponents.push_back(IVec(n, 0));
    return e;
}

double worst_slack(const EmbeddingData& e, const VPolytope& kp, const std::vector<std::vector<double>>& pts) {
    double worst = 0;
    for (const auto& x : pts) {
        auto mu = moment_map(e, x);
        for (const auto& h : kp.facets) worst = std::min(worst, h.eval(std::span<const double>(mu)));
    }
    return worst;
}

} // namespace

TEST(TorusField, Parse) {
    auto t = TorusField::parse("1, -1/2, 0.25");
    EXPECT_EQ(t.re, (QVec{Rat(1), Rat::parse("-1/2"), Rat::parse("1/4")}));
    EXPECT_EQ(t.im, QVec(3));
    auto c = TorusField::parse("i,2-3i,1/2+1/3i,-i");
    EXPECT_EQ(c.re, (QVec{Rat(0), Rat(2), Rat::parse("1/2"), Rat(0)}));
    EXPECT_EQ(c.im, (QVec{Rat(1), Rat(-3), Rat::parse("1/3"), Rat(-1)}));
    EXPECT_THROW(TorusField::parse("1,,2"), std::invalid_argument);
    EXPECT_THROW(TorusField::parse("x"), std::invalid_argument);
}

TEST(Futaki, SymmetricPolytopesVanish) {
    for (const char* name : {"p1", "p1xp1", "p2", "p3"}) {
        const Fan& f = fan_of(name);
        auto rep = futaki_report(moments(checked_anticanonical_polytope(f)));
        for (double v : rep.re_futaki_basis) EXPECT_EQ(v, 0.0) << name;
        EXPECT_EQ(futaki_real(f, TorusField::real(QVec(f.rank, Rat(1)))).moment_factor, Rat(0)) << name;
    }
}

TEST(Futaki, X2TorusFieldIsNegative) {
    auto v = futaki_real(fan_of("x2"), TorusField::basis(3, 0));
    EXPECT_EQ(v.moment_factor, Rat::parse("2/3"));
    EXPECT_EQ(v.sign, -1);
    EXPECT_LT(v.re_value, 0.0);
    EXPECT_DOUBLE_EQ(v.re_value, -std::pow(2 * std::numbers::pi, 3) * 2.0 / 3.0);
}

TEST(Futaki, PurelyImaginaryFieldHasZeroRealPart) {
    auto v = futaki_real(fan_of("x2"), TorusField::parse("i,i,i"));
    EXPECT_EQ(v.moment_factor, Rat(0));
    EXPECT_EQ(v.re_value, 0.0);
    EXPECT_EQ(v.sign, 0);
}

TEST(Futaki, NonzeroControl) {
    auto v = futaki_real(fan_of("bl1p2"), TorusField::basis(2, 0));
    EXPECT_NE(v.moment_factor, Rat(0));
}

TEST(Futaki, SignLawOnCatalog) {
    for (const char* name : {"p1", "p2", "p3", "p1xp1", "bl1p2", "x1", "x2", "x3"}) {
        auto m = moments(checked_anticanonical_polytope(fan_of(name)));
        for (std::size_t s = 0; s < m.barycentre.size(); ++s) {
            auto v = futaki_real(m, TorusField::basis(m.barycentre.size(), s));
            EXPECT_EQ(v.sign, -m.barycentre[s].sign()) << name << " s=" << s;
            EXPECT_EQ((v.re_value > 0) - (v.re_value < 0), v.sign) << name << " s=" << s;
        }
    }
}

TEST(Futaki, Errors) {
    EXPECT_THROW(futaki_real(fan_of("x2"), TorusField::basis(2, 0)), std::invalid_argument);
    Fan f2{"F2", 2, {{1, 0}, {0, 1}, {-1, 2}, {0, -1}}, {{{0, 1}}, {{1, 2}}, {{2, 3}}, {{3, 0}}}};
    EXPECT_THROW(futaki_real(f2, TorusField::basis(2, 0)), NotAlmostFano);
    EXPECT_THROW(futaki_real(*find_entry("delta2-printed")->fan, TorusField::basis(3, 0)), IncompleteFan);
}

TEST(Futaki, Linearity) {
    Rng rng(77);
    for (int i = 0; i < 60; ++i) EXPECT_EQ(check_futaki_linearity(rng), "") << "case " << i;
}

TEST(Embedding, P1) {
    auto e = build_embedding(fan_of("p1"));
    EXPECT_EQ(e.k, BigInt(1));
    EXPECT_EQ(e.exponents, (std::vector<IVec>{{0}, {-1}, {1}}));
    EXPECT_EQ(e.N, 2u);
    std::vector<double> zero{0.0};
    EXPECT_DOUBLE_EQ(f_eval(e, zero), std::log(3.0));
    EXPECT_EQ(moment_map(e, zero)[0], 0.0);
}

TEST(Embedding, P3Has35Monomials) {
    auto e = build_embedding(fan_of("p3"));
    EXPECT_EQ(e.N, 34u);
    EXPECT_EQ(e.exponents.front(), (IVec{0, 0, 0}));
    std::set<IVec> distinct(e.exponents.begin(), e.exponents.end());
    EXPECT_EQ(distinct.size(), e.exponents.size());
}

TEST(Embedding, VertexRouteMatchesFanRoute) {
    const auto* x2 = find_entry("x2");
    auto a = build_embedding(*x2->fan);
    auto b = build_embedding(x2->polytope_from_vertices());
    EXPECT_EQ(a.exponents, b.exponents);
}

TEST(MomentMap, AtOriginIsMeanOfExponents) {
    auto e = build_embedding(fan_of("x3"));
    std::vector<double> zero(3, 0.0);
    auto mu = moment_map(e, zero);
    for (std::size_t k = 0; k < 3; ++k) {
        double mean = 0;
        for (const auto& u : e.exponents) mean += static_cast<double>(u[k]);
        EXPECT_NEAR(mu[k], mean / static_cast<double>(e.exponents.size()), 1e-12);
    }
    EXPECT_NEAR(f_eval(e, zero), std::log(static_cast<double>(e.N + 1)), 1e-12);
}

TEST(MomentMap, DominantTermFarOut) {
    auto e = build_embedding(fan_of("x2"));
    std::vector<double> x{37.3, 11.9, -81.7};  // generic: a single exponent dominates
    double best = -1e300;
    for (const auto& u : e.exponents)
        best = std::max(best, 2 * (x[0] * double(u[0]) + x[1] * double(u[1]) + x[2] * double(u[2])));
    EXPECT_NEAR(f_eval(e, x), best, 1e-6);
    EXPECT_TRUE(std::isfinite(f_eval(e, std::vector<double>{1e4, -1e4, 3e3})));
}

TEST(MomentMap, GradientSelftestAndContainment) {
    for (const char* name : {"p1", "p3", "x2"}) {
        const Fan& f = fan_of(name);
        auto e = build_embedding(f);
        std::vector<std::vector<double>> pts;
        EXPECT_LE(gradient_selftest(e, 100, 42, &pts), 1e-6) << name;
        VPolytope kp = scaled(checked_anticanonical_polytope(f), Rat(e.k));
        EXPECT_GE(worst_slack(e, kp, pts), -1e-9) << name;
    }
}

TEST(MomentMap, SinglePointIsConstant) {
    auto e = single_point(2);
    EXPECT_EQ(gradient_selftest(e, 10, 1), 0.0);
    EXPECT_EQ(moment_map(e, std::vector<double>{1.5, -2.0}), (std::vector<double>{0.0, 0.0}));
}

TEST(MomentMap, SelftestIsSeeded) {
    auto e = build_embedding(fan_of("x1"));
    EXPECT_EQ(gradient_selftest(e, 20, 5), gradient_selftest(e, 20, 5));
    EXPECT_THROW(gradient_selftest(e, 0, 5), std::invalid_argument);
}
