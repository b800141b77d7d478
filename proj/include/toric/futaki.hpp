#pragma once

/*
 * Real part of the generalized Futaki invariant on the torus Lie algebra,
 * and the moment map of the anticanonical embedding.
 *
 * For eta = sum_s eta^s t_s d/dt_s,
 *
 *     Re F(eta) = -(2 pi)^n * sum_s Re(eta^s) * integral_{P_{-K}} y_s dy.
 *
 * The rational factor sum_s Re(eta^s) * integral y_s is exact, so the sign of
 * Re F is decided without rounding; (2 pi)^n is applied once, in double.
 *
 * The moment map comes from f(x) = log sum_j exp(2 <x, u_j>) over the
 * lattice points u_j of k P_{-K}: mu(x) = (1/2) grad f(x), a softmax-weighted
 * mean of the u_j.
 */

#include "fano.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace toric {

// eta = sum_s (re[s] + i im[s]) t_s d/dt_s. Coefficients are exact; doubles
// convert exactly via Rat::from_double.
struct TorusField {
    QVec re;
    QVec im;

    std::size_t rank() const { return re.size(); }

    static TorusField real(QVec re) {
        TorusField t{std::move(re), {}};
        t.im.assign(t.re.size(), Rat());
        return t;
    }
    static TorusField basis(std::size_t n, std::size_t s) {
        QVec v(n);
        v.at(s) = 1;
        return real(std::move(v));
    }

    // Comma-separated complex coefficients such as "1", "-1/2", "0.25", "i", "2-3i", "1/2+1/3i".
    static TorusField parse(std::string_view text);

    friend TorusField operator+(const TorusField& a, const TorusField& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend TorusField operator*(const Rat& s, const TorusField& a) { return {s * a.re, s * a.im}; }
};

inline TorusField TorusField::parse(std::string_view text) {
    TorusField t;
    auto parse_coef = [](std::string_view s, std::string_view whole) -> Rat {
        if (s.empty() || s == "+") return Rat(1);
        if (s == "-") return Rat(-1);
        try {
            return Rat::parse_decimal(s);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed field coefficient \"" + std::string(whole) + "\"");
        }
    };
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string tok;
        for (char ch : text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start))
            if (ch != ' ' && ch != '\t') tok += ch;
        if (tok.empty()) throw std::invalid_argument("empty field coefficient in \"" + std::string(text) + "\"");
        Rat re, im;
        if (tok.back() == 'i') {
            std::string body = tok.substr(0, tok.size() - 1);
            std::size_t split = std::string::npos;
            for (std::size_t k = body.size(); k-- > 1;)
                if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/') {
                    split = k;
                    break;
                }
            if (split == std::string::npos) {
                im = parse_coef(body, tok);
            } else {
                re = parse_coef(body.substr(0, split), tok);
                im = parse_coef(body.substr(split), tok);
            }
        } else {
            re = parse_coef(tok, tok);
        }
        t.re.push_back(re);
        t.im.push_back(im);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return t;
}

inline double two_pi_pow(std::size_t n) { return std::pow(2.0 * std::numbers::pi, static_cast<double>(n)); }

struct FutakiValue {
    Rat moment_factor;  // sum_s Re(eta^s) * integral y_s dy, exact
    double re_value = 0;  // -(2 pi)^n * moment_factor
    int sign = 0;         // sign of re_value, decided on the exact factor
    double im_value = 0;  // always 0 on Lie(T): F(d/dtheta_s) = 0 for a C_T-invariant metric
};

inline FutakiValue futaki_real(const MomentData& m, const TorusField& eta) {
    if (eta.rank() != m.first_moments.size())
        throw std::invalid_argument("futaki_real: field has " + std::to_string(eta.rank()) +
                                    " coefficients, polytope has rank " + std::to_string(m.first_moments.size()));
    FutakiValue v;
    v.moment_factor = dot(std::span<const Rat>(eta.re), std::span<const Rat>(m.first_moments));
    v.sign = -v.moment_factor.sign();
    v.re_value = v.moment_factor.is_zero() ? 0.0 : -two_pi_pow(eta.rank()) * v.moment_factor.to_double();
    return v;
}

class NotAlmostFano : public std::runtime_error {
public:
    explicit NotAlmostFano(AlmostFanoReport r)
        : std::runtime_error("fan does not define an almost Fano variety"), report_(std::move(r)) {}
    const AlmostFanoReport& report() const { return report_; }

private:
    AlmostFanoReport report_;
};

class IncompleteFan : public std::runtime_error {
public:
    IncompleteFan() : std::runtime_error("fan is not complete") {}
};

// The anticanonical polytope of a complete almost Fano fan; throws otherwise.
inline VPolytope checked_anticanonical_polytope(const Fan& f, GorensteinData* out = nullptr) {
    auto rep = validate_fan(f);
    if (!rep.axioms_ok || !rep.complete) throw IncompleteFan();
    auto g = gorenstein_data(f);
    auto af = is_almost_fano(f, g);
    if (!af.almost_fano) throw NotAlmostFano(af);
    if (out) *out = g;
    return anticanonical_polytope(f, g);
}

inline FutakiValue futaki_real(const Fan& f, const TorusField& eta) {
    if (eta.rank() != f.rank) throw std::invalid_argument("futaki_real: field rank does not match fan rank");
    return futaki_real(moments(checked_anticanonical_polytope(f)), eta);
}

struct FutakiReport {
    QVec barycentre_a;         // of P_{-K}
    Rat volume;
    Rat degree;                // n! * volume = (-K)^n
    QVec first_moments;
    std::vector<double> re_futaki_basis;  // Re F(t_s d/dt_s)
    std::vector<TorusField> fields;
    std::vector<FutakiValue> values;
};

inline FutakiReport futaki_report(const MomentData& m, const std::vector<TorusField>& fields = {}) {
    FutakiReport r;
    const std::size_t n = m.first_moments.size();
    r.barycentre_a = m.barycentre;
    r.volume = m.volume;
    BigInt fact = 1;
    for (std::size_t k = 2; k <= n; ++k) fact *= k;
    r.degree = Rat(fact) * m.volume;
    r.first_moments = m.first_moments;
    for (std::size_t s = 0; s < n; ++s) r.re_futaki_basis.push_back(futaki_real(m, TorusField::basis(n, s)).re_value);
    r.fields = fields;
    for (const auto& eta : fields) r.values.push_back(futaki_real(m, eta));
    return r;
}

struct EmbeddingData {
    BigInt k = 1;                // Gorenstein index
    std::vector<IVec> exponents;  // lattice points of k P_{-K}, zero first
    std::size_t N = 0;           // ambient projective dimension

    std::size_t rank() const { return exponents.empty() ? 0 : exponents[0].size(); }
};

inline EmbeddingData embedding_from_points(std::vector<IVec> pts, BigInt k) {
    EmbeddingData e;
    e.k = std::move(k);
    auto zero = std::find_if(pts.begin(), pts.end(),
                             [](const IVec& u) { return std::all_of(u.begin(), u.end(), [](auto x) { return x == 0; }); });
    if (zero == pts.end()) throw std::invalid_argument("embedding: the origin is not a lattice point of the polytope");
    std::rotate(pts.begin(), zero, zero + 1);
    e.exponents = std::move(pts);
    e.N = e.exponents.size() - 1;
    return e;
}

inline EmbeddingData build_embedding(const Fan& f) {
    GorensteinData g;
    checked_anticanonical_polytope(f, &g);
    auto d = TCartierDivisor::uniform(f.rays.size(), to_int64(g.index));
    return embedding_from_points(lattice_points(divisor_polytope(f, d)), g.index);
}

// Embedding data straight from P_{-K} given as a V-polytope.
inline EmbeddingData build_embedding(const VPolytope& anticanonical, const BigInt& k = 1) {
    return embedding_from_points(lattice_points(scaled(anticanonical, Rat(k))), k);
}

namespace detail {

inline std::vector<double> log_weights(const EmbeddingData& e, std::span<const double> x) {
    if (x.size() != e.rank()) throw std::invalid_argument("moment map: point has wrong dimension");
    std::vector<double> z;
    z.reserve(e.exponents.size());
    for (const auto& u : e.exponents) {
        double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * static_cast<double>(u[i]);
        z.push_back(2.0 * s);
    }
    return z;
}

} // namespace detail

// f(x) = log sum_j exp(2 <x, u_j>), shifted by the largest exponent.
inline double f_eval(const EmbeddingData& e, std::span<const double> x) {
    auto z = detail::log_weights(e, x);
    const double zmax = *std::max_element(z.begin(), z.end());
    double s = 0;
    for (double zj : z) s += std::exp(zj - zmax);
    return zmax + std::log(s);
}

inline std::vector<double> moment_map(const EmbeddingData& e, std::span<const double> x) {
    auto z = detail::log_weights(e, x);
    const double zmax = *std::max_element(z.begin(), z.end());
    double total = 0;
    for (auto& zj : z) total += (zj = std::exp(zj - zmax));
    std::vector<double> mu(x.size(), 0.0);
    for (std::size_t j = 0; j < z.size(); ++j)
        for (std::size_t k = 0; k < mu.size(); ++k) mu[k] += static_cast<double>(e.exponents[j][k]) * z[j];
    for (auto& m : mu) m /= total;
    return mu;
}

inline constexpr double kFdStep = 1e-5;

// Random points in [-3, 3]^n: max over points and coordinates of
// |central difference of f - 2 mu|.
inline double gradient_selftest(const EmbeddingData& e, int trials, std::uint64_t seed,
                                std::vector<std::vector<double>>* points = nullptr) {
    if (trials < 1) throw std::invalid_argument("gradient_selftest: trials must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    const std::size_t n = e.rank();
    double worst = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> x(n);
        for (auto& xi : x) xi = dist(rng);
        auto mu = moment_map(e, x);
        for (std::size_t k = 0; k < n; ++k) {
            auto xp = x, xm = x;
            xp[k] += kFdStep;
            xm[k] -= kFdStep;
            double fd = (f_eval(e, xp) - f_eval(e, xm)) / (2 * kFdStep);
            worst = std::max(worst, std::abs(fd - 2 * mu[k]));
        }
        if (points) points->push_back(std::move(x));
    }
    return worst;
}

} // namespace toric
