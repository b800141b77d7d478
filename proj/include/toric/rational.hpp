#pragma once

/*
 * Exact rational scalars.
 *
 * Rat is a thin value type over boost's normalized cpp_rational: after every
 * operation the numerator and denominator are coprime, the denominator is
 * positive, and zero is 0/1.
 *
 * Text form is "p/q" (q > 0) or "p" when q = 1.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace toric {

using BigInt = boost::multiprecision::cpp_int;

class Rat {
public:
    using value_type = boost::multiprecision::cpp_rational;

    Rat() = default;
    Rat(int v) : v_(v) {}
    Rat(long v) : v_(v) {}
    Rat(long long v) : v_(v) {}
    Rat(const BigInt& v) : v_(v) {}
    Rat(const BigInt& num, const BigInt& den) {
        if (den == 0)
            throw std::domain_error("rational with zero denominator");
        v_ = value_type(num, den);
    }

    static Rat parse(std::string_view text);
    static Rat parse_decimal(std::string_view text);
    // Exact value of a finite double (every double is a dyadic rational).
    static Rat from_double(double d);

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }

    int sign() const { return v_.sign(); }
    bool is_zero() const { return v_.is_zero(); }
    bool is_integer() const { return den() == 1; }

    BigInt floor() const {
        BigInt n = num(), d = den();
        BigInt q = n / d;
        if (n % d != 0 && n < 0) --q;
        return q;
    }
    BigInt ceil() const {
        BigInt n = num(), d = den();
        BigInt q = n / d;
        if (n % d != 0 && n > 0) ++q;
        return q;
    }

    double to_double() const { return v_.convert_to<double>(); }
    std::string str() const {
        if (is_integer()) return num().str();
        return num().str() + "/" + den().str();
    }

    Rat abs() const { return sign() < 0 ? -*this : *this; }

    Rat operator-() const { Rat r; r.v_ = -v_; return r; }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    value_type v_;
};

namespace detail {

inline BigInt parse_bigint(std::string_view s, std::string_view whole) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size())
        throw std::invalid_argument("malformed rational: \"" + std::string(whole) + "\"");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("malformed rational: \"" + std::string(whole) + "\"");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

} // namespace detail

inline Rat Rat::parse(std::string_view text) {
    std::string_view s = detail::trim(text);
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rat(detail::parse_bigint(s, text));
    std::string_view den = s.substr(slash + 1);
    if (!den.empty() && (den.front() == '-' || den.front() == '+'))
        throw std::invalid_argument("denominator must be an unsigned positive integer: \"" +
                                    std::string(text) + "\"");
    BigInt d = detail::parse_bigint(den, text);
    if (d == 0)
        throw std::invalid_argument("zero denominator: \"" + std::string(text) + "\"");
    return Rat(detail::parse_bigint(s.substr(0, slash), text), d);
}

// Accepts everything parse() does plus plain decimals such as "-0.25".
inline Rat Rat::parse_decimal(std::string_view text) {
    std::string_view s = detail::trim(text);
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return parse(s);
    std::string digits(s.substr(0, dot));
    std::string_view frac = s.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos)
        throw std::invalid_argument("malformed decimal: \"" + std::string(text) + "\"");
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    digits += frac;
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Rat(detail::parse_bigint(digits, text), scale);
}

inline Rat Rat::from_double(double d) {
    if (!std::isfinite(d)) throw std::domain_error("non-finite double");
    if (d == 0.0) return Rat();
    int exp = 0;
    double mant = std::frexp(d, &exp);  // d = mant * 2^exp, 0.5 <= |mant| < 1
    auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    BigInt num = m, den = 1;
    if (exp > 0) num <<= exp;
    else den <<= -exp;
    return Rat(num, den);
}

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

} // namespace toric
