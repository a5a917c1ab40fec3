#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "galchar/errors.hpp"

namespace galchar {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// "a" or "a/b", matching the JSON wire encoding.
inline std::string rat_to_string(const Rational& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Rational rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den <= 0) throw invalid_input_error("rational denominator must be positive: " + s);
        return Rational(num, den);
    } catch (const std::exception&) {
        throw invalid_input_error("malformed rational: " + s);
    }
}

inline Int int_pow(Int base, std::uint64_t e) {
    Int result = 1;
    while (e) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

inline std::int64_t i64_pow(std::int64_t base, std::uint64_t e) {
    std::int64_t result = 1;
    while (e--) result *= base;
    return result;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd64(a, b) * b;
}

// modular inverse, m > 0, gcd(a, m) == 1
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, new_t = 1, r = m, new_r = ((a % m) + m) % m;
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        std::int64_t tmp = t - quot * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw invalid_input_error("mod_inverse: not invertible");
    return ((t % m) + m) % m;
}

} // namespace galchar
