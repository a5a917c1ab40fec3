#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "galchar/rational.hpp"

namespace galchar {

inline std::vector<std::int64_t> divisors_of(std::int64_t n) {
    std::vector<std::int64_t> divs;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            if (d != n / d) divs.push_back(n / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::int64_t moebius(std::int64_t n) {
    std::int64_t mu = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

namespace detail {

// quotient of exact division over Z[x]; polynomials low-to-high
inline std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    for (std::size_t i = quot.size(); i-- > 0;) {
        Int c = num[i + den.size() - 1] / den.back();
        quot[i] = c;
        if (c != 0)
            for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    return quot;
}

} // namespace detail

// n-th cyclotomic polynomial over Z, coefficients low-to-high, length phi(n)+1
inline const std::vector<Int>& cyclotomic_polynomial(std::int64_t n) {
    static std::map<std::int64_t, std::vector<Int>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // Phi_d = (x^d - 1) / prod of lower cyclotomics, filled in divisor order
    for (std::int64_t d : divisors_of(n)) {
        if (cache.count(d)) continue;
        std::vector<Int> pd(static_cast<std::size_t>(d) + 1, Int(0));
        pd[0] = -1;
        pd.back() = 1;
        for (std::int64_t e : divisors_of(d)) {
            if (e == d) continue;
            pd = detail::poly_div_exact(std::move(pd), cache.at(e));
        }
        cache.emplace(d, std::move(pd));
    }
    return cache.at(n);
}

inline Int cyclotomic_poly_value(std::int64_t s, const Int& p) {
    if (s < 1) throw invalid_input_error("cyclotomic_poly_value: s must be positive");
    const auto& poly = cyclotomic_polynomial(s);
    Int value = 0;
    for (std::size_t i = poly.size(); i-- > 0;) value = value * p + poly[i];
    return value;
}

// Element of Q[zeta_E] in the power basis reduced modulo the E-th cyclotomic
// polynomial. coeffs has length phi(E).
class CycNumber {
public:
    CycNumber() : order_(1), coeffs_(1, Rational(0)) {}
    explicit CycNumber(const Rational& r) : order_(1), coeffs_(1, r) {}
    explicit CycNumber(std::int64_t v) : order_(1), coeffs_(1, Rational(v)) {}
    explicit CycNumber(const Int& v) : order_(1), coeffs_(1, Rational(v)) {}

    CycNumber(std::int64_t order, std::vector<Rational> raw_coeffs) : order_(order) {
        if (order < 1) throw invalid_input_error("CycNumber: order must be positive");
        coeffs_ = reduce(order, std::move(raw_coeffs));
    }

    static CycNumber root_of_unity(std::int64_t order, std::int64_t k) {
        if (order < 1) throw invalid_input_error("root_of_unity: order must be positive");
        k = ((k % order) + order) % order;
        std::vector<Rational> raw(static_cast<std::size_t>(k) + 1, Rational(0));
        raw.back() = 1;
        return CycNumber(order, std::move(raw));
    }

    std::int64_t order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        CycNumber t = *this;
        for (std::size_t i = 1; i < t.coeffs_.size(); ++i)
            if (t.coeffs_[i] != 0) return false;
        return true;
    }

    // precondition: is_rational()
    Rational rational_value() const {
        if (!is_rational()) throw invalid_input_error("CycNumber: not rational");
        return coeffs_[0];
    }

    CycNumber lifted(std::int64_t new_order) const {
        if (new_order % order_ != 0)
            throw invalid_input_error("CycNumber::lifted: order must be a multiple");
        if (new_order == order_) return *this;
        std::int64_t stride = new_order / order_;
        std::vector<Rational> raw(static_cast<std::size_t>((order_ - 1) * stride) + 1, Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) raw[i * stride] = coeffs_[i];
        return CycNumber(new_order, std::move(raw));
    }

    friend CycNumber operator+(const CycNumber& a, const CycNumber& b) {
        std::int64_t e = lcm64(a.order_, b.order_);
        CycNumber la = a.lifted(e), lb = b.lifted(e);
        for (std::size_t i = 0; i < la.coeffs_.size(); ++i) la.coeffs_[i] += lb.coeffs_[i];
        return la;
    }

    friend CycNumber operator-(const CycNumber& a, const CycNumber& b) {
        std::int64_t e = lcm64(a.order_, b.order_);
        CycNumber la = a.lifted(e), lb = b.lifted(e);
        for (std::size_t i = 0; i < la.coeffs_.size(); ++i) la.coeffs_[i] -= lb.coeffs_[i];
        return la;
    }

    CycNumber operator-() const {
        CycNumber r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend CycNumber operator*(const CycNumber& a, const CycNumber& b) {
        std::int64_t e = lcm64(a.order_, b.order_);
        CycNumber la = a.lifted(e), lb = b.lifted(e);
        std::vector<Rational> raw(la.coeffs_.size() + lb.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < la.coeffs_.size(); ++i) {
            if (la.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < lb.coeffs_.size(); ++j)
                raw[i + j] += la.coeffs_[i] * lb.coeffs_[j];
        }
        return CycNumber(e, std::move(raw));
    }

    CycNumber& operator+=(const CycNumber& b) { return *this = *this + b; }
    CycNumber& operator-=(const CycNumber& b) { return *this = *this - b; }
    CycNumber& operator*=(const CycNumber& b) { return *this = *this * b; }

    friend CycNumber operator*(const Rational& r, const CycNumber& a) {
        CycNumber out = a;
        for (auto& c : out.coeffs_) c *= r;
        return out;
    }

    // Galois twist zeta_E -> zeta_E^r; requires gcd(r, order) == 1.
    CycNumber galois_apply(std::int64_t r) const {
        r = ((r % order_) + order_) % order_;
        if (gcd64(r, order_) != 1) throw invalid_input_error("galois_apply: residue not coprime");
        std::vector<Rational> raw(static_cast<std::size_t>(order_), Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            raw[static_cast<std::size_t>((static_cast<std::int64_t>(i) * r) % order_)] += coeffs_[i];
        }
        return CycNumber(order_, std::move(raw));
    }

    CycNumber conjugate() const { return order_ == 1 ? *this : galois_apply(order_ - 1); }

    // multiplicative inverse via extended Euclid against the cyclotomic polynomial
    CycNumber inverse() const {
        if (is_zero()) throw invalid_input_error("CycNumber: division by zero");
        using Poly = std::vector<Rational>;
        auto deg = [](const Poly& f) {
            for (std::size_t i = f.size(); i-- > 0;)
                if (f[i] != 0) return static_cast<std::int64_t>(i);
            return std::int64_t(-1);
        };
        const auto& cyc_int = cyclotomic_polynomial(order_);
        Poly r0(cyc_int.size());
        for (std::size_t i = 0; i < cyc_int.size(); ++i) r0[i] = Rational(cyc_int[i]);
        Poly r1 = coeffs_;
        Poly s0(1, Rational(0)), s1(1, Rational(1)); // track coefficient of *this
        while (deg(r1) > 0) {
            // divide r0 by r1
            Poly quot(static_cast<std::size_t>(deg(r0) - deg(r1)) + 1, Rational(0));
            Poly rem = r0;
            std::int64_t d1 = deg(r1);
            Rational lead = r1[static_cast<std::size_t>(d1)];
            for (std::int64_t k = deg(rem); k >= d1; --k) {
                Rational c = rem[static_cast<std::size_t>(k)] / lead;
                if (c == 0) continue;
                quot[static_cast<std::size_t>(k - d1)] = c;
                for (std::int64_t j = 0; j <= d1; ++j)
                    rem[static_cast<std::size_t>(k - d1 + j)] -= c * r1[static_cast<std::size_t>(j)];
            }
            // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - quot * s1)
            Poly snew(std::max(s0.size(), quot.size() + s1.size()), Rational(0));
            for (std::size_t i = 0; i < s0.size(); ++i) snew[i] = s0[i];
            for (std::size_t i = 0; i < quot.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j) snew[i + j] -= quot[i] * s1[j];
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(snew);
        }
        std::int64_t d = deg(r1);
        if (d != 0) throw falsification_error("CycNumber::inverse: zero divisor modulo cyclotomic");
        Rational unit = r1[0];
        for (auto& c : s1) c /= unit;
        return CycNumber(order_, std::move(s1));
    }

    friend CycNumber operator/(const CycNumber& a, const CycNumber& b) {
        std::int64_t e = lcm64(a.order(), b.order());
        return a.lifted(e) * b.lifted(e).inverse();
    }

    friend bool operator==(const CycNumber& a, const CycNumber& b) {
        std::int64_t e = lcm64(a.order_, b.order_);
        return a.lifted(e).coeffs_ == b.lifted(e).coeffs_;
    }
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

    // total order for use as map key (after lifting to a common order)
    friend bool operator<(const CycNumber& a, const CycNumber& b) {
        std::int64_t e = lcm64(a.order_, b.order_);
        return a.lifted(e).coeffs_ < b.lifted(e).coeffs_;
    }

private:
    static std::vector<Rational> reduce(std::int64_t order, std::vector<Rational> raw) {
        const auto& cyc = cyclotomic_polynomial(order);
        std::size_t deg = cyc.size() - 1; // = phi(order)
        // fold powers >= order back first (zeta^order = 1)
        if (raw.size() > static_cast<std::size_t>(order)) {
            std::vector<Rational> folded(static_cast<std::size_t>(order), Rational(0));
            for (std::size_t i = 0; i < raw.size(); ++i)
                folded[i % static_cast<std::size_t>(order)] += raw[i];
            raw = std::move(folded);
        }
        while (raw.size() > deg) {
            Rational lead = raw.back();
            raw.pop_back();
            if (lead == 0) continue;
            std::size_t shift = raw.size() + 1 - cyc.size();
            for (std::size_t j = 0; j + 1 < cyc.size(); ++j)
                raw[shift + j] -= lead * Rational(cyc[j]);
        }
        raw.resize(deg, Rational(0));
        return raw;
    }

    std::int64_t order_;
    std::vector<Rational> coeffs_;
};

inline CycNumber cyc_reduce(const CycNumber& x) { return x; } // construction is canonical

} // namespace galchar
