#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <tuple>
#include <vector>

#include "galchar/cyclotomic.hpp"
#include "galchar/numbers.hpp"

namespace galchar {

namespace fpoly {

// dense polynomials over F_p, coefficients low-to-high, normalized (no
// trailing zeros except the zero polynomial = empty vector)

inline void trim(std::vector<int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<int>((c[i + j] + static_cast<std::int64_t>(a[i]) * b[j]) % p);
    trim(c);
    return c;
}

inline std::vector<int> mod(std::vector<int> a, const std::vector<int>& m, std::int64_t p) {
    std::int64_t lead_inv = mod_inverse(m.back(), p);
    while (a.size() >= m.size()) {
        std::int64_t c = (a.back() * lead_inv) % p;
        std::size_t shift = a.size() - m.size();
        for (std::size_t j = 0; j < m.size(); ++j)
            a[shift + j] = static_cast<int>(((a[shift + j] - c * m[j]) % p + p) % p);
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline std::vector<int> powmod_x(const Int& e, const std::vector<int>& m, std::int64_t p) {
    // x^e mod m
    std::vector<int> result{1}, base{0, 1};
    base = mod(base, m, p);
    Int k = e;
    while (k > 0) {
        if ((k & 1) != 0) result = mod(mul(result, base, p), m, p);
        base = mod(mul(base, base, p), m, p);
        k >>= 1;
    }
    return result;
}

inline std::vector<int> gcd(std::vector<int> a, std::vector<int> b, std::int64_t p) {
    while (!b.empty()) {
        auto r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline bool irreducible(const std::vector<int>& f, std::int64_t p) {
    int deg = static_cast<int>(f.size()) - 1;
    if (deg < 1) return false;
    if (deg == 1) return true;
    // x^(p^deg) == x mod f
    Int pd = int_pow(Int(p), static_cast<std::uint64_t>(deg));
    auto xq = powmod_x(pd, f, p);
    std::vector<int> x = mod({0, 1}, f, p);
    if (xq != x) return false;
    // gcd(x^(p^(deg/l)) - x, f) == 1 for every prime l | deg
    for (int l = 2; l <= deg; ++l) {
        if (deg % l != 0) continue;
        bool prime = true;
        for (int t = 2; t * t <= l; ++t)
            if (l % t == 0) prime = false;
        if (!prime) continue;
        Int pe = int_pow(Int(p), static_cast<std::uint64_t>(deg / l));
        auto xe = powmod_x(pe, f, p);
        // xe - x
        std::vector<int> diff = xe;
        diff.resize(std::max(diff.size(), x.size()), 0);
        for (std::size_t i = 0; i < x.size(); ++i)
            diff[i] = static_cast<int>(((diff[i] - x[i]) % p + p) % p);
        trim(diff);
        auto g = gcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace fpoly

// F_{p^deg} with elements packed as base-p digit strings (value = sum c_i p^i);
// multiplication through discrete-log tables, generator fixed at construction.
class SmallField {
public:
    SmallField(std::int64_t p, int deg) : p_(p), deg_(deg) {
        size_ = 1;
        for (int i = 0; i < deg; ++i) {
            size_ *= p;
            if (size_ > (1 << 20)) throw capacity_error("SmallField: size exceeds 2^20");
        }
        find_modulus();
        build_tables(find_any_generator());
    }

    std::int64_t p() const { return p_; }
    int degree() const { return deg_; }
    std::int64_t size() const { return size_; }
    std::int64_t generator() const { return exp_[1 % (size_ - 1 == 0 ? 1 : size_ - 1)]; }
    const std::vector<int>& modulus() const { return modulus_; }

    std::int64_t zero() const { return 0; }
    std::int64_t one() const { return 1; }

    std::int64_t add(std::int64_t a, std::int64_t b) const {
        std::int64_t result = 0, place = 1;
        for (int i = 0; i < deg_; ++i) {
            result += ((a % p_ + b % p_) % p_) * place;
            a /= p_;
            b /= p_;
            place *= p_;
        }
        return result;
    }

    std::int64_t neg(std::int64_t a) const {
        std::int64_t result = 0, place = 1;
        for (int i = 0; i < deg_; ++i) {
            result += ((p_ - a % p_) % p_) * place;
            a /= p_;
            place *= p_;
        }
        return result;
    }

    std::int64_t sub(std::int64_t a, std::int64_t b) const { return add(a, neg(b)); }

    std::int64_t mul(std::int64_t a, std::int64_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (size_ - 1)];
    }

    std::int64_t inv(std::int64_t a) const {
        if (a == 0) throw invalid_input_error("SmallField: zero has no inverse");
        return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
    }

    std::int64_t pow_gen(std::int64_t e) const {
        std::int64_t m = size_ - 1;
        return exp_[((e % m) + m) % m];
    }

    std::int64_t pow(std::int64_t a, Int e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        Int m = size_ - 1;
        Int k = ((e % m) + m) % m;
        return exp_[static_cast<std::int64_t>((Int(log_[a]) * k) % m)];
    }

    std::int64_t log(std::int64_t a) const {
        if (a == 0) throw invalid_input_error("SmallField: log of zero");
        return log_[a];
    }

    // element from a scalar c in F_p
    std::int64_t from_prime_subfield(std::int64_t c) const { return ((c % p_) + p_) % p_; }

    // minimal polynomial of a over F_p, coefficients low-to-high in F_p
    std::vector<int> min_poly_prime(std::int64_t a) const {
        std::vector<std::int64_t> conj{a};
        std::int64_t y = frobenius_p(a);
        while (y != a) {
            conj.push_back(y);
            y = frobenius_p(y);
        }
        // product of (x - conj_i) over the field, coefficients land in F_p
        std::vector<std::int64_t> poly{1};
        for (std::int64_t root : conj) {
            std::vector<std::int64_t> next(poly.size() + 1, 0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] = add(next[i + 1], poly[i]);
                next[i] = add(next[i], mul(poly[i], neg(root)));
            }
            poly = std::move(next);
        }
        std::vector<int> out(poly.size());
        for (std::size_t i = 0; i < poly.size(); ++i) {
            if (poly[i] >= p_) throw falsification_error("min_poly_prime: coefficient not in F_p");
            out[i] = static_cast<int>(poly[i]);
        }
        return out;
    }

    std::int64_t frobenius_p(std::int64_t a) const { return pow(a, Int(p_)); }

    // evaluate an F_p polynomial at a field element
    std::int64_t eval_prime_poly(const std::vector<int>& f, std::int64_t a) const {
        std::int64_t acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = add(mul(acc, a), from_prime_subfield(f[i]));
        return acc;
    }

    // re-fix the generator to exp_[old_log] without changing the field
    void set_generator_power(std::int64_t j) {
        if (gcd64(j, size_ - 1) != 1)
            throw invalid_input_error("set_generator_power: j not coprime to group order");
        build_tables(exp_[((j % (size_ - 1)) + (size_ - 1)) % (size_ - 1)]);
    }

private:
    void find_modulus() {
        if (deg_ == 1) {
            modulus_ = {0, 1}; // x itself; constants reduce trivially
            return;
        }
        std::int64_t lower_count = size_ / p_; // p^(deg-1) combinations of lower coefficients
        for (std::int64_t code = 0; code < lower_count * p_; ++code) {
            std::vector<int> f(deg_ + 1, 0);
            f[deg_] = 1;
            std::int64_t c = code;
            for (int i = 0; i < deg_; ++i) {
                f[i] = static_cast<int>(c % p_);
                c /= p_;
            }
            if (fpoly::irreducible(f, p_)) {
                modulus_ = f;
                return;
            }
        }
        throw falsification_error("SmallField: no irreducible polynomial found");
    }

    std::int64_t raw_mul(std::int64_t a, std::int64_t b) const {
        // polynomial multiplication mod modulus on digit vectors
        std::vector<int> pa(deg_), pb(deg_);
        std::int64_t ta = a, tb = b;
        for (int i = 0; i < deg_; ++i) {
            pa[i] = static_cast<int>(ta % p_);
            ta /= p_;
            pb[i] = static_cast<int>(tb % p_);
            tb /= p_;
        }
        fpoly::trim(pa);
        fpoly::trim(pb);
        auto pc = fpoly::mod(fpoly::mul(pa, pb, p_), modulus_, p_);
        std::int64_t result = 0, place = 1;
        for (std::size_t i = 0; i < pc.size(); ++i) {
            result += pc[i] * place;
            place *= p_;
        }
        return result;
    }

    std::int64_t raw_pow(std::int64_t a, std::int64_t e) const {
        std::int64_t result = 1;
        while (e) {
            if (e & 1) result = raw_mul(result, a);
            a = raw_mul(a, a);
            e >>= 1;
        }
        return result;
    }

    std::int64_t find_any_generator() const {
        std::int64_t m = size_ - 1;
        std::vector<std::int64_t> prime_factors;
        std::int64_t t = m;
        for (std::int64_t f = 2; f * f <= t; ++f)
            if (t % f == 0) {
                prime_factors.push_back(f);
                while (t % f == 0) t /= f;
            }
        if (t > 1) prime_factors.push_back(t);
        for (std::int64_t v = 1; v < size_; ++v) {
            bool ok = true;
            for (std::int64_t f : prime_factors)
                if (raw_pow(v, m / f) == 1) {
                    ok = false;
                    break;
                }
            if (ok) return v;
        }
        throw falsification_error("SmallField: no generator found");
    }

    void build_tables(std::int64_t g) {
        std::int64_t m = size_ - 1;
        exp_.assign(static_cast<std::size_t>(std::max<std::int64_t>(m, 1)), 0);
        log_.assign(static_cast<std::size_t>(size_), -1);
        std::int64_t v = 1;
        for (std::int64_t k = 0; k < std::max<std::int64_t>(m, 1); ++k) {
            exp_[k] = v;
            log_[v] = k;
            v = raw_mul(v, g);
        }
        if (v != 1) throw falsification_error("SmallField: generator order mismatch");
    }

    std::int64_t p_;
    int deg_;
    std::int64_t size_;
    std::vector<int> modulus_;
    std::vector<std::int64_t> exp_, log_;
};

enum class Side { Phi, Theta };

// Frobenius orbit of an exponent modulo q^m - 1, stored at its exact level
// with the minimal member as representative.
struct CyclotomicCoset {
    Side side = Side::Phi;
    std::int64_t q = 2;
    int level = 1;
    std::int64_t rep = 0;

    std::int64_t modulus() const { return i64_pow(q, static_cast<std::uint64_t>(level)) - 1; }

    std::vector<std::int64_t> members() const {
        std::int64_t mod = modulus();
        std::vector<std::int64_t> out;
        std::int64_t e = rep;
        do {
            out.push_back(e);
            e = (e * q) % mod;
        } while (e != rep);
        std::sort(out.begin(), out.end());
        return out;
    }

    friend auto operator<=>(const CyclotomicCoset& a, const CyclotomicCoset& b) {
        return std::tie(a.side, a.q, a.level, a.rep) <=> std::tie(b.side, b.q, b.level, b.rep);
    }
    friend bool operator==(const CyclotomicCoset&, const CyclotomicCoset&) = default;
};

// Canonicalize exponent e at level m: descend to the smallest sublevel it
// lives at and pick the minimal orbit member.
inline CyclotomicCoset frobenius_coset(std::int64_t q, int m, std::int64_t e, Side side = Side::Phi) {
    if (m < 1) throw invalid_input_error("frobenius_coset: level must be positive");
    std::int64_t mod = i64_pow(q, static_cast<std::uint64_t>(m)) - 1;
    e = ((e % mod) + mod) % mod;
    for (std::int64_t m0 : divisors_of(m)) {
        std::int64_t sub_mod = i64_pow(q, static_cast<std::uint64_t>(m0)) - 1;
        std::int64_t ratio = mod / sub_mod;
        if (e % ratio != 0) continue;
        std::int64_t e0 = e / ratio;
        // minimal member of the q-cyclotomic coset of e0 mod sub_mod
        std::int64_t rep = e0, cur = e0;
        do {
            cur = (cur * q) % sub_mod;
            rep = std::min(rep, cur);
        } while (cur != e0);
        return {side, q, static_cast<int>(m0), rep};
    }
    throw falsification_error("frobenius_coset: unreachable");
}

// number of cosets of size exactly m (necklace count over q^m - 1 exponents)
inline std::int64_t coset_count_exact(std::int64_t q, int m) {
    std::int64_t total = 0;
    for (std::int64_t s : divisors_of(m))
        total += moebius(m / s) * (i64_pow(q, static_cast<std::uint64_t>(s)) - 1);
    return total / m;
}

inline std::vector<CyclotomicCoset> enumerate_cosets(std::int64_t q, Side side, int max_degree) {
    if (max_degree < 1) throw invalid_input_error("enumerate_cosets: max_degree must be positive");
    std::vector<CyclotomicCoset> out;
    for (int m = 1; m <= max_degree; ++m) {
        std::int64_t mod = i64_pow(q, static_cast<std::uint64_t>(m)) - 1;
        for (std::int64_t e = 0; e < mod; ++e) {
            CyclotomicCoset c = frobenius_coset(q, m, e, side);
            if (c.level == m && c.rep == e) out.push_back(c);
        }
    }
    return out;
}

// Tower F_q subset F_{q^2} subset ... with norm-compatible generators: the
// exponent map g_{m0}^k -> g_m^{k (q^m-1)/(q^m0-1)} is a field embedding for
// every m0 | m.
class FieldTower {
public:
    explicit FieldTower(std::int64_t q) : q_(q) {
        if (!prime_power_decompose(q, p_, r_)) throw invalid_input_error("FieldTower: q not a prime power");
    }

    std::int64_t q() const { return q_; }
    std::int64_t p() const { return p_; }
    int r() const { return r_; }
    int depth() const { return static_cast<int>(levels_.size()); }

    const SmallField& level(int m) {
        ensure_level(m);
        return *levels_[static_cast<std::size_t>(m - 1)];
    }

    void ensure_level(int m) {
        if (m < 1) throw invalid_input_error("FieldTower: level must be positive");
        while (static_cast<int>(levels_.size()) < m) build_next_level();
    }

    // Monic minimal polynomial over F_q of the coset's elements; coefficients
    // are packed F_q values low-to-high, degree = coset level.
    std::vector<std::int64_t> minimal_polynomial(const CyclotomicCoset& c) {
        if (c.side != Side::Phi) throw invalid_input_error("minimal_polynomial: Phi-side cosets only");
        if (c.q != q_) throw invalid_input_error("minimal_polynomial: coset from a different tower");
        int m = c.level;
        ensure_level(m);
        const SmallField& F = *levels_[static_cast<std::size_t>(m - 1)];
        std::int64_t mod = i64_pow(q_, static_cast<std::uint64_t>(m)) - 1;
        std::vector<std::int64_t> poly{1};
        std::int64_t e = c.rep;
        for (int i = 0; i < m; ++i) {
            std::int64_t root = F.pow_gen(e);
            std::vector<std::int64_t> next(poly.size() + 1, 0);
            for (std::size_t j = 0; j < poly.size(); ++j) {
                next[j + 1] = F.add(next[j + 1], poly[j]);
                next[j] = F.add(next[j], F.mul(poly[j], F.neg(root)));
            }
            poly = std::move(next);
            e = (e * q_) % mod;
        }
        std::vector<std::int64_t> out(poly.size());
        for (std::size_t j = 0; j < poly.size(); ++j) out[j] = project_to_base(m, poly[j]);
        return out;
    }

    // Map a level-m element lying in the F_q subfield to a base-field value.
    std::int64_t project_to_base(int m, std::int64_t y) {
        ensure_level(m);
        if (m == 1) return y;
        if (y == 0) return 0;
        const SmallField& F = *levels_[static_cast<std::size_t>(m - 1)];
        std::int64_t big = i64_pow(q_, static_cast<std::uint64_t>(m)) - 1;
        std::int64_t ratio = big / (q_ - 1);
        std::int64_t lg = F.log(y);
        if (lg % ratio != 0) throw falsification_error("project_to_base: element not in base subfield");
        return levels_[0]->pow_gen(lg / ratio);
    }

    // inverse of project_to_base
    std::int64_t embed_from_base(int m, std::int64_t x) {
        ensure_level(m);
        if (m == 1 || x == 0) return x;
        const SmallField& F = *levels_[static_cast<std::size_t>(m - 1)];
        std::int64_t big = i64_pow(q_, static_cast<std::uint64_t>(m)) - 1;
        std::int64_t ratio = big / (q_ - 1);
        return F.pow_gen(levels_[0]->log(x) * ratio);
    }

private:
    void build_next_level() {
        int m = static_cast<int>(levels_.size()) + 1;
        auto field = std::make_unique<SmallField>(p_, r_ * m);
        if (m > 1) {
            std::int64_t big = i64_pow(q_, static_cast<std::uint64_t>(m)) - 1;
            // choose a generator compatible with every sublevel
            std::vector<std::pair<std::int64_t, std::vector<int>>> constraints; // (ratio, minpoly)
            for (std::int64_t m0 : divisors_of(m)) {
                if (m0 == m) continue;
                std::int64_t sub = i64_pow(q_, static_cast<std::uint64_t>(m0)) - 1;
                const SmallField& S = *levels_[static_cast<std::size_t>(m0 - 1)];
                constraints.emplace_back(big / sub, S.min_poly_prime(S.pow_gen(1)));
            }
            bool found = false;
            for (std::int64_t j = 1; j < big && !found; ++j) {
                if (gcd64(j, big) != 1) continue;
                bool ok = true;
                for (const auto& [ratio, mp] : constraints) {
                    std::int64_t cand = field->pow_gen(j * (ratio % big) % big);
                    if (field->eval_prime_poly(mp, cand) != 0) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    field->set_generator_power(j);
                    found = true;
                }
            }
            if (!found) throw falsification_error("FieldTower: no compatible generator");
        }
        levels_.push_back(std::move(field));
    }

    std::int64_t q_, p_;
    int r_;
    std::vector<std::unique_ptr<SmallField>> levels_;
};

} // namespace galchar
