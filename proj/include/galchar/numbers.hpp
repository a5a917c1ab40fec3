#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "galchar/cyclotomic.hpp"
#include "galchar/rational.hpp"

namespace galchar {

// q = p^r with p prime, r >= 1; returns false otherwise
inline bool prime_power_decompose(std::int64_t q, std::int64_t& p, int& r) {
    if (q < 2) return false;
    std::int64_t base = q;
    for (std::int64_t f = 2; f * f <= base; ++f) {
        if (base % f == 0) {
            p = f;
            r = 0;
            while (base % f == 0) {
                base /= f;
                ++r;
            }
            return base == 1;
        }
    }
    p = q;
    r = 1;
    return true;
}

inline Int gl_order(int n, std::int64_t q) {
    std::int64_t p;
    int r;
    if (n < 0) throw invalid_input_error("gl_order: n must be non-negative");
    if (!prime_power_decompose(q, p, r)) throw invalid_input_error("gl_order: q is not a prime power");
    Int qn = int_pow(Int(q), static_cast<std::uint64_t>(n));
    Int result = 1;
    for (int i = 0; i < n; ++i) result *= qn - int_pow(Int(q), static_cast<std::uint64_t>(i));
    return result;
}

inline std::vector<Int> int_divisors(const Int& n) {
    // trial division; desk-scale moduli only
    std::vector<std::pair<Int, int>> factors;
    Int m = n;
    for (Int f = 2; f * f <= m; ++f) {
        if (m % f == 0) {
            int e = 0;
            while (m % f == 0) {
                m /= f;
                ++e;
            }
            factors.emplace_back(f, e);
        }
    }
    if (m > 1) factors.emplace_back(m, 1);
    std::vector<Int> divs{Int(1)};
    for (const auto& [f, e] : factors) {
        std::size_t base_count = divs.size();
        Int pw = 1;
        for (int k = 1; k <= e; ++k) {
            pw *= f;
            for (std::size_t i = 0; i < base_count; ++i) divs.push_back(divs[i] * pw);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// All d with |GL_k| | d and d | |GL_{k+1}| for some 0 <= k < n_max.
inline std::vector<Int> admissible_d(std::int64_t q, int n_max) {
    if (n_max < 1) throw invalid_input_error("admissible_d: n_max must be positive");
    std::set<Int> out;
    for (int k = 0; k < n_max; ++k) {
        Int lower = gl_order(k, q);
        Int ratio = gl_order(k + 1, q) / lower;
        for (const Int& t : int_divisors(ratio)) out.insert(lower * t);
    }
    return {out.begin(), out.end()};
}

struct GaloisSpec {
    Int group_order;                     // N
    std::int64_t effective_modulus;      // L: the action factors through Z/L
    std::int64_t conductor;              // d: fixed field Q[zeta_d]
    std::vector<std::int64_t> residues;  // sorted, closed under multiplication mod L, 1 included
};

// Residues of Gal(Q[zeta_N]/Q[zeta_d]) reduced modulo the effective modulus L.
// Computed on the modulus lcm(L, d): units congruent to 1 mod d, then reduced.
inline GaloisSpec galois_residues(const Int& N, std::int64_t L, std::int64_t d) {
    if (d < 1 || N % d != 0) throw invalid_input_error("galois_residues: d must divide N");
    if (L < 1) throw invalid_input_error("galois_residues: L must be positive");
    std::int64_t M = lcm64(L, d);
    if (M > 10'000'000) throw capacity_error("galois_residues: modulus exceeds desk scale");
    std::set<std::int64_t> res;
    for (std::int64_t r = 1; r <= M; ++r) {
        if (gcd64(r, M) != 1) continue;
        if (r % d != 1 % d) continue;
        res.insert(r % L == 0 ? L : r % L); // L == 1 gives residue 1
    }
    if (L == 1) res = {1};
    GaloisSpec spec;
    spec.group_order = N;
    spec.effective_modulus = L;
    spec.conductor = d;
    spec.residues.assign(res.begin(), res.end());
    return spec;
}

// L = p^ceil(log_p n) * lcm(q^m - 1 : 1 <= m <= n); the Galois action on
// GL_n(F_q) classes and characters factors through Z/L.
inline std::int64_t effective_modulus(int n, std::int64_t q) {
    std::int64_t p;
    int r;
    if (!prime_power_decompose(q, p, r)) throw invalid_input_error("effective_modulus: bad q");
    if (n < 1) return 1;
    std::int64_t ppart = 1;
    while (ppart < n) ppart *= p; // p^ceil(log_p n)
    std::int64_t L = ppart;
    std::int64_t qm = 1;
    for (int m = 1; m <= n; ++m) {
        qm *= q;
        L = lcm64(L, qm - 1);
    }
    return L;
}

inline GaloisSpec galois_spec_for_gl(int n, std::int64_t q, std::int64_t d) {
    Int N = gl_order(n, q);
    if (d < 1 || N % d != 0) throw invalid_input_error("galois_spec_for_gl: d must divide |GL_n|");
    return galois_residues(N, effective_modulus(n, q), d);
}

} // namespace galchar
