#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "galchar/charmap.hpp"

namespace galchar {

// Galois residues for the degree-n graded piece of the tower: units mod
// lcm(L, d) congruent to 1 mod d, reduced mod L. Unlike the single-group
// spec this does not require d to divide any particular group order.
inline GaloisSpec tower_galois_spec(int degree, std::int64_t q, std::int64_t d) {
    std::int64_t L = effective_modulus(degree, q);
    return galois_residues(Int(L) * d, L, d);
}

inline GaloisOrbit unit_orbit(std::int64_t d) {
    PartitionFn e;
    e.side = Side::Theta;
    GaloisOrbit o;
    o.members = {e};
    o.d = d;
    return o;
}

// d-Galois irreducible orbit labels in one graded degree (degree 0 = unit)
inline std::vector<GaloisOrbit> galois_irr_at_degree(int degree, std::int64_t q, std::int64_t d) {
    if (degree < 0) throw invalid_input_error("galois_irr_at_degree: negative degree");
    if (degree == 0) return {unit_orbit(d)};
    static std::map<std::tuple<int, std::int64_t, std::int64_t>, std::vector<GaloisOrbit>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(degree, q, d);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto orbits = detail::orbit_partition(enumerate_params(degree, q, Side::Theta),
                                          tower_galois_spec(degree, q, d));
    return cache.emplace(std::move(key), std::move(orbits)).first->second;
}

inline int orbit_degree(const GaloisOrbit& o) { return o.members.front().weight(); }

// unnormalized orbit sum of Schur labels
inline SymElement orbit_schur_sum(const GaloisOrbit& o) {
    SymElement e;
    e.kind = BasisKind::Schur;
    for (const auto& lam : o.members) {
        if (lam.side != Side::Theta)
            throw invalid_input_error("orbit_schur_sum: character-side orbit required");
        e.add(lam, CycNumber(1));
    }
    return e;
}

// expansion of the product of two orbit sums over the orbit-sum basis in the
// appropriate graded degree (structure constants of the Galois PSH basis,
// unnormalized representatives)
inline std::map<GaloisOrbit, CycNumber> product_constants(const GaloisOrbit& alpha,
                                                          const GaloisOrbit& beta, std::int64_t q,
                                                          std::int64_t d) {
    SymElement prod = multiply(orbit_schur_sum(alpha), orbit_schur_sum(beta), q);
    std::map<GaloisOrbit, CycNumber> out;
    for (const auto& gamma : galois_irr_at_degree(orbit_degree(alpha) + orbit_degree(beta), q, d)) {
        // Schur labels are orthonormal: the coefficient on the orbit sum is
        // the pairing with any single member
        CycNumber c = pairing(prod, schur_in_power_sums(gamma.canonical()), q);
        if (!c.is_zero()) out.emplace(gamma, c);
    }
    return out;
}

// bilinear adjointness <m(A x B), C> = <A x B, delta C> on unnormalized orbit
// sums, all triples of total degree <= n_max; returns the violation count
inline int self_duality_check(int n_max, std::int64_t q, std::int64_t d) {
    std::vector<std::vector<GaloisOrbit>> by_degree;
    std::vector<std::vector<SymElement>> sums;
    for (int k = 0; k <= n_max; ++k) {
        by_degree.push_back(galois_irr_at_degree(k, q, d));
        sums.emplace_back();
        for (const auto& o : by_degree.back()) sums.back().push_back(orbit_schur_sum(o));
    }
    int violations = 0;
    for (int da = 0; da <= n_max; ++da)
        for (int db = 0; da + db <= n_max; ++db) {
            int dc = da + db;
            for (std::size_t ic = 0; ic < sums[static_cast<std::size_t>(dc)].size(); ++ic) {
                SymTensor delta = comultiply(sums[static_cast<std::size_t>(dc)][ic], q);
                for (const auto& a : sums[static_cast<std::size_t>(da)])
                    for (const auto& b : sums[static_cast<std::size_t>(db)]) {
                        CycNumber lhs =
                            pairing(multiply(a, b, q), sums[static_cast<std::size_t>(dc)][ic], q);
                        CycNumber rhs(0);
                        for (const auto& [lr, c] : delta.coeffs) {
                            SymElement l, r;
                            l.add(lr.first, CycNumber(1));
                            r.add(lr.second, CycNumber(1));
                            rhs += c * pairing(a, l, q) * pairing(b, r, q);
                        }
                        if (lhs != rhs) ++violations;
                    }
            }
        }
    return violations;
}

// all structure constants on positive-degree orbit pairs up to total degree
// n_max must be non-negative rationals; returns the violation count
inline int positivity_check(int n_max, std::int64_t q, std::int64_t d) {
    int violations = 0;
    for (int da = 1; da < n_max; ++da)
        for (int db = 1; da + db <= n_max; ++db)
            for (const auto& a : galois_irr_at_degree(da, q, d))
                for (const auto& b : galois_irr_at_degree(db, q, d))
                    for (const auto& [gamma, c] : product_constants(a, b, q, d)) {
                        if (!c.is_rational() || c.rational_value() < 0) ++violations;
                    }
    return violations;
}

// true iff delta(e) = e x 1 + 1 x e; input must be homogeneous of positive degree
inline bool primitive_check(const SymElement& e, std::int64_t q) {
    SymElement p = to_power_sums(e, q);
    if (p.is_zero()) throw invalid_input_error("primitive_check: zero element");
    int degree = -1;
    for (const auto& [label, c] : p.coeffs) {
        int dl = label_degree(label);
        if (degree == -1) degree = dl;
        if (dl != degree) throw invalid_input_error("primitive_check: non-homogeneous element");
    }
    if (degree < 1) throw invalid_input_error("primitive_check: degree must be positive");
    SymTensor t = comultiply(p, q);
    for (const auto& [label, c] : p.coeffs) {
        t.add(label, PowerLabel{}, -c);
        t.add(PowerLabel{}, label, -c);
    }
    return t.coeffs.empty();
}

// cuspidal characters of GL_n(F_q): single box on a degree-n character coset
inline std::vector<PartitionFn> cuspidals(int n, std::int64_t q) {
    std::vector<PartitionFn> out;
    for (const auto& c : enumerate_cosets(q, Side::Theta, n)) {
        if (c.level != n) continue;
        PartitionFn f;
        f.side = Side::Theta;
        f.support.emplace(c, Partition{1});
        out.push_back(std::move(f));
    }
    return out;
}

inline bool is_cuspidal_param(const PartitionFn& f) {
    return f.side == Side::Theta && f.support.size() == 1 &&
           f.support.begin()->second == Partition{1};
}

// PSH basis element: a Galois orbit sum with its symbolic 1/sqrt(k) scaling
struct GradedBasisElement {
    GaloisOrbit orbit;
    int degree = 0;
    std::int64_t norm_square = 1; // normalization is 1/sqrt(norm_square)
    SymElement sum;               // unnormalized orbit sum, Schur labels
};

inline std::vector<GradedBasisElement> galois_cuspidals(int n, std::int64_t q, std::int64_t d) {
    GaloisSpec spec = tower_galois_spec(n, q, d);
    std::vector<GradedBasisElement> out;
    for (const auto& orbit : detail::orbit_partition(cuspidals(n, q), spec)) {
        GradedBasisElement e;
        e.degree = n;
        e.norm_square = static_cast<std::int64_t>(orbit.size());
        e.sum = orbit_schur_sum(orbit);
        e.orbit = orbit;
        out.push_back(std::move(e));
    }
    return out;
}

// all orbit labels of degree <= degree_bound meeting some power of the
// cuspidal orbit sum under the pairing
inline std::vector<GaloisOrbit> zelevinsky_component(const GradedBasisElement& rho,
                                                     int degree_bound, std::int64_t q,
                                                     std::int64_t d) {
    for (const auto& m : rho.orbit.members)
        if (!is_cuspidal_param(m))
            throw invalid_input_error("zelevinsky_component: label is not cuspidal");
    std::vector<GaloisOrbit> out;
    SymElement power = sym_one();
    for (int k = 1; k * rho.degree <= degree_bound; ++k) {
        power = multiply(power, rho.sum, q);
        for (const auto& beta : galois_irr_at_degree(k * rho.degree, q, d))
            if (!pairing(orbit_schur_sum(beta), power, q).is_zero()) out.push_back(beta);
    }
    return out;
}

} // namespace galchar
