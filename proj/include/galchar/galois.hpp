#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "galchar/numbers.hpp"
#include "galchar/partition.hpp"

namespace galchar {

// sigma: zeta -> zeta^r acting on an exponent coset; r must be a unit at the
// coset's level. Multiplication by a unit preserves the exact level.
inline CyclotomicCoset act_on_coset(std::int64_t r, const CyclotomicCoset& c) {
    std::int64_t mod = c.modulus();
    if (mod <= 1) return c;
    if (gcd64(((r % mod) + mod) % mod, mod) != 1)
        throw invalid_input_error("act_on_coset: residue not coprime to q^m - 1");
    return frobenius_coset(c.q, c.level, c.rep * (((r % mod) + mod) % mod), c.side);
}

// (sigma.f)(c) = f(sigma^{-1}.c), so the support moves forward by sigma.
inline PartitionFn act_on_param(std::int64_t r, const PartitionFn& f) {
    PartitionFn out;
    out.side = f.side;
    for (const auto& [coset, lam] : f.support) {
        CyclotomicCoset moved = act_on_coset(r, coset);
        if (out.support.count(moved))
            throw falsification_error("act_on_param: action not injective on support");
        out.support.emplace(moved, lam);
    }
    return out;
}

struct GaloisOrbit {
    std::vector<PartitionFn> members; // sorted canonically
    std::int64_t d = 1;

    const PartitionFn& canonical() const { return members.front(); }
    std::size_t size() const { return members.size(); }

    friend auto operator<=>(const GaloisOrbit&, const GaloisOrbit&) = default;
};

inline GaloisOrbit orbit_of_param(const PartitionFn& f, const GaloisSpec& spec) {
    std::set<PartitionFn> seen;
    for (std::int64_t r : spec.residues) seen.insert(act_on_param(r, f));
    if (!seen.count(f)) throw falsification_error("orbit_of_param: orbit misses its seed");
    GaloisOrbit orbit;
    orbit.members.assign(seen.begin(), seen.end());
    orbit.d = spec.conductor;
    return orbit;
}

namespace detail {

inline std::vector<GaloisOrbit> orbit_partition(const std::vector<PartitionFn>& params,
                                                const GaloisSpec& spec) {
    std::set<PartitionFn> done;
    std::vector<GaloisOrbit> out;
    for (const auto& f : params) {
        if (done.count(f)) continue;
        GaloisOrbit orbit = orbit_of_param(f, spec);
        for (const auto& member : orbit.members) done.insert(member);
        out.push_back(std::move(orbit));
    }
    return out;
}

} // namespace detail

inline std::vector<GaloisOrbit> galois_classes(int n, std::int64_t q, std::int64_t d) {
    return detail::orbit_partition(enumerate_params(n, q, Side::Phi), galois_spec_for_gl(n, q, d));
}

inline std::vector<GaloisOrbit> galois_irr_indices(int n, std::int64_t q, std::int64_t d) {
    return detail::orbit_partition(enumerate_params(n, q, Side::Theta), galois_spec_for_gl(n, q, d));
}

} // namespace galchar
