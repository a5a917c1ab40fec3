#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "galchar/ffield.hpp"

namespace galchar {

// weakly decreasing sequence of positive parts; empty partition allowed
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    Partition(std::initializer_list<int> init) : parts(init) { validate(); }
    explicit Partition(std::vector<int> p) : parts(std::move(p)) { validate(); }

    int size() const {
        return std::accumulate(parts.begin(), parts.end(), 0);
    }
    int length() const { return static_cast<int>(parts.size()); }
    bool empty() const { return parts.empty(); }

    Partition conjugate() const {
        Partition out;
        if (parts.empty()) return out;
        out.parts.resize(static_cast<std::size_t>(parts[0]), 0);
        for (int part : parts)
            for (int i = 0; i < part; ++i) ++out.parts[static_cast<std::size_t>(i)];
        return out;
    }

    // multiplicity of each part value
    std::map<int, int> multiplicities() const {
        std::map<int, int> out;
        for (int part : parts) ++out[part];
        return out;
    }

    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    void validate() const {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] < 1) throw invalid_input_error("Partition: parts must be positive");
            if (i > 0 && parts[i] > parts[i - 1])
                throw invalid_input_error("Partition: parts must be weakly decreasing");
        }
    }
};

// n(lambda) = sum (i-1) lambda_i
inline int n_stat(const Partition& lam) {
    int acc = 0;
    for (std::size_t i = 0; i < lam.parts.size(); ++i) acc += static_cast<int>(i) * lam.parts[i];
    return acc;
}

// z_lambda = prod i^{m_i} m_i!
inline Int z_stat(const Partition& lam) {
    Int z = 1;
    for (auto [part, mult] : lam.multiplicities()) {
        for (int k = 0; k < mult; ++k) z *= part;
        for (int k = 2; k <= mult; ++k) z *= k;
    }
    return z;
}

inline std::vector<Partition> partitions_of(int n, int max_part = -1) {
    if (max_part < 0 || max_part > n) max_part = n;
    if (n == 0) return {Partition{}};
    std::vector<Partition> out;
    for (int first = max_part; first >= 1; --first) {
        for (const auto& rest : partitions_of(n - first, first)) {
            Partition p;
            p.parts.reserve(rest.parts.size() + 1);
            p.parts.push_back(first);
            p.parts.insert(p.parts.end(), rest.parts.begin(), rest.parts.end());
            out.push_back(std::move(p));
        }
    }
    return out;
}

// Finitely supported map from cosets to nonempty partitions; indexes a
// conjugacy class (Phi side) or an irreducible character (Theta side).
struct PartitionFn {
    Side side = Side::Phi;
    std::map<CyclotomicCoset, Partition> support;

    int weight() const {
        int w = 0;
        for (const auto& [coset, lam] : support) w += lam.size() * coset.level;
        return w;
    }

    friend auto operator<=>(const PartitionFn&, const PartitionFn&) = default;
};

namespace detail {

inline void enumerate_params_rec(const std::vector<CyclotomicCoset>& cosets, std::size_t idx,
                                 int remaining, PartitionFn& current, std::vector<PartitionFn>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    if (idx == cosets.size()) return;
    const CyclotomicCoset& c = cosets[idx];
    // skip this coset
    enumerate_params_rec(cosets, idx + 1, remaining, current, out);
    // or assign it a nonempty partition of each feasible size
    for (int w = c.level; w <= remaining; w += c.level) {
        for (const auto& lam : partitions_of(w / c.level)) {
            current.support[c] = lam;
            enumerate_params_rec(cosets, idx + 1, remaining - w, current, out);
        }
        current.support.erase(c);
    }
}

} // namespace detail

// All partition-valued functions of the given weight, canonical order.
inline std::vector<PartitionFn> enumerate_params(int n, std::int64_t q, Side side) {
    if (n < 1) throw invalid_input_error("enumerate_params: n must be positive");
    auto cosets = enumerate_cosets(q, side, n);
    PartitionFn current;
    current.side = side;
    std::vector<PartitionFn> out;
    detail::enumerate_params_rec(cosets, 0, n, current, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace galchar
