#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "galchar/cyclotomic.hpp"
#include "galchar/partition.hpp"

namespace galchar {

namespace detail {

// sparse multivariate polynomial over Q, exponent vectors of fixed length
using Mono = std::vector<int>;
using MPoly = std::map<Mono, Rational>;

inline void mp_add_term(MPoly& p, Mono m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = p.emplace(std::move(m), c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

inline MPoly mp_mul(const MPoly& a, const MPoly& b) {
    MPoly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Mono m = ma;
            for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
            mp_add_term(out, std::move(m), ca * cb);
        }
    return out;
}

// exact quotient by (x_i - x_j); throws if the division is not exact
inline MPoly mp_div_diff(const MPoly& p, std::size_t i, std::size_t j) {
    if (p.empty()) return {};
    std::map<int, MPoly> bydeg; // coefficient polys in the remaining variables
    for (const auto& [mono, c] : p) {
        Mono m = mono;
        int k = m[i];
        m[i] = 0;
        mp_add_term(bydeg[k], std::move(m), c);
    }
    auto shift_j = [j](const MPoly& f) {
        MPoly out;
        for (const auto& [mono, c] : f) {
            Mono m = mono;
            ++m[j];
            out.emplace(std::move(m), c);
        }
        return out;
    };
    int top = bydeg.rbegin()->first;
    MPoly cur; // q_k in the recurrence q_{k-1} = c_k + x_j q_k, q_top = 0
    MPoly result;
    for (int k = top; k >= 1; --k) {
        cur = shift_j(cur);
        if (auto it = bydeg.find(k); it != bydeg.end())
            for (const auto& [mono, c] : it->second) mp_add_term(cur, mono, c);
        for (const auto& [mono, c] : cur) {
            Mono m = mono;
            m[i] = k - 1;
            result.emplace(std::move(m), c);
        }
    }
    // remainder: c_0 + x_j q_0 must vanish
    MPoly rem = shift_j(cur);
    if (auto it = bydeg.find(0); it != bydeg.end())
        for (const auto& [mono, c] : it->second) mp_add_term(rem, mono, c);
    if (!rem.empty()) throw falsification_error("mp_div_diff: division not exact");
    return result;
}

inline int permutation_sign(const std::vector<std::size_t>& perm) {
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

// exact inverse by Gauss-Jordan elimination
inline std::vector<std::vector<Rational>> invert_matrix(std::vector<std::vector<Rational>> m) {
    std::size_t n = m.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) throw falsification_error("invert_matrix: singular matrix");
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        Rational lead = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= lead;
            inv[col][j] /= lead;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0) continue;
            Rational f = m[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[row][j] -= f * m[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace detail

// Hall-Littlewood polynomial P_lambda(x_1..x_N; t) via the antisymmetrized
// quotient formula, expanded in monomial symmetric polynomials.
inline std::map<Partition, Rational> hall_littlewood(const Partition& lam, const Rational& t,
                                                     int num_vars) {
    if (num_vars < lam.size())
        throw invalid_input_error("hall_littlewood: need at least |lambda| variables");
    static std::map<std::tuple<std::vector<int>, Rational, int>, std::map<Partition, Rational>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(lam.parts, t, num_vars);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    std::size_t N = static_cast<std::size_t>(num_vars);
    // v_lambda(t): product of t-factorials of the part multiplicities (incl. zero parts)
    Rational v = 1;
    auto t_factorial = [&t](int m) {
        Rational acc = 1;
        for (int k = 1; k <= m; ++k) {
            Rational row = 0, tp = 1;
            for (int s = 0; s < k; ++s) {
                row += tp;
                tp *= t;
            }
            acc *= row;
        }
        return acc;
    };
    for (auto [part, mult] : lam.multiplicities()) v *= t_factorial(mult);
    v *= t_factorial(num_vars - lam.length());
    if (v == 0) throw invalid_input_error("hall_littlewood: degenerate parameter t");

    // B = x^lambda * prod_{i<j} (x_i - t x_j)
    detail::MPoly B{{detail::Mono(N, 0), Rational(1)}};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            detail::MPoly bin;
            detail::Mono mi(N, 0), mj(N, 0);
            mi[i] = 1;
            mj[j] = 1;
            bin.emplace(std::move(mi), Rational(1));
            detail::mp_add_term(bin, std::move(mj), -t);
            B = detail::mp_mul(B, bin);
        }
    {
        detail::MPoly shifted;
        for (const auto& [mono, c] : B) {
            detail::Mono m = mono;
            for (int k = 0; k < lam.length(); ++k) m[static_cast<std::size_t>(k)] += lam.parts[static_cast<std::size_t>(k)];
            shifted.emplace(std::move(m), c);
        }
        B = std::move(shifted);
    }

    // antisymmetrize over S_N
    detail::MPoly numer;
    std::vector<std::size_t> perm(N);
    std::iota(perm.begin(), perm.end(), std::size_t(0));
    do {
        Rational sign(detail::permutation_sign(perm));
        for (const auto& [mono, c] : B) {
            detail::Mono m(N, 0);
            for (std::size_t k = 0; k < N; ++k) m[perm[k]] = mono[k];
            detail::mp_add_term(numer, std::move(m), sign * c);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    // divide by the Vandermonde determinant and the normalization
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) numer = detail::mp_div_diff(numer, i, j);

    std::map<Partition, Rational> out;
    Rational vinv = Rational(1) / v;
    for (const auto& [mono, c] : numer) {
        bool dominant = true;
        for (std::size_t k = 1; k < N; ++k)
            if (mono[k] > mono[k - 1]) dominant = false;
        if (!dominant) continue;
        std::vector<int> parts;
        for (int e : mono)
            if (e > 0) parts.push_back(e);
        out.emplace(Partition(std::move(parts)), c * vinv);
    }
    return cache.emplace(std::move(key), std::move(out)).first->second;
}

namespace detail {

// transition data between the monomial and power-sum bases in degree n
struct DegreeTransition {
    std::vector<Partition> parts;                // partitions_of(n), canonical order
    std::vector<std::vector<Rational>> p_to_m;   // row mu: p_mu in the m basis
    std::vector<std::vector<Rational>> m_to_p;   // column solve: m-vector -> p-vector
};

inline const DegreeTransition& degree_transition(int n) {
    static std::map<int, DegreeTransition> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    DegreeTransition tr;
    tr.parts = partitions_of(n);
    std::size_t N = static_cast<std::size_t>(n);
    std::map<Partition, std::size_t> index;
    for (std::size_t i = 0; i < tr.parts.size(); ++i) index.emplace(tr.parts[i], i);
    for (const auto& mu : tr.parts) {
        MPoly poly{{Mono(N, 0), Rational(1)}};
        for (int r : mu.parts) {
            MPoly pr;
            for (std::size_t i = 0; i < N; ++i) {
                Mono m(N, 0);
                m[i] = r;
                pr.emplace(std::move(m), Rational(1));
            }
            poly = mp_mul(poly, pr);
        }
        std::vector<Rational> row(tr.parts.size(), Rational(0));
        for (const auto& [mono, c] : poly) {
            bool dominant = true;
            for (std::size_t k = 1; k < N; ++k)
                if (mono[k] > mono[k - 1]) dominant = false;
            if (!dominant) continue;
            std::vector<int> parts;
            for (int e : mono)
                if (e > 0) parts.push_back(e);
            row[index.at(Partition(std::move(parts)))] = c;
        }
        tr.p_to_m.push_back(std::move(row));
    }
    // m-vector v = sum_i c_i * row_i, i.e. (p_to_m)^T c = v
    std::vector<std::vector<Rational>> mt(tr.parts.size(),
                                          std::vector<Rational>(tr.parts.size(), Rational(0)));
    for (std::size_t i = 0; i < tr.parts.size(); ++i)
        for (std::size_t j = 0; j < tr.parts.size(); ++j) mt[j][i] = tr.p_to_m[i][j];
    tr.m_to_p = invert_matrix(std::move(mt));
    return cache.emplace(n, std::move(tr)).first->second;
}

} // namespace detail

// expand power sums p_mu into monomial symmetric functions (degree |mu|)
inline std::map<Partition, Rational> power_sums_to_monomial(const std::map<Partition, Rational>& pvec,
                                                            int n) {
    const auto& tr = detail::degree_transition(n);
    std::map<Partition, std::size_t> index;
    for (std::size_t i = 0; i < tr.parts.size(); ++i) index.emplace(tr.parts[i], i);
    std::vector<Rational> acc(tr.parts.size(), Rational(0));
    for (const auto& [mu, c] : pvec) {
        if (mu.size() != n) throw invalid_input_error("power_sums_to_monomial: degree mismatch");
        std::size_t i = index.at(mu);
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += c * tr.p_to_m[i][j];
    }
    std::map<Partition, Rational> out;
    for (std::size_t j = 0; j < acc.size(); ++j)
        if (acc[j] != 0) out.emplace(tr.parts[j], acc[j]);
    return out;
}

// express a monomial-coefficient vector in the power-sum basis (degree n)
inline std::map<Partition, Rational> monomial_to_power_sums(const std::map<Partition, Rational>& mvec,
                                                            int n) {
    const auto& tr = detail::degree_transition(n);
    std::map<Partition, std::size_t> index;
    for (std::size_t i = 0; i < tr.parts.size(); ++i) index.emplace(tr.parts[i], i);
    std::vector<Rational> v(tr.parts.size(), Rational(0));
    for (const auto& [mu, c] : mvec) {
        if (mu.size() != n) throw invalid_input_error("monomial_to_power_sums: degree mismatch");
        v[index.at(mu)] = c;
    }
    std::map<Partition, Rational> out;
    for (std::size_t i = 0; i < tr.parts.size(); ++i) {
        Rational c = 0;
        for (std::size_t j = 0; j < v.size(); ++j) c += tr.m_to_p[i][j] * v[j];
        if (c != 0) out.emplace(tr.parts[i], c);
    }
    return out;
}

// single-alphabet Schur function s_lambda in the power-sum basis (cached)
inline const std::map<Partition, Rational>& schur_to_power_basis(const Partition& lam) {
    static std::map<std::vector<int>, std::map<Partition, Rational>> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        if (auto it = cache.find(lam.parts); it != cache.end()) return it->second;
    }
    std::map<Partition, Rational> result;
    if (lam.empty()) {
        result.emplace(Partition{}, Rational(1));
    } else {
        auto mvec = hall_littlewood(lam, Rational(0), lam.size());
        result = monomial_to_power_sums(mvec, lam.size());
    }
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(lam.parts, std::move(result)).first->second;
}

// q_f^{-n(lambda)} P_lambda(x; q_f^{-1}) in the power-sum basis (cached)
inline const std::map<Partition, Rational>& hl_tilde_to_power_basis(const Partition& lam,
                                                                    const Int& qf) {
    static std::map<std::pair<std::vector<int>, Int>, std::map<Partition, Rational>> cache;
    static std::mutex mtx;
    auto key = std::make_pair(lam.parts, qf);
    {
        std::lock_guard<std::mutex> lock(mtx);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    std::map<Partition, Rational> result;
    if (lam.empty()) {
        result.emplace(Partition{}, Rational(1));
    } else {
        Rational t = Rational(1) / Rational(qf);
        auto mvec = hall_littlewood(lam, t, lam.size());
        auto pvec = monomial_to_power_sums(mvec, lam.size());
        Rational pre = Rational(1) / Rational(int_pow(qf, static_cast<std::uint64_t>(n_stat(lam))));
        for (auto& [mu, c] : pvec) c *= pre;
        result = std::move(pvec);
    }
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(std::move(key), std::move(result)).first->second;
}

// ---- symmetric-function elements over coset-indexed alphabets ----

// sorted multiset of power-sum generators p_r(coset)
struct PowerLabel {
    std::vector<std::pair<int, CyclotomicCoset>> factors;

    void normalize() { std::sort(factors.begin(), factors.end()); }

    int degree() const {
        int d = 0;
        for (const auto& [r, c] : factors) d += r * c.level;
        return d;
    }

    friend auto operator<=>(const PowerLabel&, const PowerLabel&) = default;
};

enum class BasisKind { PowerSum, Schur, PTilde };

using BasisLabel = std::variant<PowerLabel, PartitionFn>;

inline int label_degree(const BasisLabel& label) {
    if (std::holds_alternative<PowerLabel>(label)) return std::get<PowerLabel>(label).degree();
    return std::get<PartitionFn>(label).weight();
}

struct SymElement {
    BasisKind kind = BasisKind::PowerSum;
    std::map<BasisLabel, CycNumber> coeffs;

    bool is_zero() const { return coeffs.empty(); }

    void add(const BasisLabel& label, const CycNumber& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = coeffs.emplace(label, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) coeffs.erase(it);
        }
    }

    friend bool operator==(const SymElement& a, const SymElement& b) {
        return a.kind == b.kind && a.coeffs == b.coeffs;
    }
};

inline SymElement sym_one() {
    SymElement e;
    e.add(PowerLabel{}, CycNumber(1));
    return e;
}

// expansion of a single Schur / Hall-Littlewood label into the power-sum basis
inline SymElement expand_label_in_power_sums(const PartitionFn& f, std::int64_t q) {
    std::map<PowerLabel, Rational> acc{{PowerLabel{}, Rational(1)}};
    for (const auto& [coset, lam] : f.support) {
        const auto& table = (f.side == Side::Theta)
                                ? schur_to_power_basis(lam)
                                : hl_tilde_to_power_basis(lam, int_pow(Int(q), static_cast<std::uint64_t>(coset.level)));
        std::map<PowerLabel, Rational> next;
        for (const auto& [label, c] : acc)
            for (const auto& [mu, r] : table) {
                PowerLabel ext = label;
                for (int part : mu.parts) ext.factors.emplace_back(part, coset);
                ext.normalize();
                auto [it, fresh] = next.emplace(std::move(ext), c * r);
                if (!fresh) it->second += c * r;
            }
        acc = std::move(next);
    }
    SymElement out;
    for (const auto& [label, c] : acc) out.add(label, CycNumber(c));
    return out;
}

inline SymElement schur_in_power_sums(const PartitionFn& lam) {
    if (lam.side != Side::Theta)
        throw invalid_input_error("schur_in_power_sums: label must be a character parameter");
    return expand_label_in_power_sums(lam, 2); // q unused on the Theta side
}

inline SymElement ptilde_in_power_sums(const PartitionFn& mu, std::int64_t q) {
    if (mu.side != Side::Phi)
        throw invalid_input_error("ptilde_in_power_sums: label must be a class parameter");
    return expand_label_in_power_sums(mu, q);
}

inline SymElement to_power_sums(const SymElement& a, std::int64_t q) {
    if (a.kind == BasisKind::PowerSum) return a;
    SymElement out;
    for (const auto& [label, c] : a.coeffs) {
        SymElement expanded = expand_label_in_power_sums(std::get<PartitionFn>(label), q);
        for (const auto& [pl, pc] : expanded.coeffs) out.add(pl, c * pc);
    }
    return out;
}

inline SymElement multiply(const SymElement& a, const SymElement& b, std::int64_t q) {
    SymElement pa = to_power_sums(a, q), pb = to_power_sums(b, q);
    SymElement out;
    for (const auto& [la, ca] : pa.coeffs)
        for (const auto& [lb, cb] : pb.coeffs) {
            PowerLabel merged = std::get<PowerLabel>(la);
            const PowerLabel& right = std::get<PowerLabel>(lb);
            merged.factors.insert(merged.factors.end(), right.factors.begin(), right.factors.end());
            merged.normalize();
            out.add(merged, ca * cb);
        }
    return out;
}

// formal sum of tensors in the power-sum basis
struct SymTensor {
    std::map<std::pair<BasisLabel, BasisLabel>, CycNumber> coeffs;

    void add(const BasisLabel& l, const BasisLabel& r, const CycNumber& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = coeffs.emplace(std::make_pair(l, r), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) coeffs.erase(it);
        }
    }

    friend bool operator==(const SymTensor&, const SymTensor&) = default;
};

// coproduct: each power sum is primitive, extended as an algebra morphism
inline SymTensor comultiply(const SymElement& a, std::int64_t q) {
    SymElement pa = to_power_sums(a, q);
    SymTensor out;
    for (const auto& [label, c] : pa.coeffs) {
        const PowerLabel& pl = std::get<PowerLabel>(label);
        // group identical generators and distribute each with binomial weights
        std::vector<std::pair<std::pair<int, CyclotomicCoset>, int>> groups;
        for (const auto& f : pl.factors) {
            if (!groups.empty() && groups.back().first == f)
                ++groups.back().second;
            else
                groups.emplace_back(f, 1);
        }
        struct Split {
            PowerLabel left, right;
            Int weight;
        };
        std::vector<Split> splits{{PowerLabel{}, PowerLabel{}, Int(1)}};
        for (const auto& [gen, mult] : groups) {
            std::vector<Split> next;
            for (const auto& s : splits) {
                Int binom = 1;
                for (int k = 0; k <= mult; ++k) {
                    Split t = s;
                    for (int a2 = 0; a2 < k; ++a2) t.left.factors.push_back(gen);
                    for (int a2 = k; a2 < mult; ++a2) t.right.factors.push_back(gen);
                    t.weight *= binom;
                    next.push_back(std::move(t));
                    binom = binom * (mult - k) / (k + 1);
                }
            }
            splits = std::move(next);
        }
        for (auto& s : splits) {
            s.left.normalize();
            s.right.normalize();
            out.add(s.left, s.right, Rational(s.weight) * c);
        }
    }
    return out;
}

// bilinear form with the Schur labels orthonormal: on the character-side
// power-sum basis this is diagonal with the usual z-weights per alphabet
inline CycNumber pairing(const SymElement& a, const SymElement& b, std::int64_t q) {
    SymElement pa = to_power_sums(a, q), pb = to_power_sums(b, q);
    CycNumber total(0);
    for (const auto& [label, ca] : pa.coeffs) {
        auto it = pb.coeffs.find(label);
        if (it == pb.coeffs.end()) continue;
        const PowerLabel& pl = std::get<PowerLabel>(label);
        Int z = 1;
        std::map<CyclotomicCoset, std::vector<int>> grouped;
        for (const auto& [r, coset] : pl.factors) {
            if (coset.side != Side::Theta)
                throw invalid_input_error("pairing: class-side labels need basis conversion first");
            grouped[coset].push_back(r);
        }
        for (auto& [coset, rs] : grouped) {
            std::sort(rs.begin(), rs.end(), std::greater<int>());
            z *= z_stat(Partition(rs));
        }
        total += Rational(z) * (ca * it->second);
    }
    return total;
}

} // namespace galchar
