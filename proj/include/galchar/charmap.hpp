#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "galchar/galois.hpp"
#include "galchar/symfunc.hpp"

namespace galchar {

// class function on GL_n(F_q): one value per class parameter of weight n
struct ClassFunction {
    int n = 0;
    std::int64_t q = 2;
    std::map<PartitionFn, CycNumber> values;
};

inline PowerLabel power_label_of(const PartitionFn& f) {
    PowerLabel l;
    for (const auto& [coset, lam] : f.support)
        for (int part : lam.parts) l.factors.emplace_back(part, coset);
    l.normalize();
    return l;
}

inline PartitionFn label_to_param(const PowerLabel& l, Side side) {
    std::map<CyclotomicCoset, std::vector<int>> grouped;
    for (const auto& [r, coset] : l.factors) grouped[coset].push_back(r);
    PartitionFn f;
    f.side = side;
    for (auto& [coset, rs] : grouped) {
        std::sort(rs.begin(), rs.end(), std::greater<int>());
        f.support.emplace(coset, Partition(rs));
    }
    return f;
}

inline PartitionFn identity_class_param(int n, std::int64_t q) {
    PartitionFn f;
    f.side = Side::Phi;
    std::vector<int> ones(static_cast<std::size_t>(n), 1);
    f.support.emplace(frobenius_coset(q, 1, 0, Side::Phi), Partition(ones));
    return f;
}

// centralizer order of the class mu: product over cosets of the classical
// one-field centralizer order a_lambda(Q) at Q = q^{deg f}
inline Int centralizer_order(const PartitionFn& mu, std::int64_t q) {
    if (mu.side != Side::Phi)
        throw invalid_input_error("centralizer_order: class parameter required");
    Rational total = 1;
    for (const auto& [coset, lam] : mu.support) {
        Rational Q(int_pow(Int(q), static_cast<std::uint64_t>(coset.level)));
        Rational acc = 1;
        int e = lam.size() + 2 * n_stat(lam);
        for (int k = 0; k < e; ++k) acc *= Q;
        for (auto [part, mult] : lam.multiplicities())
            for (int k = 1; k <= mult; ++k) {
                Rational Qk = 1;
                for (int s = 0; s < k; ++s) Qk *= Q;
                acc *= (1 - 1 / Qk);
            }
        total *= acc;
    }
    if (rat_den(total) != 1) throw falsification_error("centralizer_order: non-integral result");
    return rat_num(total);
}

enum class BridgeVariant { Calibrated, Paper };

// Power-sum bridge: expands the character-side generator p_i(phi) over the
// class-side alphabets. Calibrated variant: pure generator-to-generator
// substitution p_i(phi) = (-1)^{i(|phi|+1)} sum_x xi(x) p_{i|phi|/deg f_x}(f_x),
// the sign fixed so that the trivial character is indexed by the one-row
// partition and degrees come out positive. Paper variant keeps the
// (-1)^{i|phi|-1} sign and the interior partition sum with (1-q_f^{-j})
// weights, returned in the class-parameter basis (diagnostic only).
inline SymElement bridge_power_sum(int i, const CyclotomicCoset& phi, std::int64_t q,
                                   BridgeVariant variant = BridgeVariant::Calibrated) {
    if (phi.side != Side::Theta)
        throw invalid_input_error("bridge_power_sum: character-side coset required");
    if (phi.q != q) throw invalid_input_error("bridge_power_sum: coset belongs to another q");
    if (i < 1) throw invalid_input_error("bridge_power_sum: index must be positive");

    static std::map<std::tuple<std::int64_t, int, CyclotomicCoset>, SymElement> cache;
    static std::mutex mtx;
    auto key = std::make_tuple(q, i, phi);
    if (variant == BridgeVariant::Calibrated) {
        std::lock_guard<std::mutex> lock(mtx);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }

    int m = i * phi.level;
    if (m > 20) throw capacity_error("bridge_power_sum: level exceeds desk scale");
    std::int64_t M = i64_pow(q, static_cast<std::uint64_t>(m)) - 1;
    if (M > 1'000'000) throw capacity_error("bridge_power_sum: field exceeds desk scale");
    std::int64_t jlift = (phi.rep % (M + 1)) * (M / (i64_pow(q, static_cast<std::uint64_t>(phi.level)) - 1));

    CycNumber sign(variant == BridgeVariant::Calibrated ? (i * (phi.level + 1) % 2 == 0 ? 1 : -1)
                                                        : (m % 2 == 1 ? 1 : -1));
    SymElement out;
    out.kind = variant == BridgeVariant::Calibrated ? BasisKind::PowerSum : BasisKind::PTilde;
    for (std::int64_t e = 0; e < M; ++e) {
        CyclotomicCoset f = frobenius_coset(q, m, e, Side::Phi);
        CycNumber xi = M == 1 ? CycNumber(1) : CycNumber::root_of_unity(M, (jlift * e) % M);
        if (variant == BridgeVariant::Calibrated) {
            PowerLabel l;
            l.factors.emplace_back(m / f.level, f);
            out.add(l, sign * xi);
        } else {
            int k = m / f.level;
            Rational Qf(int_pow(Int(q), static_cast<std::uint64_t>(f.level)));
            Rational w = 1;
            Rational Qpow = 1;
            for (int j = 1; j <= k; ++j) {
                Qpow *= Qf;
                w *= (1 - 1 / Qpow);
            }
            for (const auto& lam : partitions_of(k)) {
                PartitionFn pf;
                pf.side = Side::Phi;
                pf.support.emplace(f, lam);
                out.add(pf, w * (sign * xi));
            }
        }
    }
    if (variant == BridgeVariant::Calibrated) {
        std::lock_guard<std::mutex> lock(mtx);
        return cache.emplace(std::move(key), std::move(out)).first->second;
    }
    return out;
}

namespace detail {

// transition between the class-side power-sum basis and the P-tilde basis in
// weight n: row i of "forward" expands P~ of params[i]; "inverse" solves back
struct PtildeTransition {
    std::vector<PartitionFn> params; // enumerate_params(n, q, Phi)
    std::map<PartitionFn, std::size_t> index;
    std::vector<std::vector<Rational>> inverse; // p-coefficient vector -> P~ coefficients
};

inline const PtildeTransition& ptilde_transition(int n, std::int64_t q) {
    static std::map<std::pair<int, std::int64_t>, PtildeTransition> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(n, q);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    PtildeTransition tr;
    tr.params = enumerate_params(n, q, Side::Phi);
    for (std::size_t i = 0; i < tr.params.size(); ++i) tr.index.emplace(tr.params[i], i);
    std::size_t dim = tr.params.size();
    std::vector<std::vector<Rational>> at(dim, std::vector<Rational>(dim, Rational(0)));
    for (std::size_t i = 0; i < dim; ++i) {
        SymElement row = ptilde_in_power_sums(tr.params[i], q);
        for (const auto& [label, c] : row.coeffs) {
            const PowerLabel& pl = std::get<PowerLabel>(label);
            // transpose stored directly: solve A^T c = v
            at[tr.index.at(label_to_param(pl, Side::Phi))][i] = c.rational_value();
        }
    }
    tr.inverse = invert_matrix(std::move(at));
    return cache.emplace(std::move(key), std::move(tr)).first->second;
}

} // namespace detail

// expand a class-side power-sum element of homogeneous weight n in the
// P-tilde basis; returns coefficients per class parameter
inline std::map<PartitionFn, CycNumber> express_in_ptilde(const SymElement& a, int n,
                                                          std::int64_t q) {
    const auto& tr = detail::ptilde_transition(n, q);
    std::vector<CycNumber> v(tr.params.size(), CycNumber(0));
    for (const auto& [label, c] : a.coeffs) {
        const PowerLabel& pl = std::get<PowerLabel>(label);
        if (pl.degree() != n) throw invalid_input_error("express_in_ptilde: weight mismatch");
        v[tr.index.at(label_to_param(pl, Side::Phi))] += c;
    }
    std::map<PartitionFn, CycNumber> out;
    for (std::size_t i = 0; i < tr.params.size(); ++i) {
        CycNumber c(0);
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero() && tr.inverse[i][j] != 0) c += tr.inverse[i][j] * v[j];
        if (!c.is_zero()) out.emplace(tr.params[i], c);
    }
    return out;
}

// characteristic map: linear extension of pi_mu -> P~_mu
inline SymElement ch(const ClassFunction& cf) {
    SymElement out;
    out.kind = BasisKind::PTilde;
    for (const auto& [mu, c] : cf.values) {
        if (mu.side != Side::Phi || mu.weight() != cf.n)
            throw invalid_input_error("ch: class parameter of wrong side or weight");
        out.add(mu, c);
    }
    return out;
}

namespace detail {

struct ValueTable {
    std::vector<PartitionFn> chars;   // Theta params, canonical order
    std::vector<PartitionFn> classes; // Phi params, canonical order
    std::map<PartitionFn, std::size_t> char_index, class_index;
    std::vector<std::vector<CycNumber>> values; // [char][class]
};

inline const ValueTable& value_table(int n, std::int64_t q) {
    static std::map<std::pair<int, std::int64_t>, ValueTable> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(n, q);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    ValueTable t;
    t.chars = enumerate_params(n, q, Side::Theta);
    t.classes = enumerate_params(n, q, Side::Phi);
    for (std::size_t i = 0; i < t.chars.size(); ++i) t.char_index.emplace(t.chars[i], i);
    for (std::size_t i = 0; i < t.classes.size(); ++i) t.class_index.emplace(t.classes[i], i);
    for (const auto& lam : t.chars) {
        // S_lambda in character-side power sums, then bridge each generator
        SymElement s = schur_in_power_sums(lam);
        SymElement classside;
        for (const auto& [label, c] : s.coeffs) {
            SymElement term;
            term.add(PowerLabel{}, c);
            for (const auto& [r, phi] : std::get<PowerLabel>(label).factors)
                term = multiply(term, bridge_power_sum(r, phi, q), q);
            for (const auto& [l2, c2] : term.coeffs) classside.add(l2, c2);
        }
        auto coeffs = express_in_ptilde(classside, n, q);
        std::vector<CycNumber> row(t.classes.size(), CycNumber(0));
        for (const auto& [mu, c] : coeffs) row[t.class_index.at(mu)] = c;
        t.values.push_back(std::move(row));
    }
    return cache.emplace(std::move(key), std::move(t)).first->second;
}

} // namespace detail

// irreducible character value chi^lambda(c_mu)
inline CycNumber char_value(const PartitionFn& lam, const PartitionFn& mu, std::int64_t q) {
    if (lam.side != Side::Theta || mu.side != Side::Phi)
        throw invalid_input_error("char_value: need a character and a class parameter");
    if (lam.weight() != mu.weight()) throw invalid_input_error("char_value: weight mismatch");
    const auto& t = detail::value_table(lam.weight(), q);
    return t.values[t.char_index.at(lam)][t.class_index.at(mu)];
}

// the paired orbit-sum bases of the d-Galois theory in weight n
struct ChdBasis {
    std::vector<GaloisOrbit> classes; // pi-orbit sums <-> P~-orbit sums
    std::vector<GaloisOrbit> chars;   // chi-orbit sums <-> S-orbit sums
    std::vector<SymElement> class_sums; // PTilde kind
    std::vector<SymElement> char_sums;  // Schur kind
};

inline ChdBasis ch_d(int n, std::int64_t q, std::int64_t d) {
    ChdBasis b;
    b.classes = galois_classes(n, q, d);
    b.chars = galois_irr_indices(n, q, d);
    for (const auto& orbit : b.classes) {
        SymElement e;
        e.kind = BasisKind::PTilde;
        for (const auto& mu : orbit.members) e.add(mu, CycNumber(1));
        b.class_sums.push_back(std::move(e));
    }
    for (const auto& orbit : b.chars) {
        SymElement e;
        e.kind = BasisKind::Schur;
        for (const auto& lam : orbit.members) e.add(lam, CycNumber(1));
        b.char_sums.push_back(std::move(e));
    }
    return b;
}

// value of the orbit-sum character on a class
inline CycNumber orbit_char_value(const GaloisOrbit& orbit, const PartitionFn& mu, std::int64_t q) {
    CycNumber acc(0);
    for (const auto& lam : orbit.members) acc += char_value(lam, mu, q);
    return acc;
}

// supercharacter-theory axioms for the d-Galois theory on GL_n(F_q):
// equal block counts, the identity class alone is a block, and every
// orbit-sum character is constant on every class block. Returns the
// number of violations (zero expected).
inline int sct_axioms_check(int n, std::int64_t q, std::int64_t d) {
    auto classes = galois_classes(n, q, d);
    auto chars = galois_irr_indices(n, q, d);
    int violations = 0;
    if (classes.size() != chars.size()) ++violations;
    PartitionFn id = identity_class_param(n, q);
    for (const auto& block : classes)
        if (std::find(block.members.begin(), block.members.end(), id) != block.members.end() &&
            block.size() != 1)
            ++violations;
    for (const auto& corbit : chars)
        for (const auto& block : classes) {
            CycNumber first = orbit_char_value(corbit, block.members.front(), q);
            for (std::size_t i = 1; i < block.members.size(); ++i)
                if (orbit_char_value(corbit, block.members[i], q) != first) ++violations;
        }
    return violations;
}

// coefficients of a d-Galois class function on the d-Galois irreducible basis;
// with expect_character set, non-negative integrality is enforced (violations
// are falsification events)
inline std::map<GaloisOrbit, CycNumber> decompose_galois_character(const ClassFunction& cf,
                                                                   std::int64_t d,
                                                                   bool expect_character = false) {
    const auto& t = detail::value_table(cf.n, cf.q);
    auto value_at = [&](const PartitionFn& mu) {
        auto it = cf.values.find(mu);
        return it == cf.values.end() ? CycNumber(0) : it->second;
    };
    for (const auto& [mu, c] : cf.values)
        if (mu.side != Side::Phi || mu.weight() != cf.n)
            throw invalid_input_error("decompose_galois_character: bad class parameter");
    auto classes = galois_classes(cf.n, cf.q, d);
    for (const auto& block : classes) {
        CycNumber first = value_at(block.members.front());
        for (const auto& mu : block.members)
            if (value_at(mu) != first)
                throw invalid_input_error(
                    "decompose_galois_character: not constant on Galois classes");
    }
    std::map<GaloisOrbit, CycNumber> out;
    for (const auto& orbit : galois_irr_indices(cf.n, cf.q, d)) {
        const PartitionFn& lam = orbit.canonical();
        CycNumber c(0);
        for (const auto& mu : t.classes) {
            CycNumber v = value_at(mu);
            if (v.is_zero()) continue;
            Rational inv_a = Rational(1) / Rational(centralizer_order(mu, cf.q));
            c += inv_a * (v * char_value(lam, mu, cf.q).conjugate());
        }
        if (expect_character) {
            if (!c.is_rational() || rat_den(c.rational_value()) != 1 || c.rational_value() < 0)
                throw falsification_error(
                    "decompose_galois_character: non-negative integrality violated");
        }
        if (!c.is_zero()) out.emplace(orbit, c);
    }
    return out;
}

namespace detail {

// exact inverse over the cyclotomic field
inline std::vector<std::vector<CycNumber>> invert_cyc_matrix(std::vector<std::vector<CycNumber>> m) {
    std::size_t n = m.size();
    std::vector<std::vector<CycNumber>> inv(n, std::vector<CycNumber>(n, CycNumber(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = CycNumber(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw falsification_error("invert_cyc_matrix: singular matrix");
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        CycNumber lead_inv = m[col][col].inverse();
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] *= lead_inv;
            inv[col][j] *= lead_inv;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            CycNumber f = m[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[row][j] -= f * m[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// per (q, M): each class-side generator p_k(f) with k*deg(f) = M expressed
// over character-side generators, by inverting the bridge matrix in degree M
inline const std::map<PowerLabel, SymElement>& inverse_bridge(std::int64_t q, int M) {
    static std::map<std::pair<std::int64_t, int>, std::map<PowerLabel, SymElement>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(q, M);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    std::vector<std::pair<int, CyclotomicCoset>> theta_gens, phi_gens;
    for (int lvl = 1; lvl <= M; ++lvl) {
        if (M % lvl != 0) continue;
        for (const auto& c : enumerate_cosets(q, Side::Theta, lvl))
            if (c.level == lvl) theta_gens.emplace_back(M / lvl, c);
        for (const auto& c : enumerate_cosets(q, Side::Phi, lvl))
            if (c.level == lvl) phi_gens.emplace_back(M / lvl, c);
    }
    std::map<PowerLabel, std::size_t> phi_index;
    for (std::size_t i = 0; i < phi_gens.size(); ++i) {
        PowerLabel l;
        l.factors.emplace_back(phi_gens[i].first, phi_gens[i].second);
        phi_index.emplace(std::move(l), i);
    }
    if (theta_gens.size() != phi_gens.size())
        throw falsification_error("inverse_bridge: generator count mismatch");
    std::size_t dim = theta_gens.size();
    std::vector<std::vector<CycNumber>> B(dim, std::vector<CycNumber>(dim, CycNumber(0)));
    for (std::size_t a = 0; a < dim; ++a) {
        SymElement img = bridge_power_sum(theta_gens[a].first, theta_gens[a].second, q);
        for (const auto& [label, c] : img.coeffs)
            B[a][phi_index.at(std::get<PowerLabel>(label))] = c;
    }
    auto Binv = invert_cyc_matrix(std::move(B));
    std::map<PowerLabel, SymElement> out;
    for (const auto& [phi_label, b] : phi_index) {
        SymElement e;
        for (std::size_t a = 0; a < dim; ++a) {
            if (Binv[b][a].is_zero()) continue;
            PowerLabel l;
            l.factors.emplace_back(theta_gens[a].first, theta_gens[a].second);
            e.add(l, Binv[b][a]);
        }
        out.emplace(phi_label, std::move(e));
    }
    return cache.emplace(std::move(key), std::move(out)).first->second;
}

} // namespace detail

// rewrite every class-side power-sum factor over character-side alphabets
inline SymElement to_character_side(const SymElement& a, std::int64_t q) {
    SymElement src = to_power_sums(a, q);
    SymElement out;
    for (const auto& [label, c] : src.coeffs) {
        SymElement term;
        term.add(PowerLabel{}, c);
        for (const auto& [r, coset] : std::get<PowerLabel>(label).factors) {
            if (coset.side == Side::Theta) {
                PowerLabel single;
                single.factors.emplace_back(r, coset);
                SymElement s;
                s.add(single, CycNumber(1));
                term = multiply(term, s, q);
            } else {
                PowerLabel single;
                single.factors.emplace_back(r, coset);
                term = multiply(term, detail::inverse_bridge(q, r * coset.level).at(single), q);
            }
        }
        for (const auto& [l2, c2] : term.coeffs) out.add(l2, c2);
    }
    return out;
}

// the Hall pairing extended to class-side elements through the bridge
inline CycNumber pairing_full(const SymElement& a, const SymElement& b, std::int64_t q) {
    return pairing(to_character_side(a, q), to_character_side(b, q), q);
}

} // namespace galchar
