#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "galchar/charmap.hpp"

namespace galchar {

// dense n x n matrix over a small field, entries are packed field values
struct FqMatrix {
    int n = 0;
    std::vector<std::int64_t> a;

    std::int64_t& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
    std::int64_t at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }

    friend auto operator<=>(const FqMatrix&, const FqMatrix&) = default;
};

namespace matops {

inline FqMatrix identity(int n) {
    FqMatrix m{n, std::vector<std::int64_t>(static_cast<std::size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

inline FqMatrix mul(const FqMatrix& x, const FqMatrix& y, const SmallField& F) {
    FqMatrix z{x.n, std::vector<std::int64_t>(x.a.size(), 0)};
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            std::int64_t v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < x.n; ++j)
                z.at(i, j) = F.add(z.at(i, j), F.mul(v, y.at(k, j)));
        }
    return z;
}

inline FqMatrix add(const FqMatrix& x, const FqMatrix& y, const SmallField& F) {
    FqMatrix z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = F.add(z.a[i], y.a[i]);
    return z;
}

inline FqMatrix scalar_mul(std::int64_t c, const FqMatrix& x, const SmallField& F) {
    FqMatrix z = x;
    for (auto& v : z.a) v = F.mul(c, v);
    return z;
}

inline int rank(FqMatrix m, const SmallField& F) {
    int r = 0;
    for (int col = 0; col < m.n && r < m.n; ++col) {
        int pivot = -1;
        for (int row = r; row < m.n; ++row)
            if (m.at(row, col) != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < m.n; ++j) std::swap(m.at(pivot, j), m.at(r, j));
        std::int64_t inv = F.inv(m.at(r, col));
        for (int j = 0; j < m.n; ++j) m.at(r, j) = F.mul(inv, m.at(r, j));
        for (int row = 0; row < m.n; ++row) {
            if (row == r || m.at(row, col) == 0) continue;
            std::int64_t f = m.at(row, col);
            for (int j = 0; j < m.n; ++j)
                m.at(row, j) = F.sub(m.at(row, j), F.mul(f, m.at(r, j)));
        }
        ++r;
    }
    return r;
}

inline bool invertible(const FqMatrix& m, const SmallField& F) { return rank(m, F) == m.n; }

inline FqMatrix inverse(FqMatrix m, const SmallField& F) {
    int n = m.n;
    FqMatrix inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (m.at(row, col) != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) throw invalid_input_error("matrix inverse: singular matrix");
        for (int j = 0; j < n; ++j) {
            std::swap(m.at(pivot, j), m.at(col, j));
            std::swap(inv.at(pivot, j), inv.at(col, j));
        }
        std::int64_t lead = F.inv(m.at(col, col));
        for (int j = 0; j < n; ++j) {
            m.at(col, j) = F.mul(lead, m.at(col, j));
            inv.at(col, j) = F.mul(lead, inv.at(col, j));
        }
        for (int row = 0; row < n; ++row) {
            if (row == col || m.at(row, col) == 0) continue;
            std::int64_t f = m.at(row, col);
            for (int j = 0; j < n; ++j) {
                m.at(row, j) = F.sub(m.at(row, j), F.mul(f, m.at(col, j)));
                inv.at(row, j) = F.sub(inv.at(row, j), F.mul(f, inv.at(col, j)));
            }
        }
    }
    return inv;
}

// evaluate a packed-coefficient polynomial (low-to-high over F_q) at a matrix
inline FqMatrix eval_poly(const std::vector<std::int64_t>& f, const FqMatrix& g,
                          const SmallField& F) {
    FqMatrix acc{g.n, std::vector<std::int64_t>(g.a.size(), 0)};
    for (std::size_t i = f.size(); i-- > 0;) {
        acc = mul(acc, g, F);
        FqMatrix c = scalar_mul(f[i], identity(g.n), F);
        acc = add(acc, c, F);
    }
    return acc;
}

} // namespace matops

// J_m(lam)^l computed entrywise: a_{ij} = C(l, j-i) lam^{l-(j-i)}
inline FqMatrix jordan_power(int n, std::int64_t lam, int l, const SmallField& F) {
    if (l < 1) throw invalid_input_error("jordan_power: l must be positive");
    FqMatrix out{n, std::vector<std::int64_t>(static_cast<std::size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int k = j - i;
            if (k > l) continue;
            Int binom = 1;
            for (int t = 1; t <= k; ++t) binom = binom * (l - t + 1) / t;
            std::int64_t b = F.from_prime_subfield(static_cast<std::int64_t>(binom % F.p()));
            out.at(i, j) = F.mul(b, F.pow(lam, Int(l - k)));
        }
    return out;
}

inline bool jordan_form_preserved(int l, std::int64_t p) {
    if (l < 1) throw invalid_input_error("jordan_form_preserved: l must be positive");
    return gcd64(static_cast<std::int64_t>(l), p) == 1;
}

// Jordan block J_m(f): m copies of the companion matrix of f with identity
// super-blocks; assembled block-diagonally over the support of mu
inline FqMatrix class_representative(const PartitionFn& mu, FieldTower& tower) {
    if (mu.side != Side::Phi)
        throw invalid_input_error("class_representative: class parameter required");
    int n = mu.weight();
    const SmallField& F = tower.level(1);
    FqMatrix g{n, std::vector<std::int64_t>(static_cast<std::size_t>(n) * n, 0)};
    int offset = 0;
    for (const auto& [coset, lam] : mu.support) {
        auto f = tower.minimal_polynomial(coset);
        int d = coset.level;
        for (int part : lam.parts) {
            // part copies of the companion matrix with identity super-blocks
            for (int b = 0; b < part; ++b) {
                int base = offset + b * d;
                for (int i = 0; i + 1 < d; ++i) g.at(base + i + 1, base + i) = 1;
                for (int i = 0; i < d; ++i) g.at(base + i, base + d - 1) = F.neg(f[static_cast<std::size_t>(i)]);
                if (b + 1 < part)
                    for (int i = 0; i < d; ++i) g.at(base + i, base + d + i) = 1;
            }
            offset += part * d;
        }
    }
    return g;
}

// brute-force model of GL_n(F_q) with conjugacy classes
class MatrixGroup {
public:
    MatrixGroup(int n, std::int64_t q) : n_(n), q_(q), tower_(q) {
        const SmallField& F = field();
        Int order = gl_order(n, q);
        if (order > 10'000) throw capacity_error("MatrixGroup: group order exceeds desk scale");
        std::vector<std::int64_t> digits(static_cast<std::size_t>(n) * n, 0);
        while (true) {
            FqMatrix m{n, digits};
            if (matops::invertible(m, F)) {
                index_.emplace(m, elements_.size());
                elements_.push_back(std::move(m));
            }
            std::size_t pos = 0;
            while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
            if (pos == digits.size()) break;
        }
        if (Int(elements_.size()) != order)
            throw falsification_error("MatrixGroup: element count mismatch");
        build_classes();
    }

    int n() const { return n_; }
    std::int64_t q() const { return q_; }
    const SmallField& field() { return tower_.level(1); }
    FieldTower& tower() { return tower_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<FqMatrix>& elements() const { return elements_; }
    std::size_t element_index(const FqMatrix& m) const { return index_.at(m); }

    std::size_t class_count() const { return class_reps_.size(); }
    std::size_t class_of(std::size_t elem) const { return class_of_[elem]; }
    const FqMatrix& class_rep(std::size_t c) const { return elements_[class_reps_[c]]; }
    std::int64_t class_size(std::size_t c) const { return class_sizes_[c]; }

    std::size_t mul_index(std::size_t a, std::size_t b) {
        return index_.at(matops::mul(elements_[a], elements_[b], field()));
    }

    std::size_t power_index(std::size_t a, std::int64_t e) {
        std::size_t acc = index_.at(matops::identity(n_));
        std::size_t base = a;
        while (e > 0) {
            if (e & 1) acc = mul_index(acc, base);
            base = mul_index(base, base);
            e >>= 1;
        }
        return acc;
    }

    std::int64_t element_order(std::size_t a) {
        std::size_t id = index_.at(matops::identity(n_));
        std::int64_t ord = 1;
        std::size_t cur = a;
        while (cur != id) {
            cur = mul_index(cur, a);
            ++ord;
        }
        return ord;
    }

    std::int64_t exponent() {
        std::int64_t e = 1;
        for (std::size_t c = 0; c < class_count(); ++c)
            e = lcm64(e, element_order(class_reps_[c]));
        return e;
    }

private:
    void build_classes() {
        const SmallField& F = field();
        std::vector<FqMatrix> inverses;
        inverses.reserve(elements_.size());
        for (const auto& x : elements_) inverses.push_back(matops::inverse(x, F));
        class_of_.assign(elements_.size(), SIZE_MAX);
        // identity first
        std::vector<std::size_t> seeds{index_.at(matops::identity(n_))};
        for (std::size_t i = 0; i < elements_.size(); ++i) seeds.push_back(i);
        for (std::size_t seed : seeds) {
            if (class_of_[seed] != SIZE_MAX) continue;
            std::size_t cls = class_reps_.size();
            class_reps_.push_back(seed);
            std::int64_t size = 0;
            for (std::size_t x = 0; x < elements_.size(); ++x) {
                FqMatrix conj =
                    matops::mul(matops::mul(elements_[x], elements_[seed], F), inverses[x], F);
                std::size_t idx = index_.at(conj);
                if (class_of_[idx] == SIZE_MAX) {
                    class_of_[idx] = cls;
                    ++size;
                } else if (class_of_[idx] != cls) {
                    throw falsification_error("MatrixGroup: inconsistent conjugacy orbits");
                }
            }
            class_sizes_.push_back(size);
        }
        if (std::accumulate(class_sizes_.begin(), class_sizes_.end(), std::int64_t(0)) !=
            static_cast<std::int64_t>(elements_.size()))
            throw falsification_error("MatrixGroup: class sizes do not sum to the group order");
    }

    int n_;
    std::int64_t q_;
    FieldTower tower_;
    std::vector<FqMatrix> elements_;
    std::map<FqMatrix, std::size_t> index_;
    std::vector<std::size_t> class_reps_;
    std::vector<std::size_t> class_of_;
    std::vector<std::int64_t> class_sizes_;
};

namespace detail {

inline bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

// mod-ell linear algebra for the Dixon eigenvector computation
struct ModField {
    std::int64_t ell;
    std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % ell; }
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return ((a - b) % ell + ell) % ell; }
    std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % ell; }
    std::int64_t inv(std::int64_t a) const { return mod_inverse(((a % ell) + ell) % ell, ell); }
    std::int64_t pow(std::int64_t a, std::int64_t e) const {
        std::int64_t r = 1;
        a %= ell;
        while (e > 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
};

using ModVec = std::vector<std::int64_t>;
using ModMat = std::vector<ModVec>;

// basis of the nullspace of m (rows x cols), vectors of length cols
inline std::vector<ModVec> nullspace(ModMat m, const ModField& F) {
    if (m.empty()) return {};
    std::size_t rows = m.size(), cols = m[0].size();
    std::vector<std::int64_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        std::int64_t inv = F.inv(m[r][c]);
        for (std::size_t j = 0; j < cols; ++j) m[r][j] = F.mul(inv, m[r][j]);
        for (std::size_t row = 0; row < rows; ++row) {
            if (row == r || m[row][c] == 0) continue;
            std::int64_t f = m[row][c];
            for (std::size_t j = 0; j < cols; ++j) m[row][j] = F.sub(m[row][j], F.mul(f, m[r][j]));
        }
        pivot_col.push_back(static_cast<std::int64_t>(c));
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::int64_t c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<ModVec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        ModVec v(cols, 0);
        v[free] = 1;
        for (std::size_t k = 0; k < pivot_col.size(); ++k)
            v[static_cast<std::size_t>(pivot_col[k])] = F.sub(0, m[k][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

// solve B x = c where the columns of B are the basis vectors (ambient dim x m)
inline ModVec solve_coordinates(const std::vector<ModVec>& basis, const ModVec& target,
                                const ModField& F) {
    std::size_t dim = target.size(), m = basis.size();
    ModMat aug(dim, ModVec(m + 1, 0));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug[i][j] = basis[j][i];
        aug[i][m] = target[i];
    }
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < m && r < dim; ++c) {
        std::size_t p = r;
        while (p < dim && aug[p][c] == 0) ++p;
        if (p == dim) continue;
        std::swap(aug[p], aug[r]);
        std::int64_t inv = F.inv(aug[r][c]);
        for (std::size_t j = 0; j <= m; ++j) aug[r][j] = F.mul(inv, aug[r][j]);
        for (std::size_t row = 0; row < dim; ++row) {
            if (row == r || aug[row][c] == 0) continue;
            std::int64_t f = aug[row][c];
            for (std::size_t j = 0; j <= m; ++j) aug[row][j] = F.sub(aug[row][j], F.mul(f, aug[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    ModVec x(m, 0);
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug[k][m];
    // consistency: rows beyond the pivot rows must be zero
    for (std::size_t row = r; row < dim; ++row)
        if (aug[row][m] != 0)
            throw falsification_error("solve_coordinates: vector outside the subspace");
    return x;
}

} // namespace detail

// Exact character table of GL_n(F_q) with parameter matching
struct OracleTable {
    int n = 0;
    std::int64_t q = 2;
    Int group_order;
    std::int64_t exponent = 1;
    std::vector<std::int64_t> class_sizes;
    std::vector<std::vector<std::size_t>> power_class; // [class][s], s = 0..exponent-1
    std::vector<std::vector<CycNumber>> char_values;   // [character][class]
    std::vector<PartitionFn> class_params;             // matched class parameters
    std::vector<PartitionFn> char_params;              // matched character parameters
};

// Burnside-Dixon: exact table via class-algebra eigenvectors modulo a prime
// ell = 1 (mod exponent), ell > 2 sqrt(|G|), deterministic eigenspace
// refinement, then discrete-Fourier lifting to cyclotomic integers.
inline OracleTable character_table(MatrixGroup& G) {
    OracleTable out;
    out.n = G.n();
    out.q = G.q();
    out.group_order = Int(G.size());
    std::size_t k = G.class_count();
    out.class_sizes.resize(k);
    for (std::size_t c = 0; c < k; ++c) out.class_sizes[c] = G.class_size(c);

    std::int64_t e = G.exponent();
    out.exponent = e;

    // power-map table per class
    out.power_class.assign(k, std::vector<std::size_t>(static_cast<std::size_t>(e)));
    std::vector<std::size_t> rep_index(k);
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t idx = G.element_index(G.class_rep(c));
        std::size_t id = G.power_index(idx, 0);
        std::size_t cur = id;
        for (std::int64_t s = 0; s < e; ++s) {
            out.power_class[c][static_cast<std::size_t>(s)] = G.class_of(cur);
            cur = G.mul_index(cur, idx);
        }
    }

    // class-algebra structure constants c[i][j][k0]
    std::vector<std::vector<std::vector<std::int64_t>>> cnt(
        k, std::vector<std::vector<std::int64_t>>(k, std::vector<std::int64_t>(k, 0)));
    for (std::size_t x = 0; x < G.size(); ++x)
        for (std::size_t y = 0; y < G.size(); ++y)
            ++cnt[G.class_of(x)][G.class_of(y)][G.class_of(G.mul_index(x, y))];

    // Dixon prime
    std::int64_t bound = 1;
    while (bound * bound <= 4 * static_cast<std::int64_t>(G.size())) ++bound;
    std::int64_t ell = e + 1;
    while (!detail::is_prime_i64(ell) || ell <= bound) ell += e;
    detail::ModField F{ell};

    // class matrices: (M_i)[j][k0] = cnt[i][j][k0] / |C_k0| mod ell
    std::vector<detail::ModMat> class_mats(k, detail::ModMat(k, detail::ModVec(k, 0)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t k0 = 0; k0 < k; ++k0) {
                if (cnt[i][j][k0] % out.class_sizes[k0] != 0)
                    throw falsification_error("character_table: structure constant not integral");
                class_mats[i][j][k0] = (cnt[i][j][k0] / out.class_sizes[k0]) % ell;
            }

    // deterministic eigenspace refinement to one-dimensional common spaces
    std::vector<std::vector<detail::ModVec>> subspaces;
    {
        std::vector<detail::ModVec> full;
        for (std::size_t i = 0; i < k; ++i) {
            detail::ModVec v(k, 0);
            v[i] = 1;
            full.push_back(std::move(v));
        }
        subspaces.push_back(std::move(full));
    }
    for (std::size_t i = 1; i < k; ++i) {
        bool all_split = true;
        for (const auto& s : subspaces)
            if (s.size() > 1) all_split = false;
        if (all_split) break;
        std::vector<std::vector<detail::ModVec>> next;
        for (auto& V : subspaces) {
            std::size_t m = V.size();
            if (m == 1) {
                next.push_back(std::move(V));
                continue;
            }
            // restriction of M_i to V
            detail::ModMat A(m, detail::ModVec(m, 0));
            for (std::size_t b = 0; b < m; ++b) {
                detail::ModVec img(k, 0);
                for (std::size_t r = 0; r < k; ++r)
                    for (std::size_t c = 0; c < k; ++c)
                        img[r] = F.add(img[r], F.mul(class_mats[i][r][c], V[b][c]));
                detail::ModVec coords = detail::solve_coordinates(V, img, F);
                for (std::size_t r = 0; r < m; ++r) A[r][b] = coords[r];
            }
            std::size_t found = 0;
            for (std::int64_t lam = 0; lam < ell && found < m; ++lam) {
                detail::ModMat shifted = A;
                for (std::size_t r = 0; r < m; ++r) shifted[r][r] = F.sub(shifted[r][r], lam);
                auto eig = detail::nullspace(std::move(shifted), F);
                if (eig.empty()) continue;
                found += eig.size();
                std::vector<detail::ModVec> block;
                for (const auto& coord : eig) {
                    detail::ModVec ambient(k, 0);
                    for (std::size_t b = 0; b < m; ++b)
                        for (std::size_t r = 0; r < k; ++r)
                            ambient[r] = F.add(ambient[r], F.mul(coord[b], V[b][r]));
                    block.push_back(std::move(ambient));
                }
                next.push_back(std::move(block));
            }
            if (found != m)
                throw falsification_error("character_table: class matrix failed to diagonalize");
        }
        subspaces = std::move(next);
    }
    for (const auto& s : subspaces)
        if (s.size() != 1)
            throw falsification_error("character_table: eigenspace refinement incomplete");

    // class of inverses
    std::vector<std::size_t> inv_class(k);
    for (std::size_t c = 0; c < k; ++c)
        inv_class[c] = out.power_class[c][static_cast<std::size_t>((e - 1) % e)];

    std::int64_t z = 0; // element of exact order e mod ell
    if (e == 1) {
        z = 1;
    } else {
        for (std::int64_t g = 2; g < ell && z == 0; ++g) {
            std::int64_t cand = F.pow(g, (ell - 1) / e);
            bool exact = cand != 1;
            for (std::int64_t f = 2; f <= e && exact; ++f)
                if (e % f == 0 && detail::is_prime_i64(f) && F.pow(cand, e / f) == 1) exact = false;
            if (exact) z = cand;
        }
    }
    if (z == 0) throw falsification_error("character_table: no element of order e mod ell");

    std::int64_t gorder_mod = static_cast<std::int64_t>(out.group_order % ell);
    for (const auto& V : subspaces) {
        // normalize so the identity coordinate is 1: omega_0 = 1
        detail::ModVec w = V.front();
        if (w[0] == 0) throw falsification_error("character_table: eigenvector misses identity");
        std::int64_t norm = F.inv(w[0]);
        for (auto& v : w) v = F.mul(norm, v);
        // degree from the weighted self-pairing
        std::int64_t s = 0;
        for (std::size_t c = 0; c < k; ++c)
            s = F.add(s, F.mul(F.mul(w[c], w[inv_class[c]]), F.inv(out.class_sizes[c] % ell)));
        std::int64_t dsq = F.mul(gorder_mod, F.inv(s));
        std::int64_t degree = 0;
        for (std::int64_t cand = 1; cand * cand <= static_cast<std::int64_t>(G.size()); ++cand)
            if (F.mul(cand, cand) == dsq) {
                degree = cand;
                break;
            }
        if (degree == 0) throw falsification_error("character_table: degree not recovered");
        // values mod ell, then Fourier lift to multiplicities of roots of unity
        detail::ModVec vals(k);
        for (std::size_t c = 0; c < k; ++c)
            vals[c] = F.mul(F.mul(degree % ell, w[c]), F.inv(out.class_sizes[c] % ell));
        std::vector<CycNumber> row;
        std::int64_t zinv = F.inv(z);
        for (std::size_t c = 0; c < k; ++c) {
            CycNumber value(0);
            for (std::int64_t t = 0; t < e; ++t) {
                std::int64_t m_t = 0;
                for (std::int64_t sx = 0; sx < e; ++sx)
                    m_t = F.add(m_t, F.mul(vals[out.power_class[c][static_cast<std::size_t>(sx)]],
                                           F.pow(zinv, (t * sx) % e)));
                m_t = F.mul(m_t, F.inv(e % ell));
                if (m_t != 0) value += Rational(m_t) * CycNumber::root_of_unity(e, t);
            }
            row.push_back(std::move(value));
        }
        out.char_values.push_back(std::move(row));
    }
    if (out.char_values.size() != k)
        throw falsification_error("character_table: character count mismatch");
    return out;
}

// match classes to partition-valued parameters via kernel filtrations of the
// irreducible factors of the characteristic polynomial, and characters to
// parameters by exact value-vector equality against the predicted table
inline void match_params(OracleTable& t, MatrixGroup& G) {
    const SmallField& F = G.field();
    std::size_t k = G.class_count();
    auto predicted = enumerate_params(t.n, t.q, Side::Phi);
    std::map<PartitionFn, std::size_t> used;
    t.class_params.assign(k, PartitionFn{});
    for (std::size_t c = 0; c < k; ++c) {
        const FqMatrix& g = G.class_rep(c);
        PartitionFn mu;
        mu.side = Side::Phi;
        for (const auto& coset : enumerate_cosets(t.q, Side::Phi, t.n)) {
            std::vector<std::int64_t> f = G.tower().minimal_polynomial(coset);
            int d = coset.level;
            std::vector<int> ranks; // r_j = #blocks of size >= j
            FqMatrix fg = matops::eval_poly(f, g, F);
            FqMatrix power = matops::identity(t.n);
            int prev_kernel = 0;
            while (true) {
                power = matops::mul(power, fg, F);
                int kernel = t.n - matops::rank(power, F);
                int inc = kernel - prev_kernel;
                if (inc == 0) break;
                if (inc % d != 0)
                    throw falsification_error("match_params: kernel jump not divisible by degree");
                ranks.push_back(inc / d);
                prev_kernel = kernel;
            }
            if (ranks.empty()) continue;
            mu.support.emplace(coset, Partition(std::vector<int>(ranks.begin(), ranks.end())).conjugate());
        }
        if (mu.weight() != t.n) throw falsification_error("match_params: weight mismatch");
        if (used.count(mu)) throw falsification_error("match_params: class parameter repeated");
        used.emplace(mu, c);
        // independent check: predicted centralizer order vs class size
        if (Int(t.class_sizes[c]) * centralizer_order(mu, t.q) != t.group_order)
            throw falsification_error("match_params: centralizer order mismatch");
        t.class_params[c] = std::move(mu);
    }
    if (used.size() != predicted.size())
        throw falsification_error("match_params: class parametrization not bijective");

    // characters: exact value-vector matching. Rows are keyed by coefficient
    // vectors at one common cyclotomic order so that numerically equal values
    // compare equal regardless of the order they were constructed at.
    auto lambdas = enumerate_params(t.n, t.q, Side::Theta);
    std::vector<std::vector<std::vector<CycNumber>>> all_rows;
    std::vector<std::vector<CycNumber>> predicted_rows;
    for (const auto& lam : lambdas) {
        std::vector<CycNumber> vec;
        for (std::size_t c = 0; c < k; ++c) vec.push_back(char_value(lam, t.class_params[c], t.q));
        predicted_rows.push_back(std::move(vec));
    }
    std::int64_t common = 1;
    for (const auto& row : predicted_rows)
        for (const auto& v : row) common = lcm64(common, v.order());
    for (const auto& row : t.char_values)
        for (const auto& v : row) common = lcm64(common, v.order());
    auto row_key = [common](const std::vector<CycNumber>& row) {
        std::vector<std::vector<Rational>> key;
        for (const auto& v : row) key.push_back(v.lifted(common).coeffs());
        return key;
    };
    std::map<std::vector<std::vector<Rational>>, PartitionFn> by_values;
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        if (!by_values.emplace(row_key(predicted_rows[i]), lambdas[i]).second)
            throw falsification_error("match_params: predicted rows collide");
    t.char_params.assign(t.char_values.size(), PartitionFn{});
    std::set<PartitionFn> taken;
    for (std::size_t r = 0; r < t.char_values.size(); ++r) {
        auto it = by_values.find(row_key(t.char_values[r]));
        if (it == by_values.end())
            throw falsification_error("match_params: oracle character has no predicted match");
        if (!taken.insert(it->second).second)
            throw falsification_error("match_params: character matched twice");
        t.char_params[r] = it->second;
    }
}

// class blocks under g -> g^r and character blocks under value twisting, for
// the residues of the d-Galois spec of the group
struct PowerMapOrbits {
    std::vector<std::vector<std::size_t>> class_blocks;
    std::vector<std::vector<std::size_t>> char_blocks;
};

inline PowerMapOrbits power_map_orbits(const OracleTable& t, std::int64_t d) {
    GaloisSpec spec = galois_residues(t.group_order, t.exponent, d);
    std::size_t k = t.class_sizes.size();
    PowerMapOrbits out;
    std::vector<bool> done(k, false);
    for (std::size_t c = 0; c < k; ++c) {
        if (done[c]) continue;
        std::set<std::size_t> orbit;
        for (std::int64_t r : spec.residues)
            orbit.insert(t.power_class[c][static_cast<std::size_t>(r % t.exponent)]);
        for (std::size_t m : orbit) done[m] = true;
        out.class_blocks.emplace_back(orbit.begin(), orbit.end());
    }
    std::int64_t common = 1;
    for (const auto& row : t.char_values)
        for (const auto& v : row) common = lcm64(common, v.order());
    auto row_key = [common](const std::vector<CycNumber>& row) {
        std::vector<std::vector<Rational>> key;
        for (const auto& v : row) key.push_back(v.lifted(common).coeffs());
        return key;
    };
    std::map<std::vector<std::vector<Rational>>, std::size_t> row_index;
    for (std::size_t r = 0; r < t.char_values.size(); ++r)
        row_index.emplace(row_key(t.char_values[r]), r);
    std::vector<bool> cdone(t.char_values.size(), false);
    for (std::size_t r = 0; r < t.char_values.size(); ++r) {
        if (cdone[r]) continue;
        std::set<std::size_t> orbit;
        for (std::int64_t res : spec.residues) {
            std::vector<CycNumber> twisted;
            for (const auto& v : t.char_values[r])
                twisted.push_back(v.order() == 1 ? v : v.galois_apply(res));
            auto it = row_index.find(row_key(twisted));
            if (it == row_index.end())
                throw falsification_error("power_map_orbits: twisted row is not a character");
            orbit.insert(it->second);
        }
        for (std::size_t m : orbit) cdone[m] = true;
        out.char_blocks.emplace_back(orbit.begin(), orbit.end());
    }
    return out;
}

} // namespace galchar
