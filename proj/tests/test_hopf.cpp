#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <set>

#include "galchar/hopf.hpp"

using namespace galchar;

namespace {

GaloisOrbit singleton_orbit(const PartitionFn& f, std::int64_t d = 1) {
    GaloisOrbit o;
    o.members = {f};
    o.d = d;
    return o;
}

PartitionFn theta_param(const CyclotomicCoset& c, const Partition& lam) {
    PartitionFn f;
    f.side = Side::Theta;
    f.support.emplace(c, lam);
    return f;
}

} // namespace

TEST_CASE("product_constants basic expansions") {
    CyclotomicCoset phi0 = frobenius_coset(2, 1, 0, Side::Theta);
    GaloisOrbit triv = singleton_orbit(theta_param(phi0, Partition{1}));

    // trivial_1 * trivial_1 = chi^(2) + chi^(1,1) over F_2
    auto c = product_constants(triv, triv, 2, 1);
    REQUIRE(c.size() == 2);
    CHECK(c.at(singleton_orbit(theta_param(phi0, Partition{2}))) == CycNumber(1));
    CHECK(c.at(singleton_orbit(theta_param(phi0, Partition{1, 1}))) == CycNumber(1));

    // degree-0 unit acts as the identity
    auto u = product_constants(unit_orbit(1), triv, 2, 1);
    REQUIRE(u.size() == 1);
    CHECK(u.at(triv) == CycNumber(1));
}

TEST_CASE("degree-1 products over F_3") {
    auto deg1 = galois_irr_at_degree(1, 3, 1);
    REQUIRE(deg1.size() == 2);
    std::set<GaloisOrbit> same_char_constituents;
    for (const auto& a : deg1)
        for (const auto& b : deg1) {
            for (const auto& [gamma, c] : product_constants(a, b, 3, 1)) {
                REQUIRE(c.is_rational());
                Rational v = c.rational_value();
                CHECK(rat_den(v) == 1);
                CHECK(rat_num(v) >= 0);
                if (a == b) same_char_constituents.insert(gamma);
            }
        }
    // chi^(2), chi^(1,1) on each of the two characters of F_3^x
    CHECK(same_char_constituents.size() == 4);
}

TEST_CASE("grading of structure constants") {
    for (std::int64_t q : {2, 3})
        for (const auto& a : galois_irr_at_degree(1, q, 1))
            for (const auto& b : galois_irr_at_degree(2, q, 1))
                for (const auto& [gamma, c] : product_constants(a, b, q, 1))
                    CHECK(orbit_degree(gamma) == 3);
}

TEST_CASE("self-duality via adjointness") {
    CHECK(self_duality_check(2, 2, 1) == 0);
    CHECK(self_duality_check(2, 3, 1) == 0);
    CHECK(self_duality_check(3, 2, 1) == 0);
    CHECK(self_duality_check(3, 2, 2) == 0);
}

TEST_CASE("positivity of structure constants") {
    CHECK(positivity_check(3, 2, 1) == 0);
    CHECK(positivity_check(3, 3, 1) == 0);
    CHECK(positivity_check(3, 3, 2) == 0);
}

TEST_CASE("primitive_check") {
    CyclotomicCoset phi0 = frobenius_coset(2, 1, 0, Side::Theta);
    SymElement p1;
    PowerLabel l;
    l.factors.emplace_back(1, phi0);
    p1.add(l, CycNumber(1));
    CHECK(primitive_check(p1, 2));

    CHECK_FALSE(primitive_check(schur_in_power_sums(theta_param(phi0, Partition{2})), 2));

    // non-homogeneous input rejected
    SymElement mixed = p1;
    PowerLabel l2;
    l2.factors.emplace_back(2, phi0);
    mixed.add(l2, CycNumber(1));
    CHECK_THROWS_AS(primitive_check(mixed, 2), invalid_input_error);
    CHECK_THROWS_AS(primitive_check(SymElement{}, 2), invalid_input_error);
}

TEST_CASE("cuspidal counts are necklace counts") {
    for (std::int64_t q : {2, 3, 4, 5}) CHECK(cuspidals(1, q).size() == static_cast<std::size_t>(q - 1));
    CHECK(cuspidals(2, 2).size() == 1);
    CHECK(cuspidals(3, 2).size() == 2);
    for (std::int64_t q : {2, 3})
        for (int n = 1; n <= 4; ++n)
            CHECK(cuspidals(n, q).size() == static_cast<std::size_t>(coset_count_exact(q, n)));
}

TEST_CASE("galois_cuspidals") {
    // (2,3,1): the fused pair {1,3},{5,7} and the fixed coset {2,6}
    auto gc = galois_cuspidals(2, 3, 1);
    REQUIRE(gc.size() == 2);
    std::multiset<std::int64_t> norms;
    for (const auto& e : gc) {
        norms.insert(e.norm_square);
        CHECK(e.degree == 2);
        CHECK(primitive_check(e.sum, 3));
        CHECK(static_cast<std::int64_t>(e.orbit.size()) == e.norm_square);
    }
    CHECK(norms == std::multiset<std::int64_t>{1, 2});

    auto gc22 = galois_cuspidals(2, 2, 1);
    REQUIRE(gc22.size() == 1);
    CHECK(gc22.front().norm_square == 1);

    // trivial Galois action: one orbit per cuspidal
    std::int64_t dfull = effective_modulus(2, 3);
    CHECK(galois_cuspidals(2, 3, dfull).size() == cuspidals(2, 3).size());
}

TEST_CASE("every galois cuspidal is primitive") {
    for (std::int64_t q : {2, 3})
        for (int n = 1; n <= 3; ++n)
            for (std::int64_t d : {1, 2})
                for (const auto& e : galois_cuspidals(n, q, d)) CHECK(primitive_check(e.sum, q));
}

TEST_CASE("zelevinsky_component examples") {
    CyclotomicCoset phi0 = frobenius_coset(2, 1, 0, Side::Theta);
    auto gc1 = galois_cuspidals(1, 2, 1);
    REQUIRE(gc1.size() == 1);
    auto comp = zelevinsky_component(gc1.front(), 2, 2, 1);
    std::set<GaloisOrbit> got(comp.begin(), comp.end());
    std::set<GaloisOrbit> expect{singleton_orbit(theta_param(phi0, Partition{1})),
                                 singleton_orbit(theta_param(phi0, Partition{2})),
                                 singleton_orbit(theta_param(phi0, Partition{1, 1}))};
    CHECK(got == expect);

    // degree-2 cuspidal at bound 2: only itself
    auto gc2 = galois_cuspidals(2, 2, 1);
    REQUIRE(gc2.size() == 1);
    auto comp2 = zelevinsky_component(gc2.front(), 2, 2, 1);
    REQUIRE(comp2.size() == 1);
    CHECK(comp2.front() == gc2.front().orbit);

    // non-cuspidal input rejected
    GradedBasisElement bad = gc1.front();
    bad.orbit = singleton_orbit(theta_param(phi0, Partition{2}));
    CHECK_THROWS_AS(zelevinsky_component(bad, 2, 2, 1), invalid_input_error);
}

TEST_CASE("zelevinsky components are disjoint and account for all labels") {
    const int bound = 3;
    for (std::int64_t q : {2, 3}) {
        // all cuspidal orbits of degree <= bound
        std::vector<GradedBasisElement> rhos;
        for (int n = 1; n <= bound; ++n)
            for (auto& e : galois_cuspidals(n, q, 1)) rhos.push_back(std::move(e));

        std::vector<std::set<GaloisOrbit>> comps;
        for (const auto& rho : rhos) {
            auto c = zelevinsky_component(rho, bound, q, 1);
            comps.emplace_back(c.begin(), c.end());
        }
        // pairwise disjoint
        for (std::size_t i = 0; i < comps.size(); ++i)
            for (std::size_t j = i + 1; j < comps.size(); ++j)
                for (const auto& o : comps[i]) CHECK(!comps[j].count(o));

        // labels supported on a single cuspidal orbit appear in exactly one component
        for (int n = 1; n <= bound; ++n)
            for (const auto& beta : galois_irr_at_degree(n, q, 1)) {
                bool single = false;
                for (std::size_t i = 0; i < rhos.size(); ++i) {
                    std::set<CyclotomicCoset> rho_cosets;
                    for (const auto& m : rhos[i].orbit.members)
                        rho_cosets.insert(m.support.begin()->first);
                    bool contained = true;
                    for (const auto& [coset, lam] : beta.canonical().support)
                        if (!rho_cosets.count(coset)) contained = false;
                    if (contained) single = true;
                }
                if (!single) continue;
                int hits = 0;
                for (const auto& comp : comps) hits += comp.count(beta) ? 1 : 0;
                CHECK(hits == 1);
            }

        // dimension accounting: products of component sizes over cuspidal
        // degree assignments reproduce the label count in each degree
        for (int n = 1; n <= bound; ++n) {
            std::vector<std::map<int, std::size_t>> comp_sizes(rhos.size());
            for (std::size_t i = 0; i < rhos.size(); ++i)
                for (const auto& o : comps[i]) ++comp_sizes[i][orbit_degree(o)];
            std::function<std::size_t(std::size_t, int)> count = [&](std::size_t idx,
                                                                     int remaining) -> std::size_t {
                if (idx == rhos.size()) return remaining == 0 ? 1 : 0;
                std::size_t total = count(idx + 1, remaining); // this cuspidal unused
                for (int m = rhos[idx].degree; m <= remaining; m += rhos[idx].degree) {
                    auto it = comp_sizes[idx].find(m);
                    if (it != comp_sizes[idx].end()) total += it->second * count(idx + 1, remaining - m);
                }
                return total;
            };
            CHECK(count(0, n) == galois_irr_at_degree(n, q, 1).size());
        }
    }
}
