#include <catch2/catch_amalgamated.hpp>

#include "galchar/galois.hpp"

using namespace galchar;

TEST_CASE("act_on_coset") {
    CyclotomicCoset c13 = frobenius_coset(3, 2, 1);
    CHECK(act_on_coset(1, c13) == c13);
    CyclotomicCoset moved = act_on_coset(5, c13);
    CHECK(moved.members() == std::vector<std::int64_t>{5, 7});

    CyclotomicCoset c12 = frobenius_coset(2, 2, 1);
    CHECK(act_on_coset(5, c12) == c12); // 5 = 2 mod 3, in the coset

    CHECK_THROWS_AS(act_on_coset(3, frobenius_coset(2, 2, 1)), invalid_input_error);
}

TEST_CASE("act_on_param") {
    // identity residue
    for (const auto& f : enumerate_params(2, 3, Side::Phi)) CHECK(act_on_param(1, f) == f);

    // mu({1,3} mod 8) = (1) moves to mu'({5,7}) = (1) under r = 5
    PartitionFn mu;
    mu.side = Side::Phi;
    mu.support.emplace(frobenius_coset(3, 2, 1), Partition{1});
    PartitionFn moved = act_on_param(5, mu);
    REQUIRE(moved.support.size() == 1);
    CHECK(moved.support.begin()->first.members() == std::vector<std::int64_t>{5, 7});

    // unipotent-type params are fixed by every residue
    PartitionFn uni;
    uni.side = Side::Phi;
    uni.support.emplace(frobenius_coset(3, 1, 0), Partition{2, 1});
    for (std::int64_t r : {1, 5, 7, 11}) CHECK(act_on_param(r, uni) == uni);

    // weight preserved, bijective
    auto spec = galois_spec_for_gl(2, 3, 1);
    auto params = enumerate_params(2, 3, Side::Phi);
    for (std::int64_t r : spec.residues) {
        std::set<PartitionFn> image;
        for (const auto& f : params) {
            PartitionFn g = act_on_param(r, f);
            CHECK(g.weight() == f.weight());
            image.insert(g);
        }
        CHECK(image.size() == params.size());
    }
}

TEST_CASE("orbit structure at d = 1") {
    // q=2, n=2: everything is a singleton
    auto spec22 = galois_spec_for_gl(2, 2, 1);
    for (const auto& f : enumerate_params(2, 2, Side::Phi))
        CHECK(orbit_of_param(f, spec22).size() == 1);

    // q=3, n=2: cuspidal params {1,3} and {5,7} fuse
    auto spec23 = galois_spec_for_gl(2, 3, 1);
    PartitionFn cusp;
    cusp.side = Side::Phi;
    cusp.support.emplace(frobenius_coset(3, 2, 1), Partition{1});
    CHECK(orbit_of_param(cusp, spec23).size() == 2);

    // trivial Galois group: d = group order
    auto spec_full = galois_spec_for_gl(2, 3, 48);
    for (const auto& f : enumerate_params(2, 3, Side::Phi))
        CHECK(orbit_of_param(f, spec_full).size() == 1);
}

TEST_CASE("galois_classes and galois_irr_indices block counts") {
    CHECK(galois_classes(2, 2, 1).size() == 3);
    CHECK(galois_classes(2, 3, 1).size() == 7);
    CHECK(galois_classes(2, 3, 48).size() == 8);
    CHECK(galois_irr_indices(2, 2, 1).size() == 3);
    CHECK(galois_irr_indices(2, 3, 1).size() == 7);
    CHECK(galois_irr_indices(1, 3, 2).size() == 2);
    CHECK_THROWS_AS(galois_classes(2, 3, 5), invalid_input_error);
}

TEST_CASE("class and character block counts coincide") {
    struct Case {
        int n;
        std::int64_t q, d;
    };
    for (auto [n, q, d] : {Case{1, 2, 1}, Case{1, 3, 1}, Case{1, 5, 2}, Case{2, 2, 1},
                           Case{2, 2, 2}, Case{2, 3, 1}, Case{2, 3, 2}, Case{3, 2, 1}})
        CHECK(galois_classes(n, q, d).size() == galois_irr_indices(n, q, d).size());
}

TEST_CASE("refinement monotonicity in d") {
    // if d | d', the d'-partition refines the d-partition
    struct Case {
        int n;
        std::int64_t q, d, dprime;
    };
    for (auto [n, q, d, dp] : {Case{2, 3, 1, 2}, Case{2, 3, 2, 8}, Case{2, 3, 1, 48},
                               Case{1, 5, 1, 4}, Case{2, 2, 1, 6}}) {
        auto coarse = galois_classes(n, q, d);
        auto fine = galois_classes(n, q, dp);
        for (const auto& fblock : fine) {
            // every fine block is contained in exactly one coarse block
            int containers = 0;
            for (const auto& cblock : coarse) {
                bool all = true;
                for (const auto& m : fblock.members)
                    if (!std::binary_search(cblock.members.begin(), cblock.members.end(), m)) all = false;
                if (all) ++containers;
            }
            CHECK(containers == 1);
        }
    }
}

TEST_CASE("identity class parameter is a singleton block") {
    for (std::int64_t q : {2, 3}) {
        for (std::int64_t d : {1, 2}) {
            int n = 2;
            PartitionFn identity;
            identity.side = Side::Phi;
            identity.support.emplace(frobenius_coset(q, 1, 0), Partition{1, 1});
            auto orbit = orbit_of_param(identity, galois_spec_for_gl(n, q, d));
            CHECK(orbit.size() == 1);
        }
    }
}

TEST_CASE("orbits agree for the action and its inverse") {
    auto spec = galois_spec_for_gl(2, 3, 1);
    std::int64_t L = spec.effective_modulus;
    for (const auto& f : enumerate_params(2, 3, Side::Theta)) {
        std::set<PartitionFn> fwd, bwd;
        for (std::int64_t r : spec.residues) {
            fwd.insert(act_on_param(r, f));
            bwd.insert(act_on_param(mod_inverse(r, L), f));
        }
        CHECK(fwd == bwd);
    }
}
