#include <catch2/catch_amalgamated.hpp>

#include "galchar/partition.hpp"

using namespace galchar;

TEST_CASE("n_stat") {
    CHECK(n_stat(Partition{2}) == 0);
    CHECK(n_stat(Partition{1, 1}) == 1);
    CHECK(n_stat(Partition{1, 1, 1}) == 3);
    CHECK(n_stat(Partition{}) == 0);
}

TEST_CASE("partition helpers") {
    CHECK(partitions_of(0).size() == 1);
    CHECK(partitions_of(4).size() == 5);
    CHECK(partitions_of(6).size() == 11);
    CHECK(Partition{3, 1}.conjugate() == Partition{2, 1, 1});
    CHECK(z_stat(Partition{1, 1}) == 2);
    CHECK(z_stat(Partition{2}) == 2);
    CHECK(z_stat(Partition{2, 1, 1}) == 4);
    CHECK_THROWS_AS((Partition{1, 2}), invalid_input_error);
}

TEST_CASE("enumerate_params counts") {
    CHECK(enumerate_params(2, 2, Side::Phi).size() == 3);
    CHECK(enumerate_params(2, 3, Side::Phi).size() == 8);
    CHECK(enumerate_params(1, 3, Side::Theta).size() == 2);
    CHECK(enumerate_params(3, 2, Side::Phi).size() == 6);

    // class count equals character count
    for (std::int64_t q : {2, 3, 4, 5})
        for (int n = 1; n <= 3; ++n)
            CHECK(enumerate_params(n, q, Side::Phi).size() == enumerate_params(n, q, Side::Theta).size());
}

TEST_CASE("enumerate_params weight and determinism") {
    auto params = enumerate_params(3, 3, Side::Phi);
    for (const auto& f : params) {
        CHECK(f.weight() == 3);
        for (const auto& [coset, lam] : f.support) CHECK(!lam.empty());
    }
    auto again = enumerate_params(3, 3, Side::Phi);
    CHECK(params == again);
    // each exactly once
    std::set<PartitionFn> uniq(params.begin(), params.end());
    CHECK(uniq.size() == params.size());
}

TEST_CASE("weight additive under disjoint union") {
    auto params = enumerate_params(2, 3, Side::Phi);
    for (const auto& a : params)
        for (const auto& b : params) {
            bool disjoint = true;
            for (const auto& [c, lam] : a.support)
                if (b.support.count(c)) disjoint = false;
            if (!disjoint) continue;
            PartitionFn u = a;
            for (const auto& [c, lam] : b.support) u.support.emplace(c, lam);
            CHECK(u.weight() == a.weight() + b.weight());
        }
}
