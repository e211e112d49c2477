#include <doctest.h>

#include <atomic>
#include <numeric>
#include <stdexcept>

#include "lulc/parallel.hpp"
#include "lulc/rng.hpp"

using namespace lulc;

TEST_CASE("engine output is the standard mt19937_64 sequence") {
    // The standard fixes the 10000th output of a default-seeded mt19937_64.
    Rng r(5489u);
    std::uint64_t v = 0;
    for (int i = 0; i < 10000; ++i) v = r.next_u64();
    CHECK(v == 9981545732273789042ull);
}

TEST_CASE("uniform_index stays in range and covers it") {
    Rng r(1);
    std::vector<int> hits(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const auto v = r.uniform_index(7);
        REQUIRE(v < 7);
        ++hits[v];
    }
    for (int h : hits) CHECK(h > 800);
}

TEST_CASE("uniform01 lies in [0,1) and normal has unit scale") {
    Rng r(2);
    double sum = 0, sq = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double z = r.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.05);
    CHECK(std::abs(sq / n - 1.0) < 0.05);
}

TEST_CASE("derive_seed separates streams") {
    CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
}

TEST_CASE("for_chunks visits every index once for any thread count") {
    for (unsigned t : {1u, 2u, 4u}) {
        parallel::set_max_threads(t);
        std::vector<std::atomic<int>> seen(1003);
        parallel::for_chunks(seen.size(), 10, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) ++seen[i];
        });
        for (auto& s : seen) CHECK(s.load() == 1);
    }
    CHECK(parallel::chunk_count(1003, 10) == 101);
    parallel::set_max_threads(1);
}

TEST_CASE("for_chunks rethrows worker exceptions") {
    parallel::set_max_threads(3);
    CHECK_THROWS_AS(parallel::for_chunks(100, 1,
                                         [](std::size_t b, std::size_t) {
                                             if (b == 42) throw std::runtime_error("boom");
                                         }),
                    std::runtime_error);
    parallel::set_max_threads(1);
}
