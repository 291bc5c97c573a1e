#include <doctest.h>

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "zetagaps/parallel.hpp"

using namespace zetagaps;

TEST_CASE("splitmix64 produces the published stream for seed 0") {
    std::uint64_t s = 0;
    CHECK(splitmix64(s) == 0xE220A8397B1DCDAFULL);
    CHECK(splitmix64(s) == 0x6E789E6AA1B965F4ULL);
    CHECK(splitmix64(s) == 0x06C45D188009454FULL);
}

TEST_CASE("derive_stream_seed is deterministic and index-sensitive") {
    CHECK(derive_stream_seed(1, 0) == derive_stream_seed(1, 0));
    CHECK(derive_stream_seed(1, 0) != derive_stream_seed(1, 1));
    CHECK(derive_stream_seed(1, 5) != derive_stream_seed(2, 5));
    // Neighboring indices across neighboring seeds stay distinct.
    std::vector<std::uint64_t> seen;
    for (std::uint64_t seed = 1; seed <= 4; ++seed)
        for (std::uint64_t idx = 0; idx < 64; ++idx)
            seen.push_back(derive_stream_seed(seed, idx));
    for (std::size_t i = 0; i < seen.size(); ++i)
        for (std::size_t j = i + 1; j < seen.size(); ++j)
            CHECK(seen[i] != seen[j]);
}

TEST_CASE("parallel_for visits every slot exactly once") {
    for (int n_threads : {0, 1, 4}) {
        std::vector<int> hits(1000, 0);
        parallel_for(hits.size(), n_threads,
                     [&](std::size_t i) { hits[i] += 1; });
        for (int h : hits) CHECK(h == 1);
    }
}

TEST_CASE("parallel_for result is independent of the thread count") {
    auto fill = [](int n_threads) {
        std::vector<std::uint64_t> out(257);
        parallel_for(out.size(), n_threads, [&](std::size_t i) {
            out[i] = derive_stream_seed(9, i);
        });
        return out;
    };
    auto base = fill(1);
    CHECK(fill(2) == base);
    CHECK(fill(7) == base);
}

TEST_CASE("parallel_for rethrows a worker exception") {
    std::atomic<int> completed{0};
    auto boom = [&](std::size_t i) {
        if (i == 37) throw std::runtime_error("worker failure");
        completed.fetch_add(1);
    };
    CHECK_THROWS_AS(parallel_for(100, 4, boom), std::runtime_error);
    CHECK_THROWS_AS(parallel_for(100, 1, boom), std::runtime_error);
}

TEST_CASE("parallel_for with zero items is a no-op") {
    bool called = false;
    parallel_for(0, 4, [&](std::size_t) { called = true; });
    CHECK_FALSE(called);
}
