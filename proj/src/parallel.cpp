#include "zetagaps/parallel.hpp"

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zetagaps {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed ^ (index * 0xD6E8FEB86659FD93ULL);
    std::uint64_t s = splitmix64(state);
    return splitmix64(state) ^ s;
}

void parallel_for(std::size_t n, int n_threads,
                  const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    std::size_t workers =
        n_threads <= 1
            ? 1
            : std::min<std::size_t>(static_cast<std::size_t>(n_threads), n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::mutex err_mu;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace zetagaps
