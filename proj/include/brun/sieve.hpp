// Segmented, bit-packed sieve of Eratosthenes over odd integers, with twin
// detection and interval accumulation of the partial Brun sum.
#pragma once

#include "brun/interval.hpp"

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace brun::sieve {

struct SieveOptions {
    /// Bitmap bytes per segment; 256 KiB keeps a segment resident in L2.
    std::uint64_t segment_bytes = 256 * 1024;
    /// Worker threads; 0 means std::thread::hardware_concurrency().
    unsigned threads = 1;
    /// Largest b - a accepted by sieve_range, which materializes its output.
    std::uint64_t range_budget = std::uint64_t{1} << 34;
};

/// Reductions over primes are done per fixed block of this many integers,
/// then combined in ascending block order. The block grid does not depend
/// on segment size or thread count, so interval endpoints are reproducible.
inline constexpr std::uint64_t kReductionBlock = std::uint64_t{1} << 24;

/// A census point: pi2 = #{p <= x : p, p+2 prime}, brun_partial encloses
/// the sum of 1/p + 1/(p+2) over those p.
struct TwinCensus {
    std::uint64_t x = 0;
    std::uint64_t pi2 = 0;
    Interval brun_partial;
};

/// Odd primes up to `limit`, by a plain sieve.
std::vector<std::uint32_t> small_odd_primes(std::uint32_t limit);

/// Segment bitmap: bit i of words[] set iff first_odd + 2i is prime.
struct Segment {
    std::uint64_t first_odd = 0;
    std::uint64_t slots = 0; // number of valid bits
    std::span<const std::uint64_t> words;

    bool is_prime_slot(std::uint64_t i) const { return (words[i >> 6] >> (i & 63)) & 1u; }
};

/// Walks [lo, hi) in segments. Base primes are computed once for `limit`.
class Segmenter {
public:
    Segmenter(std::uint64_t limit, std::uint64_t segment_bytes);

    /// Calls fn(const Segment&) for consecutive segments covering the odd
    /// numbers in [lo, hi). `overlap` extra odd slots are sieved past the
    /// end of every segment so neighbours such as p + 2 can be inspected.
    void for_each_segment(std::uint64_t lo, std::uint64_t hi, std::uint64_t overlap,
                          const std::function<void(const Segment&)>& fn) const;

    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
    std::uint64_t segment_slots_;
    std::vector<std::uint32_t> base_primes_;
};

/// Odd primes p with lo <= p < hi, ascending.
void for_each_odd_prime(const Segmenter& seg, std::uint64_t lo, std::uint64_t hi,
                        const std::function<void(std::uint64_t)>& fn);

/// Twin lower members p (p and p + 2 prime) with lo <= p < hi, ascending.
void for_each_twin(const Segmenter& seg, std::uint64_t lo, std::uint64_t hi,
                   const std::function<void(std::uint64_t)>& fn);

/// Twin lower members in [a, b). Throws std::invalid_argument unless
/// 2 <= a < b, and std::length_error if b - a exceeds the range budget.
std::vector<std::uint64_t> sieve_range(std::uint64_t a, std::uint64_t b, const SieveOptions& opts = {});

/// Exact pi2(x) and an enclosure of B(x). Requires x >= 3.
TwinCensus census(std::uint64_t x, const SieveOptions& opts = {});

/// Exact pi(x). Requires x >= 2.
std::uint64_t prime_count(std::uint64_t x, const SieveOptions& opts = {});

unsigned resolve_threads(unsigned requested);

/// Runs fn(block_lo, block_hi) over the kReductionBlock grid covering
/// [lo, hi) on a pool of workers and returns the results in block order.
template <class R, class Fn>
std::vector<R> map_blocks(std::uint64_t lo, std::uint64_t hi, unsigned threads, Fn fn)
{
    std::vector<R> results;
    if (lo >= hi) return results;
    const std::uint64_t first = lo / kReductionBlock;
    const std::uint64_t last = (hi - 1) / kReductionBlock;
    const std::size_t count = static_cast<std::size_t>(last - first + 1);
    results.resize(count);

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            const std::uint64_t b = first + i;
            const std::uint64_t block_lo = std::max(lo, b * kReductionBlock);
            const std::uint64_t block_hi = std::min(hi, (b + 1) * kReductionBlock);
            try {
                results[i] = fn(block_lo, block_hi);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::min<std::size_t>(resolve_threads(threads), count);
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

} // namespace brun::sieve
