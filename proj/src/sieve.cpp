#include "brun/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace brun::sieve {

namespace {

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t first_odd_at_least(std::uint64_t v) { return v | 1u; }

} // namespace

unsigned resolve_threads(unsigned requested)
{
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::vector<std::uint32_t> small_odd_primes(std::uint32_t limit)
{
    std::vector<std::uint32_t> primes;
    if (limit < 3) return primes;
    // composite[i] refers to 2i + 1.
    std::vector<bool> composite(limit / 2 + 1, false);
    for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
        if (composite[i]) continue;
        const std::uint64_t q = 2 * i + 1;
        for (std::uint64_t m = q * q; m <= limit; m += 2 * q) composite[m / 2] = true;
    }
    for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
        if (!composite[i]) primes.push_back(static_cast<std::uint32_t>(2 * i + 1));
    }
    return primes;
}

Segmenter::Segmenter(std::uint64_t limit, std::uint64_t segment_bytes)
    : limit_(limit), segment_slots_(std::max<std::uint64_t>(segment_bytes, 8) * 8)
{
    if (limit >= (std::uint64_t{1} << 62)) throw std::length_error("sieve limit too large");
    segment_slots_ = (segment_slots_ + 63) / 64 * 64;
    base_primes_ = small_odd_primes(static_cast<std::uint32_t>(isqrt(limit) + 1));
}

void Segmenter::for_each_segment(std::uint64_t lo, std::uint64_t hi, std::uint64_t overlap,
                                 const std::function<void(const Segment&)>& fn) const
{
    if (lo >= hi) return;
    std::uint64_t start = first_odd_at_least(lo);
    if (start >= hi) return;
    const std::uint64_t total_slots = (hi - start + 1) / 2; // odd numbers in [start, hi)
    if (hi - 1 + 2 * overlap > limit_) {
        throw std::length_error("segment range exceeds the segmenter limit");
    }

    std::vector<std::uint64_t> words((segment_slots_ + overlap + 63) / 64 + 1);
    for (std::uint64_t done = 0; done < total_slots; done += segment_slots_) {
        const std::uint64_t slots = std::min(segment_slots_, total_slots - done);
        const std::uint64_t sieved = slots + overlap;
        const std::uint64_t seg_lo = start + 2 * done;
        const std::uint64_t seg_last = seg_lo + 2 * (sieved - 1); // last odd value sieved
        const std::size_t nwords = static_cast<std::size_t>((sieved + 63) / 64);

        std::fill(words.begin(), words.begin() + nwords, ~std::uint64_t{0});
        if (sieved % 64) words[nwords - 1] = (std::uint64_t{1} << (sieved % 64)) - 1;

        for (const std::uint32_t q32 : base_primes_) {
            const std::uint64_t q = q32;
            if (q * q > seg_last) break;
            std::uint64_t m = std::max(q * q, (seg_lo + q - 1) / q * q);
            if ((m & 1u) == 0) m += q;
            for (std::uint64_t i = (m - seg_lo) / 2; i < sieved; i += q) {
                words[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
            }
        }
        if (seg_lo == 1) words[0] &= ~std::uint64_t{1};

        fn(Segment{seg_lo, slots, std::span<const std::uint64_t>(words.data(), nwords)});
    }
}

void for_each_odd_prime(const Segmenter& seg, std::uint64_t lo, std::uint64_t hi,
                        const std::function<void(std::uint64_t)>& fn)
{
    seg.for_each_segment(lo, hi, 0, [&](const Segment& s) {
        const std::size_t full = static_cast<std::size_t>((s.slots + 63) / 64);
        for (std::size_t w = 0; w < full; ++w) {
            std::uint64_t bits = s.words[w];
            if (w == full - 1 && s.slots % 64) bits &= (std::uint64_t{1} << (s.slots % 64)) - 1;
            while (bits) {
                const int b = std::countr_zero(bits);
                fn(s.first_odd + 2 * (64 * w + static_cast<std::uint64_t>(b)));
                bits &= bits - 1;
            }
        }
    });
}

void for_each_twin(const Segmenter& seg, std::uint64_t lo, std::uint64_t hi,
                   const std::function<void(std::uint64_t)>& fn)
{
    // One overlap slot so that p + 2 of the last p in a segment is sieved.
    seg.for_each_segment(lo, hi, 1, [&](const Segment& s) {
        const std::size_t full = static_cast<std::size_t>((s.slots + 63) / 64);
        for (std::size_t w = 0; w < full; ++w) {
            const std::uint64_t cur = s.words[w];
            const std::uint64_t nxt = (w + 1 < s.words.size()) ? s.words[w + 1] : 0;
            // Bit i of `twins` is set when slots i and i+1 (n and n+2) are both prime.
            std::uint64_t twins = cur & ((cur >> 1) | (nxt << 63));
            if (w == full - 1 && s.slots % 64) twins &= (std::uint64_t{1} << (s.slots % 64)) - 1;
            while (twins) {
                const int b = std::countr_zero(twins);
                fn(s.first_odd + 2 * (64 * w + static_cast<std::uint64_t>(b)));
                twins &= twins - 1;
            }
        }
    });
}

std::vector<std::uint64_t> sieve_range(std::uint64_t a, std::uint64_t b, const SieveOptions& opts)
{
    if (a < 2 || a >= b) {
        throw std::invalid_argument("sieve_range needs 2 <= a < b (got a=" + std::to_string(a) +
                                    ", b=" + std::to_string(b) + ")");
    }
    if (b - a > opts.range_budget) {
        throw std::length_error("range of " + std::to_string(b - a) +
                                " exceeds the sieve_range budget; split it into segments or use census()");
    }
    const Segmenter seg(b + 2, opts.segment_bytes);
    std::vector<std::uint64_t> out;
    for_each_twin(seg, a, b, [&](std::uint64_t p) { out.push_back(p); });
    return out;
}

namespace {

struct BlockCensus {
    std::uint64_t count = 0;
    double lo = 0.0;
    double hi = 0.0;
};

} // namespace

TwinCensus census(std::uint64_t x, const SieveOptions& opts)
{
    if (x < 3) throw std::invalid_argument("census needs x >= 3");
    using namespace rounding;
    const Segmenter seg(x + 3, opts.segment_bytes);
    const auto blocks = map_blocks<BlockCensus>(3, x + 1, opts.threads, [&](std::uint64_t lo, std::uint64_t hi) {
        BlockCensus bc;
        for_each_twin(seg, lo, hi, [&](std::uint64_t p) {
            const double dp = static_cast<double>(p);
            const double dq = static_cast<double>(p + 2);
            bc.lo = add_down(bc.lo, add_down(div_down(1.0, dp), div_down(1.0, dq)));
            bc.hi = add_up(bc.hi, add_up(div_up(1.0, dp), div_up(1.0, dq)));
            ++bc.count;
        });
        return bc;
    });

    TwinCensus result{x, 0, Interval{}};
    double lo = 0.0, hi = 0.0;
    for (const auto& bc : blocks) {
        result.pi2 += bc.count;
        lo = add_down(lo, bc.lo);
        hi = add_up(hi, bc.hi);
    }
    result.brun_partial = Interval::make(lo, hi);
    return result;
}

std::uint64_t prime_count(std::uint64_t x, const SieveOptions& opts)
{
    if (x < 2) throw std::invalid_argument("prime_count needs x >= 2");
    if (x < 3) return 1;
    const Segmenter seg(x + 1, opts.segment_bytes);
    const auto blocks = map_blocks<std::uint64_t>(3, x + 1, opts.threads, [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t n = 0;
        seg.for_each_segment(lo, hi, 0, [&](const Segment& s) {
            const std::size_t full = static_cast<std::size_t>((s.slots + 63) / 64);
            for (std::size_t w = 0; w < full; ++w) {
                std::uint64_t bits = s.words[w];
                if (w == full - 1 && s.slots % 64) bits &= (std::uint64_t{1} << (s.slots % 64)) - 1;
                n += static_cast<std::uint64_t>(std::popcount(bits));
            }
        });
        return n;
    });
    std::uint64_t total = 1; // the prime 2
    for (const auto n : blocks) total += n;
    return total;
}

} // namespace brun::sieve
