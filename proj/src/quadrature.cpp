#include "brun/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <sstream>

namespace brun::quadrature {

namespace {

// Top levels are always split so that subtrees can go to workers; being
// unconditional, this does not make the tree depend on the thread count.
constexpr unsigned kForcedDepth = 4;

struct Tally {
    std::uint64_t evaluations = 0;
    std::uint64_t leaves = 0;
};

struct BudgetExceeded {};

class Pass {
public:
    Pass(const Integrand& f, double threshold, const Options& opts, std::uint64_t budget)
        : f_(f), threshold_(threshold), opts_(opts), budget_(budget)
    {
    }

    Interval node(double a, double b, unsigned depth, Tally& tally) const
    {
        const Interval own = f_(unchecked_interval(a, b)) * (Interval::point(b) - Interval::point(a));
        ++tally.evaluations;
        if (spent_.fetch_add(1, std::memory_order_relaxed) >= budget_) throw BudgetExceeded{};
        const double m = a + 0.5 * (b - a);
        const bool can_split = depth < opts_.max_depth && a < m && m < b;
        const bool want_split = depth < kForcedDepth || !(own.width() <= threshold_);
        if (!can_split || !want_split) {
            ++tally.leaves;
            return own;
        }
        Interval left, right;
        if (depth < kForcedDepth && opts_.threads > 1 && depth < 3) {
            Tally t_left;
            auto fut = std::async(std::launch::async, [&] { return node(a, m, depth + 1, t_left); });
            right = node(m, b, depth + 1, tally);
            left = fut.get();
            tally.evaluations += t_left.evaluations;
            tally.leaves += t_left.leaves;
        } else {
            left = node(a, m, depth + 1, tally);
            right = node(m, b, depth + 1, tally);
        }
        return intersect(own, left + right);
    }

private:
    const Integrand& f_;
    double threshold_;
    const Options& opts_;
    std::uint64_t budget_;
    mutable std::atomic<std::uint64_t> spent_{0};
};

} // namespace

Result integrate(double u0, double u1, const Integrand& f, double width_target, const Options& opts)
{
    if (!(u0 < u1) || !std::isfinite(u0) || !std::isfinite(u1)) {
        throw std::invalid_argument("quadrature needs finite u0 < u1");
    }
    if (!(width_target > 0.0) || !std::isfinite(width_target)) {
        throw std::invalid_argument("quadrature needs a positive width target");
    }

    // The leaf threshold is 2^j for the largest j <= floor(log2 target)
    // whose tree meets the target. Finer trees give nested enclosures, so
    // the set of admissible j is downward closed; the answer does not depend
    // on how the search below probes it, and a smaller target can only pick
    // a finer tree.
    Result result;
    std::uint64_t spent = 0;
    double achieved = rounding::kInf;
    struct Probe {
        Interval value;
        Tally tally;
    };
    auto probe = [&](int j, Probe& out) {
        if (spent >= opts.max_evaluations) return false;
        try {
            out.value = Pass(f, std::ldexp(1.0, j), opts, opts.max_evaluations - spent).node(u0, u1, 0, out.tally);
        } catch (const BudgetExceeded&) {
            spent = opts.max_evaluations;
            return false;
        }
        spent += out.tally.evaluations;
        ++result.passes;
        return true;
    };

    constexpr int kMinExponent = -1074;
    const int j_top = std::ilogb(width_target);
    int fail = j_top + 1; // exclusive upper end of the search window
    int j = j_top;
    Probe best;
    int best_j = 0;
    bool found = false;
    // Gallop down: zero-order enclosures shrink like the square root of the
    // leaf threshold, which sets the step.
    while (j >= kMinExponent) {
        Probe p;
        if (!probe(j, p)) break;
        achieved = std::fmin(achieved, p.value.width());
        if (p.value.width() <= width_target) {
            best = p;
            best_j = j;
            found = true;
            break;
        }
        fail = j;
        const double ratio = p.value.width() / width_target;
        const int step = std::max(1, static_cast<int>(std::ceil(2.0 * std::log2(ratio))));
        j = std::max(kMinExponent, j - step);
        if (j == fail) break;
    }
    // Binary search for the largest admissible exponent in (best_j, fail).
    while (found && fail - best_j > 1) {
        const int mid = best_j + (fail - best_j) / 2;
        Probe p;
        if (!probe(mid, p)) {
            found = false;
            break;
        }
        if (p.value.width() <= width_target) {
            best = p;
            best_j = mid;
        } else {
            fail = mid;
        }
    }
    result.evaluations = spent;
    if (found) {
        result.value = best.value;
        result.leaves = best.tally.leaves;
        result.leaf_threshold = std::ldexp(1.0, best_j);
        return result;
    }
    if (!std::isfinite(achieved)) {
        // No tree was completed; the crudest enclosure is still available.
        achieved = (f(unchecked_interval(u0, u1)) * (Interval::point(u1) - Interval::point(u0))).width();
    }
    std::ostringstream msg;
    msg << "quadrature budget exhausted: achieved width " << achieved << " > target " << width_target;
    throw QuadratureError(msg.str(), achieved);
}

} // namespace brun::quadrature
