// Verified quadrature by adaptive interval bisection.
//
// Every node of the bisection tree carries the enclosure f([a,b]) * (b - a).
// A node is split while that enclosure is wider than a leaf threshold w;
// the value of an inner node is its own enclosure intersected with the sum
// of its children. Lowering w refines the tree and so narrows the root.
// The threshold used is the largest power of two, not above the target,
// whose root is narrower than the target. A smaller target therefore only
// ever refines the tree, and its result is contained in the result for a
// larger target. The tree shape does not depend on the worker count, so
// neither do the endpoints.
#pragma once

#include "brun/interval.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace brun::quadrature {

using Integrand = std::function<Interval(const Interval&)>;

struct Options {
    /// Total integrand evaluations allowed across all passes.
    std::uint64_t max_evaluations = std::uint64_t{1} << 31;
    unsigned max_depth = 60;
    unsigned threads = 1;
};

struct Result {
    Interval value;
    std::uint64_t evaluations = 0;
    std::uint64_t leaves = 0;
    double leaf_threshold = 0.0;
    /// Trees built while searching for the threshold.
    unsigned passes = 0;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved)
    {
    }
    double achieved_width() const { return achieved_; }

private:
    double achieved_;
};

/// Enclosure of the integral of f over [u0, u1] with width <= width_target.
/// Throws std::invalid_argument unless u0 < u1 and width_target > 0, and
/// QuadratureError when the budget runs out first.
Result integrate(double u0, double u1, const Integrand& f, double width_target, const Options& opts = {});

} // namespace brun::quadrature
