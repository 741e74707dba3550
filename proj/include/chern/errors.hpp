#pragma once

#include <stdexcept>
#include <string>

namespace chern {

/// Wrong dimensions, malformed input, out-of-range parameters.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A Gram matrix that is supposed to be a metric is not positive definite.
struct MetricError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A mathematical hypothesis required by the computation does not hold
/// (e.g. a positivity certificate came out non-positive).
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace chern
