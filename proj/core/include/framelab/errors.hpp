#pragma once

#include <stdexcept>
#include <string>

namespace framelab {

/// Base class for all framelab errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, unsupported configurations, violated preconditions.
/// The CLI maps these to exit code 2.
struct config_error : error {
    using error::error;
};

/// Numeric failures: degenerate cascades, rank-deficient sections,
/// singular maps. The CLI maps these to exit code 3.
struct numeric_error : error {
    using error::error;
};

} // namespace framelab
