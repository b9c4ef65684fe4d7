#pragma once

#include <stdexcept>
#include <string>

namespace edgepart {

/// Base class for every failure raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A document could not be decoded. `line` is 1-based, 0 when the
/// position is unknown (e.g. inside a JSON payload).
struct parse_error : error {
    int line = 0;

    explicit parse_error(const std::string& message, int line_number = 0)
        : error(line_number > 0 ? "line " + std::to_string(line_number) + ": " + message
                                : message),
          line(line_number) {}
};

/// Structurally sound input that violates a model, profile or plan invariant.
struct validation_error : error {
    using error::error;
};

/// The requested plan cannot exist (e.g. more partitions than layers) or a
/// search-space guard was exceeded.
struct infeasible_error : validation_error {
    using validation_error::validation_error;
};

} // namespace edgepart
