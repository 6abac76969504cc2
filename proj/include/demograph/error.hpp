#pragma once

#include <stdexcept>
#include <string>

namespace demograph {

/// Bad parameters, malformed configuration, infeasible requests. CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (edge lists, label files). CLI exit code 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A violated internal invariant; always a bug. CLI exit code 4.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void internal_check(bool ok, const std::string &what) {
    if (!ok)
        throw InternalError(what);
}

} // namespace demograph
