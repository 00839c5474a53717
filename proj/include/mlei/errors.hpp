#ifndef MLEI_ERRORS_HPP
#define MLEI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mlei {

// Caller misuse: bad arguments, malformed files, impossible requests.
// Maps to exit code 2 at the CLI and MLEI_ERR_USAGE in the C API.
struct usage_error : std::invalid_argument {
    explicit usage_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Runtime failure: numerical breakdown, I/O trouble, non-finite objective.
// Maps to exit code 1 and MLEI_ERR_RUNTIME.
struct runtime_error : std::runtime_error {
    explicit runtime_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace mlei

#endif
