#pragma once

#include <stdexcept>
#include <string>

namespace xxz {

// Coarse failure categories. The CLI maps these to exit codes
// (config -> 2, non_generic/degenerate -> 3, everything else -> 1).
enum class ErrorKind {
    dimension,
    convergence,
    singularity,
    conditioning,
    size,
    precondition,
    non_generic,
    degenerate,
    fit_failure,
    refine_failure,
    config,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
    if (!condition) throw Error(kind, message);
}

} // namespace xxz
