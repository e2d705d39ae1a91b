#pragma once

#include <stdexcept>
#include <string>

namespace tamp {

/// Raised when a caller violates an operation's precondition.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a geometric construction has no solution (e.g. a cone with no
/// free interior).
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tamp
