#pragma once

#include <stdexcept>
#include <string>

namespace qprime {

/// Precondition violated by the caller: bad dimension, index out of range,
/// odd partition count, mismatched widths.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested configuration does not fit the memory budget of a backend.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qprime
