#pragma once

#include <stdexcept>
#include <string>

namespace adlmon {

/// Input failed a structural or semantic validity check.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A request exceeded an enumeration or arithmetic capacity limit.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be read, written, or parsed.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace adlmon
