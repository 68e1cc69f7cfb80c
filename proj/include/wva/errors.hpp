#pragma once

#include <stdexcept>
#include <string>

namespace wva {

/// Base class for all library errors. `category()` is a stable,
/// machine-readable tag; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    const char* category() const noexcept { return category_; }

protected:
    Error(const char* category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

private:
    const char* category_;
};

/// A precondition on an input value was violated.
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what)
        : Error("invalid argument", what) {}
};

/// Pre- and post-selected states are (numerically) orthogonal, so the
/// weak value diverges and post-selected quantities are undefined.
class OrthogonalPostselection : public Error {
public:
    explicit OrthogonalPostselection(const std::string& what)
        : Error("orthogonal postselection", what) {}
};

/// A search interval does not contain the feature being located.
class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error("range error", what) {}
};

/// A grid is too coarse (or too short) to resolve the requested quantity.
class ResolutionError : public Error {
public:
    explicit ResolutionError(const std::string& what)
        : Error("resolution error", what) {}
};

}  // namespace wva
