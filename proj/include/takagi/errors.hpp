#pragma once

#include <stdexcept>
#include <string>

namespace takagi {

/// Input outside an operation's domain (bad range, malformed literal, ...).
/// The CLI maps this family to exit code 2.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured cap (enumeration size, bracket count, period search) would be
/// exceeded. The message names the bound. CLI exit code 3.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// An argument violates a structural precondition (e.g. a word that is not
/// balanced where a balanced one is required).
struct StructureError : std::runtime_error {
    explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace takagi
