#pragma once

#include <stdexcept>
#include <string>

namespace vofham {

/// An operation would leave the closed term basis (sin*sin products,
/// first spatial derivative of a sin-carrying term, ...).
class UnsupportedBasisError : public std::domain_error {
public:
    explicit UnsupportedBasisError(const std::string& what_arg)
        : std::domain_error(what_arg) {}
};

/// Structurally incompatible operands, e.g. expressions built over
/// different spatial lengths L.
class StructuralError : public std::invalid_argument {
public:
    explicit StructuralError(const std::string& what_arg)
        : std::invalid_argument(what_arg) {}
};

}  // namespace vofham
