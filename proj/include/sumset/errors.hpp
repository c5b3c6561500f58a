#pragma once

#include <stdexcept>
#include <string>

namespace sumset {

/// Argument outside an operation's domain (empty set, bad index window, l out of range).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An element or a computed sum does not fit the dense universe bound.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A configured work or instance budget was exhausted.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Hypotheses of a classical bound are not met by the given sets.
class NotApplicableError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A construction that must always succeed on valid input did not.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace sumset
