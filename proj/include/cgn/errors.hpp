#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "rational.hpp"

namespace cgn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (log of a non-positive number,
/// a point outside the declared open set, a segment leaving U, ...).
struct DomainError : Error {
    using Error::Error;
};

struct NotNearStandard : DomainError {
    using DomainError::DomainError;
};

/// Some branch is zero or has no known leading term.
struct NotInvertible : DomainError {
    using DomainError::DomainError;
};

/// A sign or order decision is hidden behind a tail marker.
struct UnknownSign : Error {
    UnknownSign(const std::string& what, Order blocking)
        : Error(what + " (hidden behind O(eps^" + to_string(blocking) + "))"), order(blocking)
    {
    }
    Order order;
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t pos)
        : Error("parse error at " + std::to_string(pos) + ": " + what), position(pos)
    {
    }
    std::size_t position;
};

struct NumericError : Error {
    using Error::Error;
};

} // namespace cgn
