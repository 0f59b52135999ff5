#pragma once

#include <stdexcept>
#include <string>

namespace minmodes {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation requested at (or within the exclusion radius of) a singularity.
struct SingularPointError : Error {
    using Error::Error;
};

/// A point lies outside the domain it is required to be in.
struct DomainViolationError : Error {
    using Error::Error;
};

/// The function vanishes on a branch-continuation path.
struct ZeroCrossingError : Error {
    using Error::Error;
};

/// No admissible path between two points of a domain.
struct PathBlockedError : Error {
    using Error::Error;
};

/// A map required to satisfy the bending-neutrality equation does not.
struct NotNeutralError : Error {
    using Error::Error;
};

/// An assembled Weierstrass function fails the Cauchy-Riemann check.
struct NotHolomorphicError : Error {
    using Error::Error;
};

struct InvalidParamsError : Error {
    using Error::Error;
};

struct DegenerateMoebiusError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace minmodes
