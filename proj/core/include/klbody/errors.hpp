#pragma once

#include <stdexcept>
#include <string>

namespace klbody {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The two in-plane columns of a configuration are (numerically) collinear.
class DegenerateConfiguration : public Error {
public:
    using Error::Error;
};

/// A deformation state violates its positivity constraints
/// (xi > 0, zeta > 0, rho > 0, xi*zeta - alpha^2 > 0, or lambda, mu > 0).
class PositivityViolation : public Error {
public:
    using Error::Error;
};

/// A kinetic-energy denominator fell below tolerance. Cannot happen on a
/// valid deformation state; kept as a guard for corrupted input.
class SingularMassMatrix : public Error {
public:
    using Error::Error;
};

/// lambda == mu: coordinate singularity of the two-polar chart.
class DegenerateDeformation : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace klbody
