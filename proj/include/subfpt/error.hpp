#pragma once

#include <stdexcept>
#include <string>

namespace subfpt {

/// Bad input: parameters outside their admissible range, malformed configs.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the analytic domain of a transform or special function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Iterative or quadrature scheme failed to reach its target.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}
}  // namespace detail

}  // namespace subfpt
