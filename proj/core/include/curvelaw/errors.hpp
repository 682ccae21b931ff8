#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace curvelaw {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation at a point where the vector field is not defined.
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A numerical certificate could not be established.
class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive integration stalled; carries the last accepted state.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t, std::complex<double> z)
        : std::runtime_error(what), last_time(t), last_state(z) {}

    double last_time;
    std::complex<double> last_state;
};

} // namespace curvelaw
