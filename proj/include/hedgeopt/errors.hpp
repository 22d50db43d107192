#pragma once

#include <stdexcept>
#include <string>

namespace hedgeopt {

/// Bad argument: non-finite entries, dimension mismatch, invalid model parameters.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Matrix could not be inverted; carries the offending pivot magnitude.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(const std::string& what, double pivot)
        : std::runtime_error(what), pivot_(pivot) {}
    [[nodiscard]] double pivot() const noexcept { return pivot_; }

private:
    double pivot_;
};

class NotPsdError : public std::domain_error {
public:
    NotPsdError(const std::string& what, double eigenvalue)
        : std::domain_error(what), eigenvalue_(eigenvalue) {}
    [[nodiscard]] double eigenvalue() const noexcept { return eigenvalue_; }

private:
    double eigenvalue_;
};

/// Greeks requested at or after maturity.
class MaturityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The lower-bound integral vanished, so the beta ratio is undefined.
class DegenerateBoundError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace hedgeopt
