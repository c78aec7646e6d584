#pragma once

#include <stdexcept>
#include <string>

namespace heatkern {

/// Base of every error raised by the library. `code()` is a short
/// machine-readable tag used by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Malformed input: bad derivative order, bad JSON, violated precondition.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error("input", what) {}
};

/// Argument outside the mathematical domain (t <= 0, lambda >= lambda_1, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// A differential polynomial handed to D^{-1} is not a total derivative.
class NotExactDerivative : public Error {
public:
    explicit NotExactDerivative(const std::string& what)
        : Error("not_exact_derivative", what) {}
};

/// Grid too coarse to represent a product of band-limited factors.
class AliasingError : public Error {
public:
    explicit AliasingError(const std::string& what) : Error("aliasing", what) {}
};

/// A numerical discretisation is too coarse for the requested accuracy.
class ResolutionError : public Error {
public:
    explicit ResolutionError(const std::string& what) : Error("resolution", what) {}
};

/// Time integration blew up.
class IntegrationError : public Error {
public:
    explicit IntegrationError(const std::string& what) : Error("integration", what) {}
};

}  // namespace heatkern
