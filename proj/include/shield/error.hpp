#pragma once

#include <stdexcept>
#include <string>

namespace shield {

/// Bad argument to a numerical routine (orders, radii, lengths).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Evaluation point too close to an integration region or kernel source.
class SingularEvaluation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Closed form evaluated outside the region where it holds.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NoRootFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration rejected during parsing or validation. `field` names the
/// offending JSON path, e.g. "scenario.T".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace shield
