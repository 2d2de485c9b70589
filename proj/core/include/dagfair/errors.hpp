#pragma once

#include <stdexcept>
#include <string>

namespace dagfair {

/// Invalid configuration; `field` names the offending key when known.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class SchedulingError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace dagfair
