#pragma once

#include <stdexcept>
#include <string>

namespace hyperext {

// Invalid geometric input: points outside the ball, coincident endpoints,
// violated preconditions.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Malformed run configuration or command-line usage.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace hyperext
