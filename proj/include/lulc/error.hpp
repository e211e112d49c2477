#pragma once

#include <stdexcept>
#include <string>

namespace lulc {

/// Bad input, configuration or contract violation detected before any work runs.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Failure while processing otherwise valid input (I/O, divergence, ...).
class ProcessingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lulc
