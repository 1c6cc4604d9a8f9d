#pragma once

#include <stdexcept>
#include <string>

namespace slag {

/// Bad parameters, out-of-range phases, inadmissible rotation angles.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A check was asked about an input that does not satisfy its preconditions.
class InapplicableInput : public InvalidInput {
public:
    explicit InapplicableInput(const std::string& what) : InvalidInput(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slag
