#pragma once

#include <stdexcept>
#include <string>

namespace ob {

// Error taxonomy shared by the library and the CLI exit-code contract:
// validation -> 1, io -> 2, numerical -> 3.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ob
