#pragma once

#include <stdexcept>
#include <string>

namespace mlomax {

// Domain violations (a point outside a density's support, a parameter out of
// range) are reported with std::domain_error; malformed arguments with
// std::invalid_argument. The types below cover numerical failures.

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalBreakdown : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mlomax
