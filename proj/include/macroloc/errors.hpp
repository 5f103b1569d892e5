#pragma once

#include <stdexcept>
#include <string>

namespace macroloc {

// Bad caller input: domain violations, malformed configuration.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An iterative procedure (quadrature, minimizer) did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace macroloc
