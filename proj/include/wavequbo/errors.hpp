#pragma once

#include <stdexcept>
#include <string>

namespace wavequbo {

/// Raised when an input violates an operation's contract (bad sizes, parity,
/// out-of-range parameters). The CLI maps this to exit code 2.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine fails to deliver (eigensolver
/// non-convergence, optimizer finding no admissible candidate). Exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw PreconditionError(what);
}

}  // namespace wavequbo
