#pragma once

#include <stdexcept>
#include <string>

namespace sparsepen {

/// Malformed or unusable input data (bad CSV cell, zero-variance column, ...).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The solver produced a non-finite state.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sparsepen
