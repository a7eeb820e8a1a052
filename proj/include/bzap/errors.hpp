#pragma once

#include <stdexcept>
#include <string>

namespace bzap {

/// Invalid argument value (bad p/q, K > N, eta outside (0,1), ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operand sizes disagree.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A matrix failed its row- or column-rank requirement.
class RankError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bzap
