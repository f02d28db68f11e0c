#pragma once

#include <stdexcept>
#include <string>

namespace qcdet {

struct GridTooNarrowError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyMediumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooFewMoleculesError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RegimeViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroCouplingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qcdet
