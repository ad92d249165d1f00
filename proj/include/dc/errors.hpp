#pragma once

#include <stdexcept>
#include <string>

namespace dc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text or files (CLI exit 2).
struct ParseError : Error {
    using Error::Error;
};

// Presentation or family fails a structural check (CLI exit 1).
struct ValidationError : Error {
    using Error::Error;
};

// Two independent computations disagree (CLI exit 3).
struct InconsistencyError : Error {
    using Error::Error;
};

}  // namespace dc
