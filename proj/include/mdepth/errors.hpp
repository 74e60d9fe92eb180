#pragma once

#include <stdexcept>
#include <string>

namespace mdepth {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments: bad labels, dimension mismatches, malformed documents.
class InputError : public Error {
public:
    using Error::Error;
};

/// A size guard refused the computation; the message names the bound that was hit.
class GuardError : public Error {
public:
    using Error::Error;
};

} // namespace mdepth
