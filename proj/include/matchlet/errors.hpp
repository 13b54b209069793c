#ifndef MATCHLET_ERRORS_HPP
#define MATCHLET_ERRORS_HPP

#include <stdexcept>

namespace matchlet {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: malformed sequences, missing certificates, bad arguments.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// The data are well formed but the construction does not exist for them
/// (vanishing symbol, inadmissible Meyer data, |h| > 1).
class DesignRejected : public Error {
public:
    using Error::Error;
};

}  // namespace matchlet

#endif  // MATCHLET_ERRORS_HPP
