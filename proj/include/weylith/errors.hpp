#pragma once

#include <stdexcept>
#include <string>

namespace weylith {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class WindowTooNarrow : public Error {
public:
    using Error::Error;
};

/// R(M_{>=r}) failed to be exact at `degree`: the declared regularity is too small.
class RegularityFailure : public Error {
public:
    RegularityFailure(int degree, const std::string& what) : Error(what), degree_(degree) {}
    int degree() const { return degree_; }

private:
    int degree_;
};

/// Requested ell outside [1, dimW - 1].
class ExcludedCase : public Error {
public:
    using Error::Error;
};

class CorruptedSegment : public Error {
public:
    using Error::Error;
};

class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace weylith
