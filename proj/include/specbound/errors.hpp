#pragma once

#include <stdexcept>
#include <string>

namespace specbound {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A quadratic for one of the branch constants has no real root at this
/// trial energy; the root finder treats it as outside the admissible range.
class NegativeDiscriminant : public Error {
public:
    using Error::Error;
};

/// Jacobi-branch routine called with c3 == 0, or the reverse.
class BranchMismatch : public Error {
public:
    using Error::Error;
};

class WindowDegenerate : public Error {
public:
    using Error::Error;
};

/// r2 or r1 + r3 exceeds the hard limit at a solved level.
class ConsistencyViolation : public Error {
public:
    using Error::Error;
};

class DegreeOverflow : public Error {
public:
    using Error::Error;
};

class InvalidParameters : public Error {
public:
    using Error::Error;
};

class UnsupportedAngularMomentum : public Error {
public:
    using Error::Error;
};

class OutOfDomain : public Error {
public:
    using Error::Error;
};

class GridTooCoarse : public Error {
public:
    using Error::Error;
};

class TooFewSamples : public Error {
public:
    using Error::Error;
};

}  // namespace specbound
