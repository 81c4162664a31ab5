#pragma once

#include <stdexcept>
#include <string>

namespace gfc {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

class CollidingBranchPoints : public Error {
public:
    using Error::Error;
};

class BasePointOnBranchPoint : public Error {
public:
    using Error::Error;
};

/// A single continuation step turned through a quarter turn or more.
class StepTooCoarse : public Error {
public:
    using Error::Error;
};

class ClearanceUnachievable : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class NotFullRank : public Error {
public:
    using Error::Error;
};

class ReconstructionFailed : public Error {
public:
    using Error::Error;
};

class InvalidArity : public Error {
public:
    using Error::Error;
};

class DegenerateLambda : public Error {
public:
    using Error::Error;
};

}  // namespace gfc
