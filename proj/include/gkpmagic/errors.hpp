#pragma once

#include <stdexcept>
#include <string>

namespace gkpmagic {

// Base for every error raised by the library. The CLI maps subclasses of
// ResourceError to exit code 3 and everything else to exit code 2.
class MagicError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public MagicError {
public:
    using MagicError::MagicError;
};

class ResourceError : public MagicError {
public:
    using MagicError::MagicError;
};

class NotPowerOfTwo : public InputError {
public:
    using InputError::InputError;
};

class NotNormalized : public InputError {
public:
    using InputError::InputError;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class QubitOutOfRange : public InputError {
public:
    using InputError::InputError;
};

class NonDiagonalGate : public InputError {
public:
    using InputError::InputError;
};

class ZeroInputMagic : public InputError {
public:
    using InputError::InputError;
};

class InvalidProbability : public InputError {
public:
    using InputError::InputError;
};

class DegenerateAngle : public InputError {
public:
    using InputError::InputError;
};

class ParseError : public InputError {
public:
    using InputError::InputError;
};

class Unsupported : public InputError {
public:
    using InputError::InputError;
};

class DimensionOverflow : public ResourceError {
public:
    using ResourceError::ResourceError;
};

} // namespace gkpmagic
