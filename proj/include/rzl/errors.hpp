#pragma once

#include <stdexcept>
#include <string>

namespace rzl {

/// A user-supplied parameter is outside its documented domain.
class invalid_parameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A documented runtime precondition refused to hold (e.g. the zero-free
/// hypothesis gate); maps to CLI exit code 2.
class precondition_violation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured resource ceiling (enumeration cap, sieve span, cost guard)
/// would be exceeded.
class cap_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine could not reach the requested accuracy.
class accuracy_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rzl
