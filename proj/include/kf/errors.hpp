#pragma once

#include <stdexcept>
#include <string>

namespace kf {

/// Base class for all library errors. Thrown on invalid inputs
/// (mismatched fields, out-of-range parameters, division by zero).
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an internal consistency check fails: two independent
/// computation routes disagree, an identity that must hold does not,
/// or a constructor invariant is violated. The CLI maps this to exit
/// code 2, ordinary errors to exit code 1.
class verification_error : public error {
public:
    explicit verification_error(const std::string& what) : error(what) {}
};

} // namespace kf
