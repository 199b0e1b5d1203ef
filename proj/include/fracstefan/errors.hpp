#pragma once

#include <stdexcept>
#include <string>

namespace fracstefan {

/// A series or iterative scheme failed to meet its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A bracketing scan found no sign change up to its limit.
class NoRootError : public std::runtime_error {
public:
    explicit NoRootError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fracstefan
