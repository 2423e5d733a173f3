#pragma once

#include <stdexcept>
#include <string>

namespace hkfs {

// Input outside the domain where an operation (or the theorem behind it) applies.
class HypothesisError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A broken internal invariant. Always a bug, never a user error.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw HypothesisError(msg);
}

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw InternalError(msg);
}

}  // namespace hkfs
