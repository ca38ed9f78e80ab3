#pragma once

#include <stdexcept>
#include <string>

namespace tc {

enum class ErrorKind {
    DimensionMismatch,
    NotASublattice,
    NotAFacet,
    AmbientMismatch,
    SlotOutOfRange,
    Unbounded,
    DegreeMismatch,
    TypeMismatch,
    NotBalanced,
    NotTransversal,
    NonGenericVector,
    CellNotInjective,
    Parse,
    Usage,
    Internal
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(k)) + ": " + msg), kind_(k), msg_(msg) {}
    ErrorKind kind() const { return kind_; }
    const std::string& message() const { return msg_; }

private:
    ErrorKind kind_;
    std::string msg_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace tc
