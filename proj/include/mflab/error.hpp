#pragma once

#include <stdexcept>
#include <string>

namespace mflab {

// Error categories shared by the C++ core and the C API status codes.
enum class ErrorCode : int {
    InvalidArgument = 1,
    Range = 2,
    CapExceeded = 3,
    Io = 4,
    Format = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace mflab
