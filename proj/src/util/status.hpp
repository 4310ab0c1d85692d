#pragma once

#include <stdexcept>
#include <string>

namespace chainsent {

enum class ErrorKind { Config, Io, Input, Internal };

// Single exception type used across the library; the kind maps 1:1 onto the
// C API status codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail_config(const std::string &msg);
[[noreturn]] void fail_io(const std::string &msg);
[[noreturn]] void fail_input(const std::string &msg);
[[noreturn]] void fail_internal(const std::string &msg);

} // namespace chainsent
