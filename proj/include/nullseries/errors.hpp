#pragma once
#include <stdexcept>
#include <string>

namespace nullseries {

enum class ErrorKind {
    domain,
    range,
    contract,
    value,
    capability,
    resolution,
    shape,
    precondition,
    triviality,
    config,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + " error: " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace nullseries
