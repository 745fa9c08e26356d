#pragma once

#include <stdexcept>
#include <string>

namespace dualweb {

// Error taxonomy mirrored one-to-one by the C API status codes.
class Error : public std::runtime_error {
public:
    enum class Kind { Io, Parse, Invalid, Domain, Internal };

    Error(Kind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

[[noreturn]] inline void throw_io(std::string msg) {
    throw Error(Error::Kind::Io, std::move(msg));
}
[[noreturn]] inline void throw_parse(std::string msg) {
    throw Error(Error::Kind::Parse, std::move(msg));
}
[[noreturn]] inline void throw_invalid(std::string msg) {
    throw Error(Error::Kind::Invalid, std::move(msg));
}
[[noreturn]] inline void throw_domain(std::string msg) {
    throw Error(Error::Kind::Domain, std::move(msg));
}

} // namespace dualweb
