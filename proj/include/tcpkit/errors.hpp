#pragma once

#include <stdexcept>
#include <string>

namespace tcpkit {

// Domain and I/O failures. Everything user-recoverable throws this; logic
// bugs use assertions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tcpkit
