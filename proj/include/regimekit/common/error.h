#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace regimekit {

// All library failures throw this. `kind` is a stable machine-checkable tag
// (e.g. "MissingColumn", "SeriesTooShort"); the message carries the details.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(std::string kind, const std::string& message) {
    throw Error(std::move(kind), message);
}

}  // namespace regimekit
