#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace vrtile {

// Invalid argument to a library operation. The CLI maps these to exit 2.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& message) : std::invalid_argument(message) {}
};

// Rejected input text (trace CSV, MPD XML, policy/table JSON) or a document
// that violates a model invariant. `code` is a stable machine-readable name,
// `location` a line number ("line 3") or element path ("AdaptationSet[2]").
class ParseError : public std::runtime_error {
public:
    ParseError(std::string code, std::string location, const std::string& message)
        : std::runtime_error(message + " [" + code + " @ " + location + "]"),
          code_(std::move(code)),
          location_(std::move(location)) {}

    const std::string& code() const noexcept { return code_; }
    const std::string& location() const noexcept { return location_; }

private:
    std::string code_;
    std::string location_;
};

// Filesystem failure while reading inputs or writing outputs. Exit 1 in the CLI.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace vrtile
