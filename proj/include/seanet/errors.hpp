#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seanet {

/// Base of all domain errors. `name()` is the stable identifier the CLI
/// prints and maps to exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class InvalidSpec : public Error {
public:
    explicit InvalidSpec(const std::string& message) : Error("InvalidSpec", message) {}
};

class NoSuchSwitch : public Error {
public:
    explicit NoSuchSwitch(const std::string& id) : Error("NoSuchSwitch", id) {}
};

class NoSuchHost : public Error {
public:
    explicit NoSuchHost(const std::string& id) : Error("NoSuchHost", id) {}
};

class NoSuchPort : public Error {
public:
    explicit NoSuchPort(const std::string& detail) : Error("NoSuchPort", detail) {}
};

class MissingToPort : public Error {
public:
    MissingToPort() : Error("MissingToPort", "action_type=output requires to_port") {}
};

class NoPath : public Error {
public:
    explicit NoPath(const std::string& detail) : Error("NoPath", detail) {}
};

class DisconnectedTopology : public Error {
public:
    explicit DisconnectedTopology(const std::string& detail)
        : Error("DisconnectedTopology", detail) {}
};

class UnknownPrefix : public Error {
public:
    explicit UnknownPrefix(const std::string& prefix) : Error("UnknownPrefix", prefix) {}
};

/// Malformed N-Triples input; `line` is 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error("ParseError", "line " + std::to_string(line) + ": " + reason), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Malformed query text; `position` is a 0-based byte offset.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& expected)
        : Error("SyntaxError",
                "at offset " + std::to_string(position) + ": expected " + expected),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

} // namespace seanet
