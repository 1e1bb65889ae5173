#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frobforge {

// Every engine failure is one of these. `module()` names the component that
// raised it so reports can attribute the failure.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& what)
        : std::runtime_error(what), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }
    virtual const char* kind() const noexcept { return "error"; }

private:
    std::string module_;
};

// A computation hit a configured budget (S-pair steps, enumeration size, exponent width).
class ResourceError : public Error {
public:
    ResourceError(std::string module, std::string budget, const std::string& what)
        : Error(std::move(module), what), budget_(std::move(budget)) {}

    const std::string& budget() const noexcept { return budget_; }
    const char* kind() const noexcept override { return "resource"; }

private:
    std::string budget_;
};

// The caller violated an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "precondition"; }
};

// Operands live in different ambient rings or algebras.
class MismatchError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "mismatch"; }
};

// The oracle was asked to enumerate an algebra that is not finite over F_p.
class InfiniteDimensionalError : public Error {
public:
    InfiniteDimensionalError(std::string module, std::string variable, const std::string& what)
        : Error(std::move(module), what), variable_(std::move(variable)) {}

    const std::string& variable() const noexcept { return variable_; }
    const char* kind() const noexcept override { return "infinite-dimensional"; }

private:
    std::string variable_;
};

// Session text could not be parsed or resolved.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("workbench", format(line, column, what)), line_(line), column_(column), message_(what) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }
    const char* kind() const noexcept override { return "syntax"; }

private:
    static std::string format(std::size_t line, std::size_t column, const std::string& what)
    {
        return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

} // namespace frobforge
