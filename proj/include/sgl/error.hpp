#ifndef SGL_ERROR_HPP
#define SGL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live over different state spaces, or a name is unknown to a space.
class SpaceMismatch : public Error {
public:
    using Error::Error;
};

/// Lexical or syntax error in game/formula text, or malformed input file.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_(line), column_(column) {}
    explicit ParseError(const std::string& what) : Error(what) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

/// A game lies outside the fragment an operation supports (e.g. duals in a program).
class UnsupportedFragment : public Error {
public:
    using Error::Error;
};

/// A membership question could not be decided because an iteration was truncated.
class Undecided : public Error {
public:
    using Error::Error;
};

/// Enumeration or subset-enumeration bound exceeded.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace sgl

#endif
